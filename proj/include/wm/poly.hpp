#pragma once

#include "cyclo.hpp"

#include <optional>

namespace wm {

// univariate polynomial in the symbol n over Q(zeta), coeffs[i] = coefficient of n^i
class Polynomial {
public:
    Polynomial() {}
    explicit Polynomial(CycloNumber c) {
        if (!c.is_zero()) coeffs_.push_back(std::move(c));
    }
    explicit Polynomial(std::vector<CycloNumber> cs) : coeffs_(std::move(cs)) { trim(); }

    static Polynomial variable() {
        return Polynomial(std::vector<CycloNumber>{CycloNumber(0), CycloNumber(1)});
    }

    const std::vector<CycloNumber>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }  // -1 for zero

    CycloNumber coeff(int i) const {
        if (i < 0 || i >= static_cast<int>(coeffs_.size())) return CycloNumber(0);
        return coeffs_[i];
    }
    CycloNumber lead() const {
        if (is_zero()) throw std::domain_error("poly: zero has no leading coeff");
        return coeffs_.back();
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        std::vector<CycloNumber> r(std::max(a.coeffs_.size(), b.coeffs_.size()), CycloNumber(0));
        for (size_t i = 0; i < a.coeffs_.size(); ++i) r[i] += a.coeffs_[i];
        for (size_t i = 0; i < b.coeffs_.size(); ++i) r[i] += b.coeffs_[i];
        return Polynomial(std::move(r));
    }
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
        std::vector<CycloNumber> r(std::max(a.coeffs_.size(), b.coeffs_.size()), CycloNumber(0));
        for (size_t i = 0; i < a.coeffs_.size(); ++i) r[i] += a.coeffs_[i];
        for (size_t i = 0; i < b.coeffs_.size(); ++i) r[i] -= b.coeffs_[i];
        return Polynomial(std::move(r));
    }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.is_zero() || b.is_zero()) return Polynomial();
        std::vector<CycloNumber> r(a.coeffs_.size() + b.coeffs_.size() - 1, CycloNumber(0));
        for (size_t i = 0; i < a.coeffs_.size(); ++i)
            for (size_t j = 0; j < b.coeffs_.size(); ++j)
                r[i + j] += a.coeffs_[i] * b.coeffs_[j];
        return Polynomial(std::move(r));
    }
    Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
    Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

    Polynomial scaled(const CycloNumber& s) const {
        if (s.is_zero()) return Polynomial();
        std::vector<CycloNumber> r = coeffs_;
        for (auto& c : r) c *= s;
        return Polynomial(std::move(r));
    }

    // quotient, with remainder left in *this
    Polynomial divmod(const Polynomial& d) {
        if (d.is_zero()) throw std::domain_error("poly: division by zero");
        std::vector<CycloNumber> q;
        if (degree() >= d.degree()) {
            q.assign(degree() - d.degree() + 1, CycloNumber(0));
            CycloNumber leadInv = d.lead().inverse();
            while (!is_zero() && degree() >= d.degree()) {
                CycloNumber f = lead() * leadInv;
                int shift = degree() - d.degree();
                q[shift] = f;
                for (size_t i = 0; i < d.coeffs_.size(); ++i)
                    coeffs_[shift + i] -= f * d.coeffs_[i];
                trim();
            }
        }
        return Polynomial(std::move(q));
    }

    Polynomial mod(const Polynomial& d) const {
        Polynomial r = *this;
        r.divmod(d);
        return r;
    }

    CycloNumber evaluate(const CycloNumber& x) const {
        CycloNumber r(0);
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) r = r * x + *it;
        return r;
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        if (a.coeffs_.size() != b.coeffs_.size()) return false;
        for (size_t i = 0; i < a.coeffs_.size(); ++i)
            if (a.coeffs_[i] != b.coeffs_[i]) return false;
        return true;
    }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

    std::string to_string() const {
        if (is_zero()) return "0";
        std::string s;
        for (int i = degree(); i >= 0; --i) {
            if (coeffs_[i].is_zero()) continue;
            if (!s.empty()) s += " + ";
            s += "(" + coeffs_[i].to_string() + ")";
            if (i >= 1) s += "*n";
            if (i >= 2) s += "^" + std::to_string(i);
        }
        return s;
    }

private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
    }
    std::vector<CycloNumber> coeffs_;
};

inline Polynomial cyclotomic_polynomial(long N) {
    const auto& q = cyclotomic_qpoly(N);
    std::vector<CycloNumber> cs;
    cs.reserve(q.size());
    for (const auto& c : q) cs.emplace_back(CycloNumber(c));
    return Polynomial(std::move(cs));
}

// (n)_t = n(n-1)...(n-t+1)
inline Polynomial falling_factorial(int t) {
    Polynomial r{CycloNumber(1)};
    Polynomial n = Polynomial::variable();
    for (int i = 0; i < t; ++i) r *= (n - Polynomial(CycloNumber(i)));
    return r;
}

inline Polynomial poly_gcd(Polynomial a, Polynomial b) {
    while (!b.is_zero()) {
        Polynomial r = a.mod(b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.is_zero()) a = a.scaled(a.lead().inverse());  // monic for determinism
    return a;
}

// num/den, den monic, gcd removed; zero represented as 0/1
class RationalFunction {
public:
    RationalFunction() : num_(), den_(CycloNumber(1)) {}
    RationalFunction(Polynomial n, Polynomial d) { assign(std::move(n), std::move(d)); }
    explicit RationalFunction(const CycloNumber& c)
        : num_(Polynomial(c)), den_(Polynomial(CycloNumber(1))) {}

    const Polynomial& num() const { return num_; }
    const Polynomial& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
        return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
        return RationalFunction(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
        return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
        if (b.is_zero()) throw std::domain_error("ratfn: division by zero");
        return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
    }
    RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
    RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }

    RationalFunction scaled(const CycloNumber& s) const {
        RationalFunction r;
        r.num_ = num_.scaled(s);
        r.den_ = den_;
        if (r.num_.is_zero()) r.den_ = Polynomial(CycloNumber(1));
        return r;
    }

    bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }

    CycloNumber constant_value() const {
        if (!is_constant()) throw std::domain_error("ratfn: not constant");
        if (num_.is_zero()) return CycloNumber(0);
        return num_.coeff(0) / den_.coeff(0);
    }

    CycloNumber evaluate_at(const CycloNumber& n0) const {
        CycloNumber d = den_.evaluate(n0);
        if (d.is_zero()) throw std::domain_error("ratfn: pole at evaluation point");
        return num_.evaluate(n0) / d;
    }

    friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RationalFunction& a, const RationalFunction& b) {
        return !(a == b);
    }

    std::string to_string() const {
        std::string s = "(" + num_.to_string() + ")";
        if (den_.degree() > 0 || den_.coeff(0) != CycloNumber(1))
            s += " / (" + den_.to_string() + ")";
        return s;
    }

private:
    void assign(Polynomial n, Polynomial d) {
        if (d.is_zero()) throw std::domain_error("ratfn: zero denominator");
        if (n.is_zero()) {
            num_ = Polynomial();
            den_ = Polynomial(CycloNumber(1));
            return;
        }
        Polynomial g = poly_gcd(n, d);
        if (g.degree() > 0) {
            Polynomial nrem = n, drem = d;
            Polynomial nq = nrem.divmod(g);
            Polynomial dq = drem.divmod(g);
            n = std::move(nq);
            d = std::move(dq);
        }
        CycloNumber leadInv = d.lead().inverse();
        num_ = n.scaled(leadInv);
        den_ = d.scaled(leadInv);
    }

    Polynomial num_, den_;
};

// sum over p of coeffs[p] * n^(leadOrder - p), p = 0..K
struct LaurentSeries {
    int leadOrder = 0;
    std::vector<CycloNumber> coeffs;
    int K = 0;
    bool zero = false;

    // coefficient of n^order, for orders within the truncation window
    CycloNumber at_order(int order) const {
        if (zero) return CycloNumber(0);
        int p = leadOrder - order;
        if (p < 0) return CycloNumber(0);
        if (p > K) throw std::out_of_range("laurent: order below truncation");
        return coeffs[p];
    }
};

inline LaurentSeries laurent_expand(const RationalFunction& f, int K) {
    LaurentSeries s;
    s.K = K;
    if (f.is_zero()) {
        s.zero = true;
        s.coeffs.assign(K + 1, CycloNumber(0));
        return s;
    }
    int M = f.num().degree(), D = f.den().degree();
    s.leadOrder = M - D;
    // rewrite in x = 1/n: num = n^M sum a_i x^i, den = n^D sum b_i x^i; divide series
    std::vector<CycloNumber> a(K + 1, CycloNumber(0)), b(K + 1, CycloNumber(0));
    for (int i = 0; i <= K; ++i) {
        a[i] = f.num().coeff(M - i);
        b[i] = f.den().coeff(D - i);
    }
    CycloNumber b0inv = b[0].inverse();
    s.coeffs.assign(K + 1, CycloNumber(0));
    for (int p = 0; p <= K; ++p) {
        CycloNumber acc = a[p];
        for (int j = 1; j <= p; ++j) acc -= b[j] * s.coeffs[p - j];
        s.coeffs[p] = acc * b0inv;
    }
    return s;
}

}  // namespace wm
