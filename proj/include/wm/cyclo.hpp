#pragma once

#include "rational.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <vector>

namespace wm {

namespace detail {

// dense polynomials over Q, coeffs[i] = coefficient of X^i, no trailing zeros
using QPoly = std::vector<Rational>;

inline void qp_trim(QPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline QPoly qp_mul(const QPoly& a, const QPoly& b) {
    if (a.empty() || b.empty()) return {};
    QPoly r(a.size() + b.size() - 1, Rational(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] += a[i] * b[j];
    qp_trim(r);
    return r;
}

// divides a by b in place, returns quotient; requires b nonzero
inline QPoly qp_divmod(QPoly& a, const QPoly& b) {
    qp_trim(a);
    QPoly q;
    if (a.size() < b.size()) return q;
    q.assign(a.size() - b.size() + 1, Rational(0));
    const Rational& lead = b.back();
    while (a.size() >= b.size()) {
        Rational f = a.back() / lead;
        size_t shift = a.size() - b.size();
        q[shift] = f;
        for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
        qp_trim(a);
        if (a.empty()) break;
    }
    qp_trim(q);
    return q;
}

inline QPoly qp_mod(QPoly a, const QPoly& b) {
    qp_divmod(a, b);
    return a;
}

}  // namespace detail

inline long euler_phi(long n) {
    long result = n;
    long m = n;
    for (long p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            while (m % p == 0) m /= p;
            result -= result / p;
        }
    }
    if (m > 1) result -= result / m;
    return result;
}

// N-th cyclotomic polynomial, computed by dividing X^N - 1 by Phi_d for d | N, d < N
inline const detail::QPoly& cyclotomic_qpoly(long N) {
    static std::map<long, detail::QPoly> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(N);
    if (it != cache.end()) return it->second;

    std::function<detail::QPoly(long)> compute = [&](long n) -> detail::QPoly {
        auto found = cache.find(n);
        if (found != cache.end()) return found->second;
        detail::QPoly xn1(n + 1, Rational(0));
        xn1[0] = -1;
        xn1[n] = 1;
        for (long d = 1; d < n; ++d) {
            if (n % d == 0) {
                detail::QPoly phid = compute(d);
                detail::QPoly q = detail::qp_divmod(xn1, phid);
                xn1 = std::move(q);
            }
        }
        cache[n] = xn1;
        return xn1;
    };
    compute(N);
    return cache[N];
}

// element of Q(zeta_N), coordinates in 1, z, ..., z^(phi(N)-1), reduced mod Phi_N
class CycloNumber {
public:
    CycloNumber() : N_(1), c_(1, Rational(0)) {}
    explicit CycloNumber(const Rational& q) : N_(1), c_(1, q) {}
    CycloNumber(long long v) : N_(1), c_(1, Rational(v)) {}

    static CycloNumber zeta(long N) {
        detail::QPoly x = {Rational(0), Rational(1)};
        return from_qpoly(N, std::move(x));
    }

    static CycloNumber from_qpoly(long N, detail::QPoly p) {
        p = detail::qp_mod(std::move(p), cyclotomic_qpoly(N));
        CycloNumber r;
        r.N_ = N;
        r.c_ = std::move(p);
        r.c_.resize(euler_phi(N), Rational(0));
        return r;
    }

    long conductor() const { return N_; }
    const std::vector<Rational>& coeffs() const { return c_; }

    bool is_zero() const {
        for (const auto& x : c_)
            if (x != 0) return false;
        return true;
    }

    bool is_rational() const {
        for (size_t i = 1; i < c_.size(); ++i)
            if (c_[i] != 0) return false;
        return true;
    }

    // valid only when is_rational()
    Rational rational_part() const {
        if (!is_rational()) throw std::domain_error("cyclo: not rational");
        return c_[0];
    }

    CycloNumber lifted_to(long M) const {
        if (M == N_) return *this;
        if (M % N_ != 0) throw std::invalid_argument("cyclo: bad lift target");
        long s = M / N_;
        detail::QPoly p;
        for (size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            size_t deg = i * s;
            if (p.size() <= deg) p.resize(deg + 1, Rational(0));
            p[deg] += c_[i];
        }
        return from_qpoly(M, std::move(p));
    }

    friend CycloNumber operator+(const CycloNumber& a, const CycloNumber& b) {
        long M = std::lcm(a.N_, b.N_);
        CycloNumber x = a.lifted_to(M), y = b.lifted_to(M);
        for (size_t i = 0; i < x.c_.size(); ++i) x.c_[i] += y.c_[i];
        return x;
    }
    friend CycloNumber operator-(const CycloNumber& a, const CycloNumber& b) {
        long M = std::lcm(a.N_, b.N_);
        CycloNumber x = a.lifted_to(M), y = b.lifted_to(M);
        for (size_t i = 0; i < x.c_.size(); ++i) x.c_[i] -= y.c_[i];
        return x;
    }
    CycloNumber operator-() const {
        CycloNumber x = *this;
        for (auto& v : x.c_) v = -v;
        return x;
    }
    friend CycloNumber operator*(const CycloNumber& a, const CycloNumber& b) {
        long M = std::lcm(a.N_, b.N_);
        CycloNumber x = a.lifted_to(M), y = b.lifted_to(M);
        detail::QPoly p = detail::qp_mul(x.c_trimmed(), y.c_trimmed());
        return from_qpoly(M, std::move(p));
    }
    friend CycloNumber operator/(const CycloNumber& a, const CycloNumber& b) {
        return a * b.inverse();
    }

    CycloNumber& operator+=(const CycloNumber& o) { return *this = *this + o; }
    CycloNumber& operator-=(const CycloNumber& o) { return *this = *this - o; }
    CycloNumber& operator*=(const CycloNumber& o) { return *this = *this * o; }
    CycloNumber& operator/=(const CycloNumber& o) { return *this = *this / o; }

    // extended Euclid against Phi_N in Q[X]
    CycloNumber inverse() const {
        if (is_zero()) throw std::domain_error("cyclo: division by zero");
        if (is_rational()) {
            CycloNumber r;
            r.N_ = N_;
            r.c_.assign(c_.size(), Rational(0));
            r.c_[0] = Rational(1) / c_[0];
            return r;
        }
        detail::QPoly r0 = cyclotomic_qpoly(N_), r1 = c_trimmed();
        detail::QPoly s0 = {}, s1 = {Rational(1)};  // s tracks the coefficient of this
        while (true) {
            detail::QPoly rem = r0;
            detail::QPoly q = detail::qp_divmod(rem, r1);
            if (rem.empty()) break;  // r1 divides r0; r1 is the gcd
            // s_next = s0 - q*s1
            detail::QPoly qs = detail::qp_mul(q, s1);
            detail::QPoly s2 = s0;
            s2.resize(std::max(s2.size(), qs.size()), Rational(0));
            for (size_t i = 0; i < qs.size(); ++i) s2[i] -= qs[i];
            detail::qp_trim(s2);
            r0 = std::move(r1);
            r1 = std::move(rem);
            s0 = std::move(s1);
            s1 = std::move(s2);
        }
        if (r1.size() != 1)
            throw std::logic_error("cyclo: cyclotomic polynomial not coprime to element");
        Rational g = r1[0];
        for (auto& v : s1) v /= g;
        return from_qpoly(N_, std::move(s1));
    }

    // Galois action zeta -> zeta^k, requires gcd(k, N) = 1
    CycloNumber galois(long k) const {
        k %= N_;
        if (k < 0) k += N_;
        detail::QPoly p;
        for (size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            size_t deg = (i * static_cast<size_t>(k)) % static_cast<size_t>(N_);
            if (p.size() <= deg) p.resize(deg + 1, Rational(0));
            p[deg] += c_[i];
        }
        return from_qpoly(N_, std::move(p));
    }

    CycloNumber conj() const {
        if (N_ <= 2) return *this;
        return galois(N_ - 1);
    }

    CycloNumber pow(long k) const {
        if (k < 0) return inverse().pow(-k);
        CycloNumber r(1), base = *this;
        while (k) {
            if (k & 1) r *= base;
            base *= base;
            k >>= 1;
        }
        return r;
    }

    friend bool operator==(const CycloNumber& a, const CycloNumber& b) {
        long M = std::lcm(a.N_, b.N_);
        return a.lifted_to(M).c_ == b.lifted_to(M).c_;
    }
    friend bool operator!=(const CycloNumber& a, const CycloNumber& b) { return !(a == b); }

    std::complex<double> to_float() const {
        std::complex<double> r(0.0, 0.0);
        const double twopi = 6.283185307179586476925287;
        for (size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            double ang = twopi * static_cast<double>(i) / static_cast<double>(N_);
            r += rat_to_double(c_[i]) * std::complex<double>(std::cos(ang), std::sin(ang));
        }
        return r;
    }

    std::string to_string() const {
        if (is_zero()) return "0";
        std::string s;
        for (size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            if (!s.empty()) s += " + ";
            s += rat_to_string(c_[i]);
            if (i > 0) s += "*z" + std::to_string(N_) + "^" + std::to_string(i);
        }
        return s;
    }

private:
    detail::QPoly c_trimmed() const {
        detail::QPoly p = c_;
        detail::qp_trim(p);
        return p;
    }

    long N_;
    std::vector<Rational> c_;
};

inline CycloNumber cyclo_rat(const Rational& q) { return CycloNumber(q); }

}  // namespace wm
