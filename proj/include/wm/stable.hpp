#pragma once

#include "group.hpp"

namespace wm {

// finitely supported map from character rows to partitions (weakly decreasing)
struct MultiPartition {
    std::map<int, std::vector<int>> parts;  // char row -> descending positive parts

    static MultiPartition single(int phi, int k) {
        MultiPartition m;
        m.parts[phi] = {k};
        return m;
    }

    bool empty() const { return parts.empty(); }

    int total_size() const {  // ||lambda||
        int s = 0;
        for (const auto& [phi, p] : parts)
            for (int x : p) s += x;
        return s;
    }

    int num_parts() const {  // l(lambda)
        int s = 0;
        for (const auto& [phi, p] : parts) s += static_cast<int>(p.size());
        return s;
    }

    void normalize() {
        for (auto it = parts.begin(); it != parts.end();) {
            std::sort(it->second.begin(), it->second.end(), std::greater<int>());
            if (it->second.empty())
                it = parts.erase(it);
            else
                ++it;
        }
    }

    MultiPartition merged(const MultiPartition& o) const {  // multiset union
        MultiPartition m = *this;
        for (const auto& [phi, p] : o.parts)
            m.parts[phi].insert(m.parts[phi].end(), p.begin(), p.end());
        m.normalize();
        return m;
    }

    MultiPartition scaled(int k) const {  // every part multiplied by k
        MultiPartition m = *this;
        for (auto& [phi, p] : m.parts)
            for (int& x : p) x *= k;
        return m;
    }

    // flattened parts in deterministic order (char row asc, part size desc)
    std::vector<std::pair<int, int>> flat() const {  // (phi, part size)
        std::vector<std::pair<int, int>> v;
        for (const auto& [phi, p] : parts)
            for (int x : p) v.push_back({phi, x});
        return v;
    }

    std::string key() const {
        std::string s;
        for (const auto& [phi, p] : parts) {
            s += std::to_string(phi) + ":";
            for (int x : p) s += std::to_string(x) + ",";
            s += ";";
        }
        return s;
    }

    friend bool operator==(const MultiPartition& a, const MultiPartition& b) {
        return a.parts == b.parts;
    }
    friend bool operator<(const MultiPartition& a, const MultiPartition& b) {
        return a.key() < b.key();
    }
};

// product of a_{t,c} counters with exponents
struct AMonomial {
    std::map<std::pair<int, int>, int> factors;  // (t, class) -> exponent >= 1

    static AMonomial single(int t, int c, int e = 1) {
        AMonomial m;
        if (e > 0) m.factors[{t, c}] = e;
        return m;
    }

    bool empty() const { return factors.empty(); }

    int degree() const {  // deg a_{t,c} = t
        int d = 0;
        for (const auto& [tc, e] : factors) d += tc.first * e;
        return d;
    }

    AMonomial merged(const AMonomial& o) const {
        AMonomial m = *this;
        for (const auto& [tc, e] : o.factors) m.factors[tc] += e;
        return m;
    }

    std::string key() const {
        std::string s;
        for (const auto& [tc, e] : factors)
            s += std::to_string(tc.first) + "." + std::to_string(tc.second) + "^" +
                 std::to_string(e) + ",";
        return s;
    }

    friend bool operator==(const AMonomial& a, const AMonomial& b) {
        return a.factors == b.factors;
    }
    friend bool operator<(const AMonomial& a, const AMonomial& b) { return a.key() < b.key(); }
};

enum class StableBasis { sInd, aMono };

// linear combination of sInd(lambda) monomials or of a-monomials
class StableFunction {
public:
    StableBasis basis = StableBasis::sInd;
    std::map<MultiPartition, CycloNumber> sTerms;
    std::map<AMonomial, CycloNumber> aTerms;

    static StableFunction constant(const CycloNumber& c) {
        StableFunction f;
        f.add_s(MultiPartition{}, c);
        return f;
    }

    static StableFunction sInd_monomial(MultiPartition lam, const CycloNumber& c = CycloNumber(1)) {
        StableFunction f;
        lam.normalize();
        f.add_s(std::move(lam), c);
        return f;
    }

    static StableFunction a_monomial(AMonomial m, const CycloNumber& c = CycloNumber(1)) {
        StableFunction f;
        f.basis = StableBasis::aMono;
        f.add_a(std::move(m), c);
        return f;
    }

    void add_s(MultiPartition lam, const CycloNumber& c) {
        if (c.is_zero()) return;
        auto [it, fresh] = sTerms.try_emplace(std::move(lam), c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) sTerms.erase(it);
        }
    }

    void add_a(AMonomial m, const CycloNumber& c) {
        if (c.is_zero()) return;
        auto [it, fresh] = aTerms.try_emplace(std::move(m), c);
        if (!fresh) {
            it->second += c;
            if (it->second.is_zero()) aTerms.erase(it);
        }
    }

    bool is_zero() const { return sTerms.empty() && aTerms.empty(); }

    int degree() const {
        int d = 0;
        for (const auto& [lam, c] : sTerms) d = std::max(d, lam.total_size());
        for (const auto& [m, c] : aTerms) d = std::max(d, m.degree());
        return d;
    }

    friend StableFunction operator+(const StableFunction& a, const StableFunction& b) {
        if (a.basis != b.basis && !a.is_zero() && !b.is_zero())
            throw std::invalid_argument("stable: basis mismatch in addition");
        StableFunction r = a;
        r.basis = a.is_zero() ? b.basis : a.basis;
        for (const auto& [lam, c] : b.sTerms) r.add_s(lam, c);
        for (const auto& [m, c] : b.aTerms) r.add_a(m, c);
        return r;
    }

    friend StableFunction operator*(const StableFunction& a, const StableFunction& b) {
        if (a.basis != b.basis && !a.is_zero() && !b.is_zero())
            throw std::invalid_argument("stable: basis mismatch in product");
        StableFunction r;
        r.basis = a.is_zero() ? b.basis : a.basis;
        for (const auto& [la, ca] : a.sTerms)
            for (const auto& [lb, cb] : b.sTerms) r.add_s(la.merged(lb), ca * cb);
        for (const auto& [ma, ca] : a.aTerms)
            for (const auto& [mb, cb] : b.aTerms) r.add_a(ma.merged(mb), ca * cb);
        return r;
    }

    StableFunction scaled(const CycloNumber& s) const {
        StableFunction r;
        r.basis = basis;
        for (const auto& [lam, c] : sTerms) r.add_s(lam, c * s);
        for (const auto& [m, c] : aTerms) r.add_a(m, c * s);
        return r;
    }

    friend bool operator==(const StableFunction& a, const StableFunction& b) {
        auto az = a.is_zero(), bz = b.is_zero();
        if (az || bz) return az == bz;
        return a.basis == b.basis && a.sTerms == b.sTerms && a.aTerms == b.aTerms;
    }
};

// every part of every multi-partition multiplied by k (f evaluated at x^k)
inline StableFunction power_twist(const StableFunction& f, int k) {
    if (f.basis != StableBasis::sInd)
        throw std::invalid_argument("power_twist: needs the sInd basis");
    StableFunction r;
    for (const auto& [lam, c] : f.sTerms) r.add_s(lam.scaled(k), c);
    return r;
}

// (Ind phi)^{(k)} = sum over t | k of t * sum_c phi(c^{k/t}) a_{t,c}
inline StableFunction ind_power_to_a(const LoadedGroup& G, int phiIndex, int k) {
    const ClassFunction& phi = G.chars.irreducibles.at(phiIndex);
    StableFunction r;
    r.basis = StableBasis::aMono;
    for (int t = 1; t <= k; ++t) {
        if (k % t != 0) continue;
        for (int c = 0; c < G.table.num_classes(); ++c) {
            CycloNumber coeff = CycloNumber(t) * phi.at_class(G.table.power_class(c, k / t));
            r.add_a(AMonomial::single(t, c), coeff);
        }
    }
    return r;
}

// a_{t,c} as a combination of sInd monomials of degree <= t, by triangular Schur inversion
inline StableFunction a_to_ind_basis(const LoadedGroup& G, int t, int c);

namespace detail {

inline StableFunction a_to_ind_uncached(const LoadedGroup& G, int k, int cls) {
    // k a_{k,c} |G|/|c| = sum_phi conj(phi(c)) [ (Ind phi)^{(k)} - lower a-terms ]
    StableFunction acc;
    for (size_t phi = 0; phi < G.chars.irreducibles.size(); ++phi) {
        CycloNumber w = G.chars.irreducibles[phi].at_class(cls).conj();
        if (w.is_zero()) continue;
        StableFunction inner =
            StableFunction::sInd_monomial(MultiPartition::single(static_cast<int>(phi), k));
        for (int t = 1; t < k; ++t) {
            if (k % t != 0) continue;
            for (int c2 = 0; c2 < G.table.num_classes(); ++c2) {
                CycloNumber coeff = CycloNumber(t) * G.chars.irreducibles[phi].at_class(
                                                        G.table.power_class(c2, k / t));
                inner = inner + a_to_ind_basis(G, t, c2).scaled(-coeff);
            }
        }
        acc = acc + inner.scaled(w);
    }
    CycloNumber scale =
        CycloNumber(Rational(G.table.classes()[cls].size(), static_cast<long long>(k) * G.table.order()));
    return acc.scaled(scale);
}

}  // namespace detail

inline StableFunction a_to_ind_basis(const LoadedGroup& G, int t, int c) {
    static std::map<std::tuple<const LoadedGroup*, int, int>, StableFunction> cache;
    static std::mutex mtx;
    auto key = std::make_tuple(&G, t, c);
    {
        std::lock_guard<std::mutex> lock(mtx);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    StableFunction r = detail::a_to_ind_uncached(G, t, c);
    std::lock_guard<std::mutex> lock(mtx);
    return cache.emplace(key, std::move(r)).first->second;
}

inline StableFunction to_sInd_basis(const LoadedGroup& G, const StableFunction& f) {
    if (f.basis == StableBasis::sInd) return f;
    StableFunction r;
    for (const auto& [m, coeff] : f.aTerms) {
        StableFunction prod = StableFunction::constant(CycloNumber(1));
        for (const auto& [tc, e] : m.factors) {
            StableFunction factor = a_to_ind_basis(G, tc.first, tc.second);
            for (int i = 0; i < e; ++i) prod = prod * factor;
        }
        r = r + prod.scaled(coeff);
    }
    return r;
}

inline StableFunction to_a_basis(const LoadedGroup& G, const StableFunction& f) {
    if (f.basis == StableBasis::aMono) return f;
    StableFunction r;
    r.basis = StableBasis::aMono;
    for (const auto& [lam, coeff] : f.sTerms) {
        StableFunction prod = StableFunction::a_monomial(AMonomial{}, CycloNumber(1));
        for (const auto& [phi, k] : lam.flat()) prod = prod * ind_power_to_a(G, phi, k);
        r = r + prod.scaled(coeff);
    }
    return r;
}

// complex conjugate: conj(Ind phi)^{(k)} = (Ind conj(phi))^{(k)}, conj a_{t,c} = a_{t,c^{-1}}
inline StableFunction conj_stable(const LoadedGroup& G, const StableFunction& f) {
    auto conjChar = [&](int phi) {
        const auto& row = G.chars.irreducibles.at(phi);
        for (size_t j = 0; j < G.chars.irreducibles.size(); ++j) {
            const auto& cand = G.chars.irreducibles[j];
            bool ok = true;
            for (int c = 0; ok && c < G.table.num_classes(); ++c)
                ok = cand.values[c] == row.values[c].conj();
            if (ok) return static_cast<int>(j);
        }
        throw std::logic_error("conj_stable: conjugate character missing from the table");
    };
    StableFunction r;
    r.basis = f.basis;
    for (const auto& [lam, c] : f.sTerms) {
        MultiPartition conjLam;
        for (const auto& [phi, p] : lam.parts) {
            auto& dst = conjLam.parts[conjChar(phi)];
            dst.insert(dst.end(), p.begin(), p.end());
        }
        conjLam.normalize();
        r.add_s(std::move(conjLam), c.conj());
    }
    for (const auto& [m, c] : f.aTerms) {
        AMonomial conjM;
        for (const auto& [tc, e] : m.factors) {
            int invCls = G.table.class_of(G.table.inv(G.table.classes()[tc.second].rep));
            conjM.factors[{tc.first, invCls}] += e;
        }
        r.add_a(std::move(conjM), c.conj());
    }
    return r;
}

// all sInd monomials of degree between 1 and maxDeg, deterministic order
inline std::vector<MultiPartition> sInd_basis_up_to(const LoadedGroup& G, int maxDeg) {
    int numChars = static_cast<int>(G.chars.irreducibles.size());
    std::vector<MultiPartition> out;
    std::function<void(MultiPartition&, int, int, int)> rec = [&](MultiPartition& cur, int phi,
                                                                  int remaining, int maxPart) {
        if (!cur.empty() && cur.total_size() >= 1) out.push_back(cur);
        if (remaining == 0) return;
        for (int p = phi; p < numChars; ++p) {
            int cap = p == phi ? maxPart : remaining;
            for (int sz = std::min(remaining, cap); sz >= 1; --sz) {
                cur.parts[p].push_back(sz);
                rec(cur, p, remaining - sz, sz);
                cur.parts[p].pop_back();
                if (cur.parts[p].empty()) cur.parts.erase(p);
            }
        }
    };
    MultiPartition cur;
    // parts appended in (char asc, size desc) order, so each multiset appears once
    rec(cur, 0, maxDeg, maxDeg);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace wm
