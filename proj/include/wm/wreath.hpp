#pragma once

#include "stable.hpp"
#include "word.hpp"

#include <cstdint>

namespace wm {

// named seedable generator; parallel streams are derived as
// SplitMix64(seed ^ (0x9E3779B97F4A7C15 * (streamIndex + 1)))
struct SplitMix64 {
    uint64_t state = 0;
    explicit SplitMix64(uint64_t seed = 0) : state(seed) {}

    static SplitMix64 stream(uint64_t seed, uint64_t streamIndex) {
        return SplitMix64(seed ^ (0x9E3779B97F4A7C15ULL * (streamIndex + 1)));
    }

    uint64_t next() {
        uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, bound)
    uint64_t below(uint64_t bound) { return next() % bound; }

    double uniform01() { return (next() >> 11) * 0x1.0p-53; }
};

// element of G wr S_n: (v, sigma) with sigma as an image array
struct WreathElement {
    std::vector<int> v;
    std::vector<int> sigma;

    int n() const { return static_cast<int>(v.size()); }

    friend bool operator==(const WreathElement& a, const WreathElement& b) {
        return a.v == b.v && a.sigma == b.sigma;
    }
    friend bool operator<(const WreathElement& a, const WreathElement& b) {
        if (a.sigma != b.sigma) return a.sigma < b.sigma;
        return a.v < b.v;
    }
};

inline WreathElement wreath_identity(const GroupTable& G, int n) {
    WreathElement e;
    e.v.assign(n, G.identity());
    e.sigma.resize(n);
    std::iota(e.sigma.begin(), e.sigma.end(), 0);
    return e;
}

// (v1,s1)(v2,s2) = (v1 * (s1.v2), s1 s2) with (s.v)(i) = v(s^-1(i))
inline WreathElement wreath_mul(const GroupTable& G, const WreathElement& a,
                                const WreathElement& b) {
    if (a.n() != b.n()) throw std::invalid_argument("wreath: size mismatch");
    int n = a.n();
    WreathElement r;
    r.v.resize(n);
    r.sigma.resize(n);
    std::vector<int> ainv(n);
    for (int i = 0; i < n; ++i) ainv[a.sigma[i]] = i;
    for (int i = 0; i < n; ++i) {
        r.v[i] = G.mul(a.v[i], b.v[ainv[i]]);
        r.sigma[i] = a.sigma[b.sigma[i]];
    }
    return r;
}

inline WreathElement wreath_inv(const GroupTable& G, const WreathElement& a) {
    int n = a.n();
    WreathElement r;
    r.v.resize(n);
    r.sigma.resize(n);
    for (int i = 0; i < n; ++i) {
        r.sigma[a.sigma[i]] = i;
        r.v[i] = G.inv(a.v[a.sigma[i]]);
    }
    return r;
}

inline WreathElement wreath_pow(const GroupTable& G, WreathElement a, long k) {
    if (k < 0) {
        a = wreath_inv(G, a);
        k = -k;
    }
    WreathElement r = wreath_identity(G, a.n());
    while (k > 0) {
        if (k & 1) r = wreath_mul(G, r, a);
        a = wreath_mul(G, a, a);
        k >>= 1;
    }
    return r;
}

inline WreathElement wreath_random(const GroupTable& G, int n, SplitMix64& rng) {
    WreathElement r;
    r.v.resize(n);
    r.sigma.resize(n);
    for (int i = 0; i < n; ++i) r.v[i] = static_cast<int>(rng.below(G.order()));
    std::iota(r.sigma.begin(), r.sigma.end(), 0);
    for (int i = n - 1; i > 0; --i)
        std::swap(r.sigma[i], r.sigma[rng.below(static_cast<uint64_t>(i) + 1)]);
    return r;
}

// Ind phi (v, sigma) = sum over fixed points i of phi(v(i))
inline CycloNumber eval_Ind_phi(const WreathElement& g, const ClassFunction& phi) {
    CycloNumber s(0);
    for (int i = 0; i < g.n(); ++i)
        if (g.sigma[i] == i) s += phi.at_element(g.v[i]);
    return s;
}

// number of t-cycles of sigma whose accumulated v-product lies in class c
inline long eval_a_tc(const GroupTable& G, const WreathElement& g, int t, int c) {
    if (t < 1) throw std::invalid_argument("eval_a_tc: t >= 1 required");
    int n = g.n();
    std::vector<bool> seen(n, false);
    long count = 0;
    for (int i0 = 0; i0 < n; ++i0) {
        if (seen[i0]) continue;
        std::vector<int> cyc;
        int i = i0;
        do {
            seen[i] = true;
            cyc.push_back(i);
            i = g.sigma[i];
        } while (i != i0);
        if (static_cast<int>(cyc.size()) != t) continue;
        // v(i_t)...v(i_1) with i_{j+1} = sigma(i_j), started at position s
        auto prodFrom = [&](size_t s) {
            int p = G.identity();
            for (size_t j = 0; j < cyc.size(); ++j) p = G.mul(g.v[cyc[(s + j) % cyc.size()]], p);
            return p;
        };
        int cls = G.class_of(prodFrom(0));
        // well-definedness: the class is invariant under the cycle starting point
        for (size_t s = 1; s < cyc.size(); ++s)
            if (G.class_of(prodFrom(s)) != cls)
                throw std::logic_error("eval_a_tc: class depends on the starting point");
        if (cls == c) ++count;
    }
    return count;
}

inline CycloNumber eval_sInd(const GroupTable& G, const WreathElement& g, const MultiPartition& lam,
                             const std::vector<ClassFunction>& chars) {
    CycloNumber r(1);
    std::map<int, WreathElement> powers;
    for (const auto& [phi, sz] : lam.flat()) {
        auto it = powers.find(sz);
        if (it == powers.end()) it = powers.emplace(sz, wreath_pow(G, g, sz)).first;
        r *= eval_Ind_phi(it->second, chars[phi]);
        if (r.is_zero()) break;
    }
    return r;
}

// independent formula: sum over assignments of parts to sigma-cycles whose length divides
// the part, of prod |cycle| * zeta_p((v-product around the cycle)^{|p| / |cycle|})
inline CycloNumber eval_sInd_hom_formula(const GroupTable& G, const WreathElement& g,
                                         const MultiPartition& lam,
                                         const std::vector<ClassFunction>& chars) {
    int n = g.n();
    std::vector<int> cycLen, cycProd;
    std::vector<bool> seen(n, false);
    for (int i0 = 0; i0 < n; ++i0) {
        if (seen[i0]) continue;
        int len = 0, prod = G.identity(), i = i0;
        do {
            seen[i] = true;
            prod = G.mul(g.v[i], prod);
            i = g.sigma[i];
            ++len;
        } while (i != i0);
        cycLen.push_back(len);
        cycProd.push_back(prod);
    }
    // parts are assigned independently, so the sum factors over parts
    CycloNumber r(1);
    for (const auto& [phi, sz] : lam.flat()) {
        CycloNumber partSum(0);
        for (size_t c = 0; c < cycLen.size(); ++c) {
            if (sz % cycLen[c] != 0) continue;
            int pw = G.pow(cycProd[c], sz / cycLen[c]);
            partSum += CycloNumber(cycLen[c]) * chars[phi].at_element(pw);
        }
        r *= partSum;
        if (r.is_zero()) break;
    }
    return r;
}

// evaluate a StableFunction (either basis) on a concrete wreath element
inline CycloNumber eval_stable(const LoadedGroup& G, const WreathElement& g,
                               const StableFunction& f) {
    CycloNumber r(0);
    for (const auto& [lam, coeff] : f.sTerms)
        r += coeff * eval_sInd(G.table, g, lam, G.chars.irreducibles);
    for (const auto& [m, coeff] : f.aTerms) {
        CycloNumber prod(1);
        for (const auto& [tc, e] : m.factors) {
            long cnt = eval_a_tc(G.table, g, tc.first, tc.second);
            for (int i = 0; i < e; ++i) prod *= CycloNumber(cnt);
            if (prod.is_zero()) break;
        }
        r += coeff * prod;
    }
    return r;
}

namespace detail {

inline Rational factorial(int n) {
    Rational r(1);
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

template <typename CB>
inline void for_each_wreath_element(const GroupTable& G, int n, CB&& cb) {
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    WreathElement g;
    g.v.assign(n, G.identity());
    do {
        g.sigma = perm;
        std::fill(g.v.begin(), g.v.end(), 0);
        while (true) {
            cb(g);
            int pos = 0;
            while (pos < n && ++g.v[pos] == G.order()) g.v[pos++] = 0;
            if (pos == n) break;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
}

// distribution of w(g_1..g_r) over all tuples, cached per (group, word, n)
inline std::shared_ptr<const std::vector<std::pair<WreathElement, long long>>> word_distribution(
    const LoadedGroup& G, const Word& w, int n, long long budget) {
    static std::map<std::string, std::shared_ptr<const std::vector<std::pair<WreathElement, long long>>>>
        cache;
    static std::mutex mtx;
    std::string key = G.table.name() + "#" + w.to_string() + "#" + std::to_string(w.rank) + "#" +
                      std::to_string(n);
    {
        std::lock_guard<std::mutex> lock(mtx);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    double sz = std::pow(static_cast<double>(G.table.order()), n) *
                rat_to_double(factorial(n));
    double tuples = std::pow(sz, w.rank);
    if (tuples * std::max<size_t>(w.letters.size(), 1) > static_cast<double>(budget))
        throw std::runtime_error("exact_expectation: enumeration budget exceeded");

    std::vector<WreathElement> elems;
    for_each_wreath_element(G.table, n, [&](const WreathElement& g) { elems.push_back(g); });
    std::vector<WreathElement> inverses(elems.size());
    for (size_t i = 0; i < elems.size(); ++i) inverses[i] = wreath_inv(G.table, elems[i]);

    std::map<WreathElement, long long> counts;
    std::vector<size_t> idx(w.rank, 0);
    while (true) {
        WreathElement prod = wreath_identity(G.table, n);
        for (int l : w.letters)
            prod = wreath_mul(G.table, prod, l > 0 ? elems[idx[l - 1]] : inverses[idx[-l - 1]]);
        counts[prod]++;
        size_t pos = 0;
        while (pos < idx.size() && ++idx[pos] == elems.size()) idx[pos++] = 0;
        if (pos == idx.size()) break;
    }
    auto ptr = std::make_shared<const std::vector<std::pair<WreathElement, long long>>>(
        counts.begin(), counts.end());
    std::lock_guard<std::mutex> lock(mtx);
    return cache.emplace(std::move(key), std::move(ptr)).first->second;
}

}  // namespace detail

// exact average of f(w(g_1..g_r)) over all homomorphism tuples
inline CycloNumber exact_expectation(const Word& w, const StableFunction& f, const LoadedGroup& G,
                                     int n, long long budget = 100000000LL) {
    if (w.empty()) throw std::invalid_argument("exact_expectation: empty word");
    auto dist = detail::word_distribution(G, w, n, budget);
    CycloNumber sum(0);
    long long total = 0;
    for (const auto& [g, count] : *dist) {
        sum += eval_stable(G, g, f) * CycloNumber(count);
        total += count;
    }
    return sum / CycloNumber(total);
}

struct McResult {
    double meanRe = 0, meanIm = 0;
    double stderrRe = 0, stderrIm = 0;
    long long samples = 0;
    uint64_t seed = 0;
};

// sample mean with normal-approximation standard error; deterministic given the seed
inline McResult mc_expectation(const Word& w, const StableFunction& f, const LoadedGroup& G,
                               int n, long long samples, uint64_t seed) {
    if (samples < 100) throw std::invalid_argument("mc_expectation: samples >= 100 required");
    if (w.empty()) throw std::invalid_argument("mc_expectation: empty word");
    McResult res;
    res.samples = samples;
    res.seed = seed;
    double sumRe = 0, sumIm = 0, sumRe2 = 0, sumIm2 = 0;
    double cRe = 0, cIm = 0;  // compensated summation
    SplitMix64 rng = SplitMix64::stream(seed, 0);
    std::vector<WreathElement> gen(w.rank);
    for (long long s = 0; s < samples; ++s) {
        for (int i = 0; i < w.rank; ++i) gen[i] = wreath_random(G.table, n, rng);
        WreathElement prod = wreath_identity(G.table, n);
        for (int l : w.letters)
            prod = wreath_mul(G.table, prod,
                              l > 0 ? gen[l - 1] : wreath_inv(G.table, gen[-l - 1]));
        std::complex<double> val = eval_stable(G, prod, f).to_float();
        double yRe = val.real() - cRe, tRe = sumRe + yRe;
        cRe = (tRe - sumRe) - yRe;
        sumRe = tRe;
        double yIm = val.imag() - cIm, tIm = sumIm + yIm;
        cIm = (tIm - sumIm) - yIm;
        sumIm = tIm;
        sumRe2 += val.real() * val.real();
        sumIm2 += val.imag() * val.imag();
    }
    double N = static_cast<double>(samples);
    res.meanRe = sumRe / N;
    res.meanIm = sumIm / N;
    res.stderrRe = std::sqrt(std::max(0.0, sumRe2 / N - res.meanRe * res.meanRe) / N);
    res.stderrIm = std::sqrt(std::max(0.0, sumIm2 / N - res.meanIm * res.meanIm) / N);
    return res;
}

// exact (1/|G wr S_n|) sum_x f(x) conj(g(x))
inline CycloNumber finite_inner(const StableFunction& f, const StableFunction& h,
                                const LoadedGroup& G, int n, long long budget = 100000000LL) {
    double sz = std::pow(static_cast<double>(G.table.order()), n) *
                rat_to_double(detail::factorial(n));
    if (sz > static_cast<double>(budget))
        throw std::runtime_error("finite_inner: enumeration budget exceeded");
    CycloNumber sum(0);
    long long total = 0;
    detail::for_each_wreath_element(G.table, n, [&](const WreathElement& x) {
        sum += eval_stable(G, x, f) * eval_stable(G, x, h).conj();
        ++total;
    });
    return sum / CycloNumber(total);
}

}  // namespace wm
