#pragma once

#include "gexpect.hpp"
#include "poly.hpp"
#include "stable.hpp"
#include "whitehead.hpp"

#include <thread>

namespace wm {

struct EngineOptions {
    int vertexCap = 14;
    long long budget = 100000000LL;
    int threads = 1;
};

struct ExpectationResult {
    RationalFunction value;
    long long quotientCount = 0;
    int validFrom = 0;  // the rational function matches the true expectation for n >= validFrom
};

namespace detail {

// quotient lists are expensive; cache them per (word, cycle length vector)
inline std::shared_ptr<const std::vector<QuotientClass>> quotients_for(const Word& w,
                                                                       const std::vector<int>& sizes,
                                                                       int vertexCap) {
    static std::map<std::string, std::shared_ptr<const std::vector<QuotientClass>>> cache;
    static std::mutex mtx;
    std::string key = w.to_string() + "#" + std::to_string(w.rank) + "#";
    for (int s : sizes) key += std::to_string(s) + ",";
    {
        std::lock_guard<std::mutex> lock(mtx);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    auto wg = build_w_graph(w, sizes);
    auto ptr =
        std::make_shared<const std::vector<QuotientClass>>(enumerate_quotients(wg, vertexCap));
    std::lock_guard<std::mutex> lock(mtx);
    return cache.emplace(std::move(key), std::move(ptr)).first->second;
}

}  // namespace detail

// E_w[sInd(lambda)] as an exact rational function of n: sum over fold-closed quotients of
// (expectation of the cycle characters over the image) * (n)_{#V} / prod_b (n)_{#E_b}
inline ExpectationResult expect_sInd(const Word& w, const MultiPartition& lam,
                                     const LoadedGroup& G, const EngineOptions& opts = {}) {
    auto flat = lam.flat();
    std::vector<int> sizes;
    for (const auto& [phi, sz] : flat) sizes.push_back(sz);
    auto quotients = detail::quotients_for(w, sizes, opts.vertexCap);

    size_t nq = quotients->size();
    std::vector<CycloNumber> evs(nq, CycloNumber(0));
    auto evalRange = [&](size_t lo, size_t hi) {
        for (size_t i = lo; i < hi; ++i) {
            const QuotientClass& qc = (*quotients)[i];
            std::vector<PathLoad> loads;
            loads.reserve(flat.size());
            for (size_t j = 0; j < flat.size(); ++j)
                loads.push_back({qc.pathImages[j], G.chars.irreducibles[flat[j].first]});
            evs[i] = graph_expectation(qc.image, loads, opts.budget);
        }
    };
    int nthreads = std::max(1, opts.threads);
    if (nthreads > 1 && nq > 1) {
        std::vector<std::thread> pool;
        size_t chunk = (nq + nthreads - 1) / nthreads;
        for (size_t lo = 0; lo < nq; lo += chunk)
            pool.emplace_back(evalRange, lo, std::min(lo + chunk, nq));
        for (auto& t : pool) t.join();
    } else {
        evalRange(0, nq);
    }

    ExpectationResult res;
    res.quotientCount = static_cast<long long>(nq);
    res.validFrom = lam.total_size() * w.length();
    for (size_t i = 0; i < nq; ++i) {
        if (evs[i].is_zero()) continue;
        const QuotientClass& qc = (*quotients)[i];
        Polynomial num = falling_factorial(qc.image.num_vertices()).scaled(evs[i]);
        Polynomial den{CycloNumber(1)};
        for (int b = 1; b <= qc.image.rank_labels(); ++b)
            den *= falling_factorial(qc.image.edges_with_label(b));
        res.value += RationalFunction(std::move(num), std::move(den));
    }
    return res;
}

// E_w[f] for a general stable function: cyclically reduce, strip the power, twist, extend linearly
inline ExpectationResult expect_stable(const Word& w, const StableFunction& f,
                                       const LoadedGroup& G, const EngineOptions& opts = {}) {
    if (w.empty()) throw std::invalid_argument("expect_stable: empty word");
    Word core = cyclic_reduce(w).first;
    if (core.empty()) throw std::invalid_argument("expect_stable: word is trivial");
    auto [u, k] = power_decompose(core);
    StableFunction twisted = power_twist(to_sInd_basis(G, f), k);

    ExpectationResult res;
    res.validFrom = f.degree() * w.length();
    for (const auto& [lam, coeff] : twisted.sTerms) {
        ExpectationResult part = expect_sInd(u, lam, G, opts);
        res.quotientCount += part.quotientCount;
        res.value += part.value.scaled(coeff);
    }
    return res;
}

// stable inner product with the constant 1: the limit expectation under the single-letter
// word, where every quotient is a multicycle and every falling-factorial ratio is 1
inline CycloNumber stable_inner_one(const MultiPartition& lam, const LoadedGroup& G,
                                    const EngineOptions& opts = {}) {
    Word b = parse_word("a", 1);
    ExpectationResult r = expect_sInd(b, lam, G, opts);
    if (!r.value.is_constant())
        throw std::logic_error("stable_inner_one: expectation is not constant");
    return r.value.constant_value();
}

namespace detail {

// sub-multisets of the parts of lam with binomial multiplicities: cb(tauFlat, restFlat, weight)
template <typename CB>
inline void for_each_subpartition(const MultiPartition& lam, CB&& cb) {
    auto flat = lam.flat();
    // group equal (char, size) parts
    std::vector<std::pair<std::pair<int, int>, int>> groups;  // part -> multiplicity
    for (const auto& p : flat) {
        if (!groups.empty() && groups.back().first == p)
            groups.back().second++;
        else
            groups.push_back({p, 1});
    }
    std::vector<int> pick(groups.size(), 0);
    auto binom = [](int n, int k) {
        Rational r(1);
        for (int i = 0; i < k; ++i) r *= Rational(n - i, i + 1);
        return r;
    };
    std::function<void(size_t, Rational)> rec = [&](size_t i, Rational weight) {
        if (i == groups.size()) {
            MultiPartition tau, rest;
            for (size_t j = 0; j < groups.size(); ++j) {
                auto [phi, sz] = groups[j].first;
                for (int t = 0; t < pick[j]; ++t) tau.parts[phi].push_back(sz);
                for (int t = pick[j]; t < groups[j].second; ++t) rest.parts[phi].push_back(sz);
            }
            tau.normalize();
            rest.normalize();
            cb(tau, rest, weight);
            return;
        }
        for (int c = 0; c <= groups[i].second; ++c) {
            pick[i] = c;
            rec(i + 1, weight * binom(groups[i].second, c));
        }
    };
    rec(0, Rational(1));
}

}  // namespace detail

// <sInd(lambda), Ind(phi)> = sum over sub-multisets tau of lambda, with binomial multiplicity,
// of <sInd(lambda minus tau), 1> * (1/|G|) sum_g prod_{p in tau} zeta_p(g^{|p|}) conj(phi(g))
inline CycloNumber stable_inner_indphi(const MultiPartition& lam, int phiIndex,
                                       const LoadedGroup& G, const EngineOptions& opts = {}) {
    const ClassFunction& phi = G.chars.irreducibles.at(phiIndex);
    CycloNumber total(0);
    detail::for_each_subpartition(lam, [&](const MultiPartition& tau, const MultiPartition& rest,
                                           const Rational& weight) {
        CycloNumber tauVal(0);
        for (int g = 0; g < G.table.order(); ++g) {
            CycloNumber prod = phi.at_element(g).conj();
            for (const auto& [p, sz] : tau.flat())
                prod *= G.chars.irreducibles[p].at_element(G.table.pow(g, sz));
            tauVal += prod;
        }
        tauVal *= CycloNumber(Rational(1, G.table.order()));
        if (tauVal.is_zero()) return;
        total += CycloNumber(weight) * tauVal * stable_inner_one(rest, G, opts);
    });
    return total;
}

// <sInd(lambda), chi_phi> where chi_phi = Ind(phi) - [phi trivial]
inline CycloNumber stable_inner_chi(const MultiPartition& lam, int phiIndex, const LoadedGroup& G,
                                    const EngineOptions& opts = {}) {
    CycloNumber r = stable_inner_indphi(lam, phiIndex, G, opts);
    if (G.chars.irreducibles.at(phiIndex).is_trivial_char()) r -= stable_inner_one(lam, G, opts);
    return r;
}

inline CycloNumber inner_one(const StableFunction& f, const LoadedGroup& G,
                             const EngineOptions& opts = {}) {
    CycloNumber r(0);
    for (const auto& [lam, c] : to_sInd_basis(G, f).sTerms)
        r += c * stable_inner_one(lam, G, opts);
    return r;
}

inline CycloNumber inner_indphi(const StableFunction& f, int phiIndex, const LoadedGroup& G,
                                const EngineOptions& opts = {}) {
    CycloNumber r(0);
    for (const auto& [lam, c] : to_sInd_basis(G, f).sTerms)
        r += c * stable_inner_indphi(lam, phiIndex, G, opts);
    return r;
}

inline CycloNumber inner_chi(const StableFunction& f, int phiIndex, const LoadedGroup& G,
                             const EngineOptions& opts = {}) {
    CycloNumber r(0);
    for (const auto& [lam, c] : to_sInd_basis(G, f).sTerms)
        r += c * stable_inner_chi(lam, phiIndex, G, opts);
    return r;
}

// general stable inner product <f, h> = <f * conj(h), 1>
inline CycloNumber stable_inner(const StableFunction& f, const StableFunction& h,
                                const LoadedGroup& G, const EngineOptions& opts = {}) {
    StableFunction prod = to_sInd_basis(G, f) * conj_stable(G, to_sInd_basis(G, h));
    return inner_one(prod, G, opts);
}

struct PredictedExpansion {
    CycloNumber c0;     // the n^0 coefficient: <f, 1>
    CycloNumber c_sub;  // the n^{1-pi} coefficient: sum_phi C_pi^phi(w) <f, chi_phi>
    int pi = PI_INFINITY;
};

// asymptotic prediction for E_w[f]; powers are handled through the power twist of f
inline PredictedExpansion predicted_expansion(const Word& w, const StableFunction& f,
                                              const LoadedGroup& G,
                                              const EngineOptions& opts = {}) {
    if (w.empty()) throw std::invalid_argument("predicted_expansion: empty word");
    Word core = cyclic_reduce(w).first;
    if (core.empty()) throw std::invalid_argument("predicted_expansion: word is trivial");
    auto [u, k] = power_decompose(core);
    StableFunction g = power_twist(to_sInd_basis(G, f), k);

    PredictedExpansion pe;
    pe.c0 = inner_one(g, G, opts);
    CritReport crit = primitivity_rank(u, opts.vertexCap);
    pe.pi = crit.pi;
    pe.c_sub = CycloNumber(0);
    if (pe.pi != PI_INFINITY) {
        for (size_t phi = 0; phi < G.chars.irreducibles.size(); ++phi) {
            CycloNumber inner = inner_chi(g, static_cast<int>(phi), G, opts);
            if (inner.is_zero()) continue;
            CycloNumber cpi(0);  // C_pi^phi(w): sum of subgroup expectations over Crit(w)
            for (const auto& e : crit.critical)
                cpi += subgroup_expectation(e.quotient, G.chars.irreducibles[phi]);
            pe.c_sub += cpi * inner;
        }
    }
    return pe;
}

struct TheoremReport {
    bool pass = false;
    PredictedExpansion predicted;
    ExpectationResult expectation;
    LaurentSeries series;
    std::string detail;  // empty when everything matches
};

// check the exact Laurent expansion of E_w[f] against the predicted leading terms:
// coefficient 1 at n^0 times c0, zeros strictly between orders 0 and 1-pi, c_sub at n^{1-pi}
inline TheoremReport verify_main_theorem(const Word& w, const StableFunction& f,
                                         const LoadedGroup& G, int K = -1,
                                         const EngineOptions& opts = {}) {
    TheoremReport rep;
    rep.predicted = predicted_expansion(w, f, G, opts);
    rep.expectation = expect_stable(w, f, G, opts);
    int pi = rep.predicted.pi;
    if (K < 0) K = (pi == PI_INFINITY ? 4 : pi + 4);
    int lead = rep.expectation.value.is_zero()
                   ? 0
                   : rep.expectation.value.num().degree() - rep.expectation.value.den().degree();
    rep.series = laurent_expand(rep.expectation.value, K + std::max(0, lead));

    auto fail = [&](const std::string& msg) {
        if (!rep.detail.empty()) rep.detail += "; ";
        rep.detail += msg;
    };
    if (!rep.series.zero && rep.series.leadOrder > 0)
        fail("positive order n^" + std::to_string(rep.series.leadOrder) + " present");
    if (rep.series.at_order(0) != rep.predicted.c0)
        fail("n^0 coefficient " + rep.series.at_order(0).to_string() + " != c0 " +
             rep.predicted.c0.to_string());
    int lowest = pi == PI_INFINITY ? -K : 1 - pi;
    for (int order = -1; order > lowest && order >= -K; --order)
        if (!rep.series.at_order(order).is_zero())
            fail("unexpected coefficient at order n^" + std::to_string(order));
    if (pi != PI_INFINITY && 1 - pi >= -K &&
        rep.series.at_order(1 - pi) != rep.predicted.c_sub)
        fail("n^{1-pi} coefficient " + rep.series.at_order(1 - pi).to_string() + " != c_sub " +
             rep.predicted.c_sub.to_string());
    if (pi == PI_INFINITY && !rep.series.zero) {
        // primitive words: the expectation is exactly the constant c0
        if (!rep.expectation.value.is_constant()) fail("primitive word with non-constant value");
    }
    rep.pass = rep.detail.empty();
    return rep;
}

struct BoundRow {
    int p = 0;
    double absCoeff = 0.0;
    double bound = 0.0;
    bool ok = false;
};

struct BoundReport {
    bool pass = true;
    int T = 0;
    double dimension = 1.0;  // sInd(lambda) evaluated at the identity
    std::vector<BoundRow> rows;
};

// |a_p| <= sLambda(1) * T^{2(l(lambda)+p)} with T = |w| * ||lambda||, for the
// coefficients a_p of n^{-p} in the Laurent expansion of E_w[sInd(lambda)]
inline BoundReport coefficient_bound_check(const Word& w, const MultiPartition& lam, int K,
                                           const LoadedGroup& G, const EngineOptions& opts = {}) {
    BoundReport rep;
    rep.T = w.length() * lam.total_size();
    for (const auto& [phi, sz] : lam.flat())
        rep.dimension *=
            G.chars.irreducibles[phi].at_element(G.table.identity()).to_float().real();
    ExpectationResult res = expect_stable(w, StableFunction::sInd_monomial(lam), G, opts);
    int lead = res.value.is_zero() ? 0 : res.value.num().degree() - res.value.den().degree();
    LaurentSeries series = laurent_expand(res.value, K + std::max(0, lead));
    int ell = lam.num_parts();
    for (int p = 0; p <= K; ++p) {
        BoundRow row;
        row.p = p;
        row.absCoeff = std::abs(series.at_order(-p).to_float());
        row.bound = rep.dimension * std::pow(static_cast<double>(rep.T), 2.0 * (ell + p));
        row.ok = row.absCoeff <= row.bound * (1.0 + 1e-9) + 1e-300;
        rep.pass = rep.pass && row.ok;
        rep.rows.push_back(row);
    }
    return rep;
}

}  // namespace wm
