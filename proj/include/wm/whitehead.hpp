#pragma once

#include "gexpect.hpp"

#include <climits>

namespace wm {

// type-II Whitehead automorphism of F_k: multiplier a, cut set S with a in S, -a not in S.
// letters x outside {a, -a}: x -> x*a if x in S only, a^-1*x if -x in S only,
// a^-1*x*a if both, x if neither; a is fixed.
struct WhiteheadAuto {
    int rank = 0;
    int a = 0;
    std::set<int> S;

    std::vector<int> image_of_letter(int x) const {
        if (x == a || x == -a) return {x};
        int ax = std::abs(x);
        bool posIn = S.count(ax) > 0, negIn = S.count(-ax) > 0;
        bool xIn = x > 0 ? posIn : negIn;
        bool xInvIn = x > 0 ? negIn : posIn;
        if (xIn && !xInvIn) return {x, a};
        if (xInvIn && !xIn) return {-a, x};
        if (xIn && xInvIn) return {-a, x, a};
        return {x};
    }

    Word apply(const Word& w) const {
        std::vector<int> out;
        for (int l : w.letters) {
            auto img = image_of_letter(l);
            out.insert(out.end(), img.begin(), img.end());
        }
        return make_word(std::move(out), w.rank);
    }
};

inline std::vector<WhiteheadAuto> all_whitehead_autos(int k) {
    if (k > 6) throw std::runtime_error("whitehead: rank cap 6 exceeded");
    std::vector<WhiteheadAuto> autos;
    std::vector<int> others;
    for (int a = -k; a <= k; ++a) {
        if (a == 0) continue;
        others.clear();
        for (int x = -k; x <= k; ++x)
            if (x != 0 && x != a && x != -a) others.push_back(x);
        size_t n = others.size();
        for (size_t mask = 0; mask < (size_t{1} << n); ++mask) {
            WhiteheadAuto wa;
            wa.rank = k;
            wa.a = a;
            wa.S.insert(a);
            for (size_t i = 0; i < n; ++i)
                if (mask & (size_t{1} << i)) wa.S.insert(others[i]);
            if (wa.S.size() == 1) continue;  // identity map
            autos.push_back(std::move(wa));
        }
    }
    return autos;
}

inline int cyclic_length(const Word& w) { return cyclic_reduce(w).first.length(); }

// greedy Whitehead descent; peak reduction guarantees the minimum is reached
inline std::pair<int, std::vector<WhiteheadAuto>> min_cyclic_length(const Word& u, int k) {
    Word w = cyclic_reduce(u).first;
    std::vector<WhiteheadAuto> witness;
    auto autos = all_whitehead_autos(k);
    bool improved = true;
    while (improved && w.length() > 1) {
        improved = false;
        Word best = w;
        const WhiteheadAuto* bestAuto = nullptr;
        for (const auto& wa : autos) {
            Word v = cyclic_reduce(wa.apply(w)).first;
            if (v.length() < best.length()) {
                best = v;
                bestAuto = &wa;
            }
        }
        if (bestAuto) {
            w = best;
            witness.push_back(*bestAuto);
            improved = true;
        }
    }
    return {w.length(), witness};
}

inline bool is_primitive(const Word& u, int k) {
    if (u.empty()) throw std::invalid_argument("is_primitive: empty word");
    return min_cyclic_length(u, k).first == 1;
}

constexpr int PI_INFINITY = INT_MAX;

struct CritEntry {
    QuotientClass quotient;
    int rank = 0;
    Word wordInBasis;
    CycloNumber expectation;  // E of the relevant character on this subgroup
};

struct CritReport {
    int pi = PI_INFINITY;  // PI_INFINITY when no witness exists
    std::vector<CritEntry> critical;
    int phiIndex = -1;  // character row for the phi-variant, -1 for the plain one
};

// scan the quotient lattice of the w-cycle for minimal-rank subgroups containing w
// as a non-primitive element
inline CritReport primitivity_rank(const Word& w, int vertexCap = 14) {
    if (w.empty()) throw std::invalid_argument("primitivity_rank: empty word");
    if (!is_cyclically_reduced(w))
        throw std::invalid_argument("primitivity_rank: word not cyclically reduced");
    if (power_decompose(w).second > 1)
        throw std::invalid_argument(
            "primitivity_rank: proper power (pi = 1); use the power reduction f^(k) instead");
    auto wg = build_w_graph(w, {1});
    CritReport report;
    for (auto& qc : enumerate_quotients(wg, vertexCap)) {
        auto basis = spanning_tree_basis(qc.image, 0);
        Word pw = path_word(basis, qc.pathImages[0]);
        int rank = basis.rank;
        if (rank > report.pi) continue;
        if (is_primitive(pw, rank)) continue;
        if (rank < report.pi) {
            report.pi = rank;
            report.critical.clear();
        }
        if (rank == report.pi) {
            CritEntry e;
            e.rank = rank;
            e.wordInBasis = pw;
            e.expectation = CycloNumber(1);
            e.quotient = std::move(qc);
            report.critical.push_back(std::move(e));
        }
    }
    return report;
}

// E_{w->H}[phi] for the subgroup given by a quotient image
inline CycloNumber subgroup_expectation(const QuotientClass& qc, const ClassFunction& phi) {
    return graph_expectation(qc.image, {{qc.pathImages[0], phi}});
}

// phi-variant: minimal rank with E_{w->H}[phi] != 0 (delegates to the plain rank for phi = 1)
inline CritReport phi_rank(const Word& w, int phiIndex, const LoadedGroup& G, int vertexCap = 14) {
    const ClassFunction& phi = G.chars.irreducibles.at(phiIndex);
    if (phi.is_trivial_char()) {
        CritReport r = primitivity_rank(w, vertexCap);
        r.phiIndex = phiIndex;
        return r;
    }
    if (w.empty()) throw std::invalid_argument("phi_rank: empty word");
    if (!is_cyclically_reduced(w))
        throw std::invalid_argument("phi_rank: word not cyclically reduced");
    if (power_decompose(w).second > 1)
        throw std::invalid_argument("phi_rank: proper power; use the power reduction instead");
    auto wg = build_w_graph(w, {1});
    CritReport report;
    report.phiIndex = phiIndex;
    for (auto& qc : enumerate_quotients(wg, vertexCap)) {
        auto basis = spanning_tree_basis(qc.image, 0);
        int rank = basis.rank;
        if (report.pi != PI_INFINITY && rank > report.pi) continue;
        CycloNumber e = subgroup_expectation(qc, phi);
        if (e.is_zero()) continue;
        if (rank < report.pi) {
            report.pi = rank;
            report.critical.clear();
        }
        if (rank == report.pi) {
            CritEntry entry;
            entry.rank = rank;
            entry.wordInBasis = path_word(basis, qc.pathImages[0]);
            entry.expectation = std::move(e);
            entry.quotient = std::move(qc);
            report.critical.push_back(std::move(entry));
        }
    }
    return report;
}

struct CriticalValues {
    CycloNumber c_phi;     // sum of E over Crit_phi(w)
    CycloNumber c_pi_phi;  // sum of E over the plain Crit(w)
    int pi = PI_INFINITY;
    int pi_phi = PI_INFINITY;
};

inline CriticalValues critical_values(const Word& w, int phiIndex, const LoadedGroup& G,
                                      int vertexCap = 14) {
    CriticalValues cv;
    const ClassFunction& phi = G.chars.irreducibles.at(phiIndex);
    CritReport plain = primitivity_rank(w, vertexCap);
    cv.pi = plain.pi;
    cv.c_pi_phi = CycloNumber(0);
    for (const auto& e : plain.critical) cv.c_pi_phi += subgroup_expectation(e.quotient, phi);
    CritReport phir = phi_rank(w, phiIndex, G, vertexCap);
    cv.pi_phi = phir.pi;
    cv.c_phi = CycloNumber(0);
    for (const auto& e : phir.critical) cv.c_phi += e.expectation;
    return cv;
}

}  // namespace wm
