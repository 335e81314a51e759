#pragma once

#include "coregraph.hpp"
#include "group.hpp"

namespace wm {

struct PathLoad {
    MarkedPath path;
    ClassFunction zeta;
};

// E over uniform anti-symmetric beta: E(Delta) -> G of the product of zeta_j(beta along path_j).
// Tree edges carry the identity; the excess edges of each component are enumerated.
inline CycloNumber graph_expectation(const MultiCoreGraph& delta, const std::vector<PathLoad>& loads,
                                     long long budget = 100000000LL) {
    if (loads.empty()) return CycloNumber(1);
    const GroupTable& G = *loads.front().zeta.group;
    auto comp = delta.components();
    int nc = delta.num_components();

    struct CompWork {
        ComponentBasis basis;
        // per load: sequence of (generator, sign)
        std::vector<std::vector<std::pair<int, bool>>> seqs;
        std::vector<const ClassFunction*> zetas;
    };
    std::vector<CompWork> works(nc);
    std::vector<bool> used(nc, false);

    for (const auto& load : loads) {
        if (load.zeta.group != &G)
            throw std::invalid_argument("graph_expectation: mixed groups in loads");
        if (load.path.steps.empty()) continue;  // empty walk contributes zeta(1)? not produced here
        int c = comp[delta.edge(load.path.steps.front().edge).src];
        if (!used[c]) {
            works[c].basis = spanning_tree_basis(delta, c);
            used[c] = true;
        }
        std::vector<std::pair<int, bool>> seq;
        for (const auto& step : load.path.steps) {
            int g = works[c].basis.genOfEdge[step.edge];
            if (g >= 0) seq.push_back({g, step.forward});
        }
        works[c].seqs.push_back(std::move(seq));
        works[c].zetas.push_back(&load.zeta);
    }

    long long m = G.order();
    CycloNumber total(1);
    for (int c = 0; c < nc; ++c) {
        if (!used[c]) continue;
        const CompWork& work = works[c];
        int rank = work.basis.rank;
        long long count = 1;
        long long letters = 0;
        for (const auto& s : work.seqs) letters += static_cast<long long>(s.size());
        for (int i = 0; i < rank; ++i) {
            count *= m;
            if (count > budget) throw std::runtime_error("graph_expectation: enumeration budget exceeded");
        }
        if (count * std::max(letters, 1LL) > budget)
            throw std::runtime_error("graph_expectation: enumeration budget exceeded");

        CycloNumber sum(0);
        std::vector<int> assign(rank, 0);
        while (true) {
            CycloNumber val(1);
            for (size_t j = 0; j < work.seqs.size(); ++j) {
                int prod = G.identity();
                for (const auto& [gen, fwd] : work.seqs[j]) {
                    int g = assign[gen];
                    prod = G.mul(prod, fwd ? g : G.inv(g));
                }
                val *= work.zetas[j]->at_element(prod);
                if (val.is_zero()) break;
            }
            sum += val;
            int pos = 0;
            while (pos < rank && ++assign[pos] == m) assign[pos++] = 0;
            if (pos == rank) break;
        }
        CycloNumber denom(1);
        for (int i = 0; i < rank; ++i) denom *= CycloNumber(m);
        total *= sum / denom;
    }
    return total;
}

// Eq.-(1)-style closed form for the cyclic group of order m with its standard character:
// the expectation is 1 iff every signed letter count of w vanishes mod m, else 0
inline Rational cyclic_expectation_closed_form(const Word& w, int m) {
    for (long nu : abelian_counts(w))
        if (((nu % m) + m) % m != 0) return Rational(0);
    return Rational(1);
}

}  // namespace wm
