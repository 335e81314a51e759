#pragma once

#include "group.hpp"
#include "serialize.hpp"

#include <fstream>

namespace wm {

inline std::vector<std::vector<int>> cayley_from_perm_gens(
    const std::vector<std::vector<int>>& gens, int orderCap = 5040) {
    if (gens.empty()) throw std::invalid_argument("perm_gens: empty");
    size_t d = gens[0].size();
    for (const auto& g : gens) {
        if (g.size() != d) throw std::invalid_argument("perm_gens: mixed degrees");
        std::vector<bool> seen(d, false);
        for (int v : g) {
            if (v < 0 || v >= static_cast<int>(d) || seen[v])
                throw std::invalid_argument("perm_gens: not a permutation");
            seen[v] = true;
        }
    }
    std::vector<int> identity(d);
    for (size_t i = 0; i < d; ++i) identity[i] = static_cast<int>(i);
    std::set<std::vector<int>> elems{identity};
    std::vector<std::vector<int>> frontier{identity};
    while (!frontier.empty()) {
        std::vector<std::vector<int>> next;
        for (const auto& e : frontier)
            for (const auto& g : gens) {
                std::vector<int> p(d);
                for (size_t i = 0; i < d; ++i) p[i] = g[e[i]];
                if (elems.insert(p).second) {
                    if (static_cast<int>(elems.size()) > orderCap)
                        throw std::invalid_argument("perm_gens: order cap exceeded");
                    next.push_back(std::move(p));
                }
            }
        frontier = std::move(next);
    }
    // element ids in lexicographic image-tuple order (deterministic)
    std::vector<std::vector<int>> list(elems.begin(), elems.end());
    std::map<std::vector<int>, int> index;
    for (size_t i = 0; i < list.size(); ++i) index[list[i]] = static_cast<int>(i);
    int m = static_cast<int>(list.size());
    std::vector<std::vector<int>> mul(m, std::vector<int>(m));
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            std::vector<int> p(d);
            for (size_t i = 0; i < d; ++i) p[i] = list[a][list[b][i]];
            mul[a][b] = index.at(p);
        }
    return mul;
}

inline std::shared_ptr<LoadedGroup> load_group_json(const json& j) {
    auto g = std::make_shared<LoadedGroup>();
    std::string name = j.value("name", "unnamed");
    std::vector<std::vector<int>> mul;
    if (j.contains("cayley")) {
        mul = j.at("cayley").get<std::vector<std::vector<int>>>();
    } else if (j.contains("perm_gens")) {
        mul = cayley_from_perm_gens(j.at("perm_gens").get<std::vector<std::vector<int>>>());
    } else {
        throw std::invalid_argument("group file: needs cayley or perm_gens");
    }
    if (j.contains("order") && j.at("order").get<int>() != static_cast<int>(mul.size()))
        throw std::invalid_argument("group file: declared order mismatch");
    g->table = GroupTable(name, std::move(mul));

    if (j.contains("class_reps")) {
        auto reps = j.at("class_reps").get<std::vector<int>>();
        if (static_cast<int>(reps.size()) != g->table.num_classes())
            throw std::invalid_argument("group file: class_reps count mismatch");
        for (size_t c = 0; c < reps.size(); ++c)
            if (g->table.class_of(reps[c]) != static_cast<int>(c))
                throw std::invalid_argument("group file: class_reps disagree with class order");
    }

    if (j.contains("char_table")) {
        const json& ct = j.at("char_table");
        long N = ct.value("conductor", g->table.exponent());
        for (const auto& row : ct.at("rows")) {
            ClassFunction f;
            f.group = &g->table;
            for (const auto& v : row) {
                CycloNumber x = cyclo_from_json(v);
                if (N % x.conductor() != 0)
                    throw std::invalid_argument("group file: value outside declared conductor");
                f.values.push_back(std::move(x));
            }
            if (static_cast<int>(f.values.size()) != g->table.num_classes())
                throw std::invalid_argument("group file: row length mismatch");
            g->chars.irreducibles.push_back(std::move(f));
        }
        g->chars.validate(g->table);
    }
    return g;
}

// builtin spec ("trivial", "cyclicN", "sym3") or a path to a JSON group file
inline std::shared_ptr<LoadedGroup> load_group(const std::string& source) {
    if (source == "trivial") return make_cyclic(1);
    if (source == "sym3") return make_sym3();
    if (source.rfind("cyclic", 0) == 0 && source.size() > 6 &&
        source.find_first_not_of("0123456789", 6) == std::string::npos) {
        int m = std::stoi(source.substr(6));
        if (m < 1) throw std::invalid_argument("cyclic group order must be >= 1");
        return make_cyclic(m);
    }
    std::ifstream in(source);
    if (!in) throw std::invalid_argument("cannot open group file: " + source);
    json j;
    in >> j;
    return load_group_json(j);
}

}  // namespace wm
