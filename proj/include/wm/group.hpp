#pragma once

#include "cyclo.hpp"

#include <memory>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace wm {

struct ConjClass {
    int id = 0;
    std::vector<int> members;  // sorted
    int rep = 0;               // minimal member
    int size() const { return static_cast<int>(members.size()); }
};

class GroupTable {
public:
    GroupTable() {}
    GroupTable(std::string name, std::vector<std::vector<int>> mul) : name_(std::move(name)), mul_(std::move(mul)) {
        init();
    }

    int order() const { return static_cast<int>(mul_.size()); }
    const std::string& name() const { return name_; }
    int mul(int a, int b) const { return mul_[a][b]; }
    int inv(int a) const { return inv_[a]; }
    int identity() const { return id_; }

    int pow(int a, long k) const {
        if (k < 0) return pow(inv_[a], -k);
        int r = id_, base = a;
        while (k) {
            if (k & 1) r = mul_[r][base];
            base = mul_[base][base];
            k >>= 1;
        }
        return r;
    }

    long element_order(int a) const {
        long k = 1;
        int x = a;
        while (x != id_) {
            x = mul_[x][a];
            ++k;
        }
        return k;
    }

    long exponent() const {
        long e = 1;
        for (int a = 0; a < order(); ++a) e = std::lcm(e, element_order(a));
        return e;
    }

    const std::vector<ConjClass>& classes() const { return classes_; }
    int num_classes() const { return static_cast<int>(classes_.size()); }
    int class_of(int a) const { return classOf_[a]; }

    // class of rep^k; independence of the representative is checked in tests
    int power_class(int c, long k) const { return classOf_[pow(classes_[c].rep, k)]; }

private:
    void init() {
        int m = order();
        if (m == 0) throw std::invalid_argument("group: empty table");
        for (auto& row : mul_)
            if (static_cast<int>(row.size()) != m)
                throw std::invalid_argument("group: non-square table");
        for (auto& row : mul_)
            for (int v : row)
                if (v < 0 || v >= m) throw std::invalid_argument("group: entry out of range");
        // identity
        id_ = -1;
        for (int e = 0; e < m; ++e) {
            bool ok = true;
            for (int a = 0; a < m && ok; ++a) ok = mul_[e][a] == a && mul_[a][e] == a;
            if (ok) {
                id_ = e;
                break;
            }
        }
        if (id_ < 0) throw std::invalid_argument("group: no identity");
        // inverses
        inv_.assign(m, -1);
        for (int a = 0; a < m; ++a) {
            for (int b = 0; b < m; ++b)
                if (mul_[a][b] == id_ && mul_[b][a] == id_) {
                    inv_[a] = b;
                    break;
                }
            if (inv_[a] < 0) throw std::invalid_argument("group: missing inverse");
        }
        // associativity: full check for small orders, random spot checks above
        if (m <= 64) {
            for (int a = 0; a < m; ++a)
                for (int b = 0; b < m; ++b)
                    for (int c = 0; c < m; ++c)
                        if (mul_[mul_[a][b]][c] != mul_[a][mul_[b][c]])
                            throw std::invalid_argument("group: not associative");
        } else {
            std::mt19937 rng(12345);
            for (int t = 0; t < 20000; ++t) {
                int a = rng() % m, b = rng() % m, c = rng() % m;
                if (mul_[mul_[a][b]][c] != mul_[a][mul_[b][c]])
                    throw std::invalid_argument("group: not associative");
            }
        }
        // conjugacy classes, ordered by minimal member
        classOf_.assign(m, -1);
        for (int a = 0; a < m; ++a) {
            if (classOf_[a] >= 0) continue;
            std::set<int> orbit;
            for (int g = 0; g < m; ++g) orbit.insert(mul_[mul_[g][a]][inv_[g]]);
            ConjClass c;
            c.id = static_cast<int>(classes_.size());
            c.members.assign(orbit.begin(), orbit.end());
            c.rep = c.members.front();
            for (int x : c.members) classOf_[x] = c.id;
            classes_.push_back(std::move(c));
        }
    }

    std::string name_;
    std::vector<std::vector<int>> mul_;
    std::vector<int> inv_;
    std::vector<int> classOf_;
    std::vector<ConjClass> classes_;
    int id_ = 0;
};

struct ClassFunction {
    const GroupTable* group = nullptr;
    std::vector<CycloNumber> values;  // one per conjugacy class

    const CycloNumber& at_class(int c) const { return values[c]; }
    const CycloNumber& at_element(int g) const { return values[group->class_of(g)]; }

    bool is_trivial_char() const {
        for (const auto& v : values)
            if (v != CycloNumber(1)) return false;
        return true;
    }

    friend bool operator==(const ClassFunction& a, const ClassFunction& b) {
        return a.group == b.group && a.values == b.values;
    }
};

inline CycloNumber inner_product(const ClassFunction& f, const ClassFunction& g) {
    if (f.group != g.group) throw std::invalid_argument("inner_product: group mismatch");
    CycloNumber acc(0);
    const auto& classes = f.group->classes();
    for (size_t c = 0; c < classes.size(); ++c)
        acc += CycloNumber(classes[c].size()) * f.values[c] * g.values[c].conj();
    return acc / CycloNumber(f.group->order());
}

inline ClassFunction power_twist_class_fn(const ClassFunction& f, long k) {
    ClassFunction r;
    r.group = f.group;
    r.values.resize(f.values.size());
    for (size_t c = 0; c < f.values.size(); ++c)
        r.values[c] = f.values[f.group->power_class(static_cast<int>(c), k)];
    return r;
}

struct CharacterTable {
    std::vector<ClassFunction> irreducibles;  // trivial character first

    void validate(const GroupTable& G) const {
        if (irreducibles.empty()) throw std::invalid_argument("chartable: empty");
        if (!irreducibles[0].is_trivial_char())
            throw std::invalid_argument("chartable: trivial character must come first");
        CycloNumber dimsq(0);
        for (size_t i = 0; i < irreducibles.size(); ++i) {
            for (size_t j = 0; j < irreducibles.size(); ++j) {
                CycloNumber ip = inner_product(irreducibles[i], irreducibles[j]);
                CycloNumber expect(i == j ? 1 : 0);
                if (ip != expect) throw std::invalid_argument("chartable: orthogonality fails");
            }
            const CycloNumber& dim = irreducibles[i].values[G.class_of(G.identity())];
            dimsq += dim * dim;
        }
        if (dimsq != CycloNumber(G.order()))
            throw std::invalid_argument("chartable: dimension sum fails");
    }
};

struct LoadedGroup {
    GroupTable table;
    CharacterTable chars;

    const ClassFunction& trivial_char() const { return chars.irreducibles[0]; }
    ClassFunction constant_one() const {
        ClassFunction f;
        f.group = &table;
        f.values.assign(table.num_classes(), CycloNumber(1));
        return f;
    }
};

// cyclic group of order m; chi_j(x) = zeta_m^(jx)
inline std::shared_ptr<LoadedGroup> make_cyclic(int m) {
    auto g = std::make_shared<LoadedGroup>();
    std::vector<std::vector<int>> mul(m, std::vector<int>(m));
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) mul[a][b] = (a + b) % m;
    g->table = GroupTable(m == 1 ? "trivial" : "cyclic" + std::to_string(m), std::move(mul));
    auto z = CycloNumber::zeta(m);
    for (int j = 0; j < m; ++j) {
        ClassFunction chi;
        chi.group = &g->table;
        for (int x = 0; x < m; ++x) chi.values.push_back(z.pow(static_cast<long>(j) * x % m));
        g->chars.irreducibles.push_back(std::move(chi));
    }
    g->chars.validate(g->table);
    return g;
}

// symmetric group on 3 points; elements are permutations of {0,1,2} in lexicographic
// order of their image tuples: 012, 021, 102, 120, 201, 210
inline std::shared_ptr<LoadedGroup> make_sym3() {
    auto g = std::make_shared<LoadedGroup>();
    const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    auto find = [&](const int* p) {
        for (int i = 0; i < 6; ++i)
            if (perms[i][0] == p[0] && perms[i][1] == p[1] && perms[i][2] == p[2]) return i;
        return -1;
    };
    std::vector<std::vector<int>> mul(6, std::vector<int>(6));
    for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b) {
            int comp[3];
            for (int x = 0; x < 3; ++x) comp[x] = perms[a][perms[b][x]];
            mul[a][b] = find(comp);
        }
    g->table = GroupTable("sym3", std::move(mul));
    // classes by minimal member: {id}, {transpositions}, {3-cycles}
    auto mk = [&](std::vector<long long> vals) {
        ClassFunction f;
        f.group = &g->table;
        for (auto v : vals) f.values.emplace_back(CycloNumber(v));
        return f;
    };
    g->chars.irreducibles = {mk({1, 1, 1}), mk({1, -1, 1}), mk({2, 0, -1})};
    g->chars.validate(g->table);
    return g;
}

}  // namespace wm
