#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <wm/gexpect.hpp>
#include <wm/group_io.hpp>

using namespace wm;

TEST_CASE("builtin cyclic groups") {
    auto c2 = make_cyclic(2);
    CHECK(c2->table.order() == 2);
    CHECK(c2->table.num_classes() == 2);
    CHECK(c2->chars.irreducibles.size() == 2);
    CHECK(c2->chars.irreducibles[1].values[1] == CycloNumber(-1));

    auto c3 = make_cyclic(3);
    CHECK(c3->table.num_classes() == 3);
    CHECK(c3->chars.irreducibles[1].values[1] == CycloNumber::zeta(3));

    auto triv = load_group("trivial");
    CHECK(triv->table.order() == 1);
    CHECK(triv->table.num_classes() == 1);
}

TEST_CASE("builtin sym3") {
    auto s3 = make_sym3();
    CHECK(s3->table.order() == 6);
    REQUIRE(s3->table.num_classes() == 3);
    CHECK(s3->table.classes()[0].size() == 1);
    CHECK(s3->table.classes()[1].size() == 3);
    CHECK(s3->table.classes()[2].size() == 2);
    CHECK(s3->table.exponent() == 6);

    // power classes
    CHECK(s3->table.power_class(1, 2) == 0);  // transposition squared = id
    CHECK(s3->table.power_class(2, 2) == 2);  // 3-cycle squared is a 3-cycle
    CHECK(s3->table.power_class(1, 0) == 0);
    // representative independence
    for (const auto& c : s3->table.classes())
        for (int g : c.members)
            for (long k : {-2L, 2L, 3L})
                CHECK(s3->table.class_of(s3->table.pow(g, k)) == s3->table.power_class(c.id, k));
}

TEST_CASE("inner products and power twist") {
    auto s3 = make_sym3();
    const auto& irr = s3->chars.irreducibles;
    CHECK(inner_product(irr[0], irr[0]) == CycloNumber(1));
    CHECK(inner_product(irr[2], irr[2]) == CycloNumber(1));
    CHECK(inner_product(irr[1], irr[0]) == CycloNumber(0));

    auto std2 = power_twist_class_fn(irr[2], 2);
    CHECK(std2.values[0] == CycloNumber(2));
    CHECK(std2.values[1] == CycloNumber(2));
    CHECK(std2.values[2] == CycloNumber(-1));

    auto c2 = make_cyclic(2);
    auto sgn2 = power_twist_class_fn(c2->chars.irreducibles[1], 2);
    CHECK(sgn2.values[0] == CycloNumber(1));
    CHECK(sgn2.values[1] == CycloNumber(1));

    CHECK(power_twist_class_fn(irr[2], 1) == irr[2]);
}

TEST_CASE("group file loading") {
    json bad = {{"name", "notagroup"}, {"cayley", {{0, 1}, {1, 1}}}};
    CHECK_THROWS(load_group_json(bad));

    json klein = {{"name", "v4"},
                  {"cayley", {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}}}};
    auto v4 = load_group_json(klein);
    CHECK(v4->table.order() == 4);
    CHECK(v4->table.num_classes() == 4);

    json s3j = {{"name", "sym3perm"}, {"perm_gens", {{1, 0, 2}, {1, 2, 0}}}};
    auto s3 = load_group_json(s3j);
    CHECK(s3->table.order() == 6);
    CHECK(s3->table.num_classes() == 3);

    json badchars = {{"name", "c2"},
                     {"cayley", {{0, 1}, {1, 0}}},
                     {"char_table", {{"conductor", 2}, {"rows", {{1, 1}, {1, 1}}}}}};
    CHECK_THROWS(load_group_json(badchars));
}

TEST_CASE("graph_expectation basics") {
    auto s3 = make_sym3();
    // bouquet on 2 letters, commutator walk
    MultiCoreGraph bouquet(1, 2, {{0, 0, 1}, {0, 0, 2}});
    MarkedPath comm;
    comm.steps = {{0, true}, {1, true}, {0, false}, {1, false}};
    CHECK(graph_expectation(bouquet, {{comm, s3->chars.irreducibles[2]}}) ==
          CycloNumber(Rational(1, 2)));

    // single w-cycle: expectation of an irreducible != 1 is 0, of the trivial char is 1
    auto wg = build_w_graph(parse_word("aab", 2), {1});
    QuotientClass idq = fold_closure(wg, identity_partition(wg.graph.num_vertices()));
    CHECK(graph_expectation(idq.image, {{idq.pathImages[0], s3->chars.irreducibles[2]}}) ==
          CycloNumber(0));
    CHECK(graph_expectation(idq.image, {{idq.pathImages[0], s3->chars.irreducibles[0]}}) ==
          CycloNumber(1));
}

TEST_CASE("graph_expectation vs direct hom enumeration") {
    auto s3 = make_sym3();
    auto c3 = make_cyclic(3);
    for (auto g : {s3, c3}) {
        for (const char* wtext : {"abAB", "aabb", "aba", "abb"}) {
            Word w = parse_word(wtext, 2);
            MultiCoreGraph bouquet(1, 2, {{0, 0, 1}, {0, 0, 2}});
            MarkedPath p;
            for (int l : w.letters) p.steps.push_back({std::abs(l) - 1, l > 0});
            for (const auto& chi : g->chars.irreducibles) {
                CycloNumber direct(0);
                const GroupTable& G = g->table;
                for (int x = 0; x < G.order(); ++x)
                    for (int y = 0; y < G.order(); ++y) {
                        int prod = G.identity();
                        for (int l : w.letters) {
                            int gen = std::abs(l) == 1 ? x : y;
                            prod = G.mul(prod, l > 0 ? gen : G.inv(gen));
                        }
                        direct += chi.at_element(prod);
                    }
                direct /= CycloNumber(static_cast<long long>(G.order()) * G.order());
                CHECK(graph_expectation(bouquet, {{p, chi}}) == direct);
            }
        }
    }
}

TEST_CASE("eq(1) oracle for cyclic groups") {
    for (int m : {2, 3, 4}) {
        auto cm = make_cyclic(m);
        const auto& stdchar = cm->chars.irreducibles[1];  // standard embedding character
        for (const char* wtext : {"aabb", "a", "abAB", "ab", "aabbb", "aaab"}) {
            Word w = parse_word(wtext, 2);
            MultiCoreGraph bouquet(1, 2, {{0, 0, 1}, {0, 0, 2}});
            MarkedPath p;
            for (int l : w.letters) p.steps.push_back({std::abs(l) - 1, l > 0});
            CycloNumber e = graph_expectation(bouquet, {{p, stdchar}});
            CHECK(e == CycloNumber(cyclic_expectation_closed_form(w, m)));
        }
    }
}

TEST_CASE("graph_expectation invariant under relabeling") {
    auto c3 = make_cyclic(3);
    // 2-cycle with labels a, b vs the same graph with swapped vertex ids
    MultiCoreGraph g1(2, 2, {{0, 1, 1}, {1, 0, 2}});
    MultiCoreGraph g2(2, 2, {{1, 0, 1}, {0, 1, 2}});
    MarkedPath p1, p2;
    p1.steps = {{0, true}, {1, true}, {0, false}, {1, false}};
    p2.steps = {{0, true}, {1, true}, {0, false}, {1, false}};
    for (const auto& chi : c3->chars.irreducibles)
        CHECK(graph_expectation(g1, {{p1, chi}}) == graph_expectation(g2, {{p2, chi}}));
}

TEST_CASE("multi component expectation multiplies") {
    auto c2 = make_cyclic(2);
    // two disjoint loops labeled a
    MultiCoreGraph g(2, 1, {{0, 0, 1}, {1, 1, 1}});
    MarkedPath p0, p1;
    p0.steps = {{0, true}};
    p1.steps = {{1, true}};
    const auto& sgn = c2->chars.irreducibles[1];
    const auto& triv = c2->chars.irreducibles[0];
    CHECK(graph_expectation(g, {{p0, sgn}, {p1, sgn}}) == CycloNumber(0));
    CHECK(graph_expectation(g, {{p0, triv}, {p1, triv}}) == CycloNumber(1));
    // same component: E[sgn(x)sgn(x)] = 1
    MultiCoreGraph h(1, 1, {{0, 0, 1}});
    MarkedPath q;
    q.steps = {{0, true}};
    CHECK(graph_expectation(h, {{q, sgn}, {q, sgn}}) == CycloNumber(1));
}
