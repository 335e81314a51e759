#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <wm/coregraph.hpp>

using namespace wm;

TEST_CASE("word parsing") {
    CHECK(parse_word("aabb", 2).letters == std::vector<int>{1, 1, 2, 2});
    CHECK(parse_word("abAB", 2).letters == std::vector<int>{1, 2, -1, -2});
    CHECK(parse_word("[a,b]", 2).letters == std::vector<int>{1, 2, -1, -2});
    CHECK(parse_word("aA", 2).letters.empty());
    CHECK(parse_word("(ab)^2A", 2).letters == std::vector<int>{1, 2, 1, 2, -1});
    CHECK(parse_word("a^-2", 1).letters == std::vector<int>{-1, -1});
    CHECK(parse_word("a^3", 1).letters == std::vector<int>{1, 1, 1});
    CHECK_THROWS(parse_word("c", 2));
    CHECK_THROWS(parse_word("(ab", 2));
    CHECK_THROWS(parse_word("a)", 2));
    CHECK(parse_word("abAB", 2).to_string() == "abAB");
}

TEST_CASE("cyclic reduce and power decompose") {
    auto [core1, conj1] = cyclic_reduce(parse_word("abA", 2));
    CHECK(core1.letters == std::vector<int>{2});
    CHECK(conj1.letters == std::vector<int>{1});

    auto [core2, conj2] = cyclic_reduce(parse_word("aabb", 2));
    CHECK(core2.letters == std::vector<int>{1, 1, 2, 2});
    CHECK(conj2.letters.empty());

    auto [core3, conj3] = cyclic_reduce(make_word({}, 2));
    CHECK(core3.letters.empty());

    auto [u1, k1] = power_decompose(parse_word("abab", 2));
    CHECK(u1.letters == std::vector<int>{1, 2});
    CHECK(k1 == 2);
    auto [u2, k2] = power_decompose(parse_word("abAB", 2));
    CHECK(k2 == 1);
    auto [u3, k3] = power_decompose(parse_word("aaa", 1));
    CHECK(u3.letters == std::vector<int>{1});
    CHECK(k3 == 3);
}

TEST_CASE("abelian counts") {
    CHECK(abelian_counts(parse_word("aabb", 2)) == std::vector<long>{2, 2});
    CHECK(abelian_counts(parse_word("abAB", 2)) == std::vector<long>{0, 0});
    CHECK(abelian_counts(parse_word("aB", 2)) == std::vector<long>{1, -1});
}

TEST_CASE("w graph construction") {
    auto g1 = build_w_graph(parse_word("ab", 2), {1});
    CHECK(g1.graph.num_vertices() == 2);
    CHECK(g1.graph.num_edges() == 2);
    CHECK(g1.graph.is_folded());
    CHECK(g1.graph.is_leafless());
    CHECK(g1.graph.euler_char() == 0);

    auto g2 = build_w_graph(parse_word("a", 1), {2});
    CHECK(g2.graph.num_vertices() == 2);
    CHECK(g2.graph.num_edges() == 2);
    CHECK(g2.cycles.size() == 1);
    CHECK(g2.cycles[0].steps.size() == 2);

    auto g3 = build_w_graph(parse_word("abAB", 2), {1, 1});
    CHECK(g3.graph.num_vertices() == 8);
    CHECK(g3.graph.num_components() == 2);
    CHECK(g3.graph.is_folded());

    CHECK_THROWS(build_w_graph(make_word({}, 2), {1}));
}

TEST_CASE("fold closure") {
    auto wg = build_w_graph(parse_word("ab", 2), {1});
    auto idq = fold_closure(wg, identity_partition(2));
    CHECK(idq.image.num_vertices() == 2);
    CHECK(idq.image.num_edges() == 2);
    CHECK(idq.partition == identity_partition(2));

    // merging both vertices of the ab 2-cycle gives the 2-letter bouquet
    auto merged = fold_closure(wg, {0, 0});
    CHECK(merged.image.num_vertices() == 1);
    CHECK(merged.image.num_edges() == 2);
    CHECK(merged.image.euler_char() == -1);

    // two a-loops merged fold into a single loop
    auto wg2 = build_w_graph(parse_word("a", 1), {1, 1});
    auto m2 = fold_closure(wg2, {0, 0});
    CHECK(m2.image.num_vertices() == 1);
    CHECK(m2.image.num_edges() == 1);
    CHECK(m2.pathImages[0].steps == m2.pathImages[1].steps);
}

TEST_CASE("quotient enumeration small cases") {
    CHECK(enumerate_quotients(build_w_graph(parse_word("a", 1), {1})).size() == 1);
    CHECK(enumerate_quotients(build_w_graph(parse_word("ab", 2), {1})).size() == 2);
    CHECK(enumerate_quotients(build_w_graph(parse_word("a", 1), {1, 1})).size() == 2);
}

TEST_CASE("quotient enumeration matches brute force") {
    std::vector<std::pair<const char*, std::vector<int>>> cases = {
        {"ab", {1}},   {"abAB", {1}}, {"aabb", {1}},  {"ab", {1, 1}},
        {"a", {1, 2}}, {"aab", {1}},  {"ab", {2}},    {"aBa", {1}},
    };
    for (const auto& [wtext, lam] : cases) {
        auto wg = build_w_graph(parse_word(wtext, 2), lam);
        REQUIRE(wg.graph.num_vertices() <= 8);
        auto fast = enumerate_quotients(wg);
        auto slow = enumerate_quotients_bruteforce(wg);
        REQUIRE(fast.size() == slow.size());
        for (size_t i = 0; i < fast.size(); ++i)
            CHECK(fast[i].partition == slow[i].partition);  // both sorted by key
    }
}

TEST_CASE("quotient images are folded leafless with chi <= 0") {
    auto wg = build_w_graph(parse_word("aabb", 2), {1, 1});
    for (const auto& qc : enumerate_quotients(wg)) {
        CHECK(qc.image.is_folded());
        CHECK(qc.image.is_leafless());
        auto comp = qc.image.components();
        int nc = qc.image.num_components();
        std::vector<int> vcount(nc, 0), ecount(nc, 0);
        for (int v = 0; v < qc.image.num_vertices(); ++v) vcount[comp[v]]++;
        for (const auto& e : qc.image.edges()) ecount[comp[e.src]]++;
        for (int c = 0; c < nc; ++c) CHECK(vcount[c] - ecount[c] <= 0);
    }
}

TEST_CASE("degree loss: non-isomorphism quotients of a connected cyclic graph") {
    // one-letter cycles: a proper quotient is a covering of a shorter cycle, so every
    // image edge fiber equals the covering degree >= 2. (For multi-letter graphs this
    // holds only along algebraic quotients, which are not singled out here.)
    for (int len : {2, 3, 4, 6}) {
        auto wg = build_w_graph(parse_word("a", 1), {len});
        for (const auto& qc : enumerate_quotients(wg)) {
            if (qc.image.num_edges() == wg.graph.num_edges()) continue;  // isomorphism
            std::vector<int> fiber(qc.image.num_edges(), 0);
            for (int e = 0; e < wg.graph.num_edges(); ++e) fiber[qc.edgeMap[e]]++;
            for (int f : fiber) CHECK(f >= 2);
        }
    }
}

TEST_CASE("one letter quotients are multicycles") {
    auto wg = build_w_graph(parse_word("a", 1), {3, 2, 1});
    for (const auto& qc : enumerate_quotients(wg)) {
        // every vertex has exactly one outgoing and one incoming a-edge
        for (int v = 0; v < qc.image.num_vertices(); ++v) {
            CHECK(qc.image.out_edge(v, 1) >= 0);
            CHECK(qc.image.in_edge(v, 1) >= 0);
        }
        CHECK(qc.image.euler_char() == 0);
    }
}

TEST_CASE("spanning tree basis and path words") {
    // identity quotient of a w-cycle: rank 1, path word = generator
    auto wg = build_w_graph(parse_word("aab", 2), {1});
    auto idq = fold_closure(wg, identity_partition(3));
    auto basis = spanning_tree_basis(idq.image, 0);
    CHECK(basis.rank == 1);
    Word pw = path_word(basis, idq.pathImages[0]);
    CHECK(pw.letters.size() == 1);

    // lambda = (2): the traversal covers the cycle twice -> generator^2
    auto wg2 = build_w_graph(parse_word("ab", 2), {2});
    // merge to the 2-cycle: vertices 0=2, 1=3
    auto folded = fold_closure(wg2, {0, 1, 0, 1});
    auto b2 = spanning_tree_basis(folded.image, 0);
    CHECK(b2.rank == 1);
    Word pw2 = path_word(b2, folded.pathImages[0]);
    CHECK(pw2.letters == std::vector<int>{1, 1});

    // full bouquet quotient of aabb: rank 2, word x^2 y^2 up to basis choice
    auto wg3 = build_w_graph(parse_word("aabb", 2), {1});
    auto bouquet = fold_closure(wg3, {0, 0, 0, 0});
    CHECK(bouquet.image.num_vertices() == 1);
    auto b3 = spanning_tree_basis(bouquet.image, 0);
    CHECK(b3.rank == 2);
    Word pw3 = path_word(b3, bouquet.pathImages[0]);
    CHECK(pw3.length() == 4);
    std::vector<int> expected1{1, 1, 2, 2}, expected2{2, 2, 1, 1};
    CHECK((pw3.letters == expected1 || pw3.letters == expected2));
}

TEST_CASE("canonical keys") {
    auto wg = build_w_graph(parse_word("abAB", 2), {1, 1});
    auto comp = wg.graph.components();
    // the two 4-cycle components are isomorphic: build each as its own graph
    auto subgraph = [&](int c) {
        std::vector<int> vmap(wg.graph.num_vertices(), -1);
        int nv = 0;
        for (int v = 0; v < wg.graph.num_vertices(); ++v)
            if (comp[v] == c) vmap[v] = nv++;
        std::vector<GraphEdge> es;
        for (const auto& e : wg.graph.edges())
            if (comp[e.src] == c) es.push_back({vmap[e.src], vmap[e.dst], e.label});
        return MultiCoreGraph(nv, 2, std::move(es));
    };
    CHECK(subgraph(0).canonical_key() == subgraph(1).canonical_key());

    MultiCoreGraph b2(1, 2, {{0, 0, 1}, {0, 0, 2}});
    MultiCoreGraph b1(1, 2, {{0, 0, 1}});
    CHECK(b2.canonical_key() != b1.canonical_key());

    // relabeled copy
    MultiCoreGraph g1(2, 2, {{0, 1, 1}, {1, 0, 2}});
    MultiCoreGraph g2(2, 2, {{1, 0, 1}, {0, 1, 2}});
    CHECK(g1.canonical_key() == g2.canonical_key());
}

TEST_CASE("euler characteristic") {
    CHECK(build_w_graph(parse_word("abab", 2), {1}).graph.euler_char() == 0);
    MultiCoreGraph b2(1, 2, {{0, 0, 1}, {0, 0, 2}});
    CHECK(b2.euler_char() == -1);
}
