// acceptance suite: one pass/fail line per criterion, nonzero exit on any failure

#include <wm/fnparse.hpp>
#include <wm/measure.hpp>
#include <wm/schreier.hpp>

#include <iostream>
#include <thread>

using namespace wm;

namespace {

int failures = 0;

void report(int num, const std::string& name, bool pass, const std::string& why = "") {
    std::cout << "criterion " << num << " (" << name << "): " << (pass ? "PASS" : "FAIL");
    if (!pass && !why.empty()) std::cout << " -- " << why;
    std::cout << std::endl;
    if (!pass) ++failures;
}

// cyclically reduced rank-2 words of length 1..maxLen, deduplicated up to
// cyclic rotation and inversion
std::vector<Word> word_classes(int maxLen, bool excludePowers) {
    std::set<std::vector<int>> canon;
    std::vector<Word> out;
    std::vector<int> letters{1, -1, 2, -2};
    std::vector<int> cur;
    std::function<void()> rec = [&] {
        if (!cur.empty() && cur.front() != -cur.back()) {
            Word w = make_word(cur, 2);
            if (!excludePowers || power_decompose(w).second == 1) {
                std::vector<int> best;
                for (int invert = 0; invert < 2; ++invert) {
                    std::vector<int> v = cur;
                    if (invert) {
                        std::reverse(v.begin(), v.end());
                        for (int& x : v) x = -x;
                    }
                    for (size_t s = 0; s < v.size(); ++s) {
                        std::rotate(v.begin(), v.begin() + 1, v.end());
                        if (best.empty() || v < best) best = v;
                    }
                }
                if (canon.insert(best).second) out.push_back(std::move(w));
            }
        }
        if (cur.size() == static_cast<size_t>(maxLen)) return;
        for (int l : letters) {
            if (!cur.empty() && cur.back() == -l) continue;
            cur.push_back(l);
            rec();
            cur.pop_back();
        }
    };
    rec();
    return out;
}

int max_letter_multiplicity(const Word& w) {
    std::map<int, int> counts;
    for (int l : w.letters) counts[std::abs(l)]++;
    int m = 0;
    for (const auto& [b, c] : counts) m = std::max(m, c);
    return m;
}

void criterion1() {
    struct Case {
        std::string group;
        int nCap;
    };
    // n with |G wr S_n|^2 <= 1e7
    std::vector<Case> cases{{"cyclic2", 4}, {"cyclic3", 4}, {"sym3", 3}};
    auto words = word_classes(4, true);
    long long checked = 0;
    for (const auto& cs : cases) {
        auto G = load_group(cs.group);
        for (const Word& w : words) {
            int mult = max_letter_multiplicity(w);
            for (const MultiPartition& lam : sInd_basis_up_to(*G, 2)) {
                // the rational function has genuine poles below this threshold
                int nMin = std::max(1, lam.total_size() * mult);
                if (nMin > cs.nCap) continue;
                ExpectationResult res = expect_sInd(w, lam, *G);
                StableFunction f = StableFunction::sInd_monomial(lam);
                for (int n = nMin; n <= cs.nCap; ++n) {
                    CycloNumber engine = res.value.evaluate_at(CycloNumber(n));
                    CycloNumber oracle = exact_expectation(w, f, *G, n);
                    ++checked;
                    if (!(engine == oracle)) {
                        report(1, "oracle exactness", false,
                               cs.group + " w=" + w.to_string() + " lam=" + lam.key() +
                                   " n=" + std::to_string(n) + ": engine " + engine.to_string() +
                                   " vs oracle " + oracle.to_string());
                        return;
                    }
                }
            }
        }
    }
    report(1, "oracle exactness", checked > 0,
           checked > 0 ? "" : "no comparisons were enumerable");
}

int infer_rank_hint(const std::string& text) {
    int r = 1;
    for (char c : text) {
        if (c >= 'a' && c <= 'z') r = std::max(r, c - 'a' + 1);
        if (c >= 'A' && c <= 'Z') r = std::max(r, c - 'A' + 1);
    }
    return r;
}

void criterion2() {
    auto G = load_group("trivial");
    struct Case {
        std::string w;
        int pi, crit;
    };
    for (const Case& cs : std::vector<Case>{{"abAB", 2, 1}, {"aabb", 2, 1}, {"aabbcc", 3, 1}}) {
        Word w = parse_word(cs.w, infer_rank_hint(cs.w));
        CritReport cr = primitivity_rank(w);
        if (cr.pi != cs.pi || static_cast<int>(cr.critical.size()) != cs.crit) {
            report(2, "fixed point expansion, trivial G", false,
                   cs.w + ": pi/crit " + std::to_string(cr.pi) + "/" +
                       std::to_string(cr.critical.size()));
            return;
        }
        ExpectationResult res =
            expect_sInd(w, MultiPartition::single(0, 1), *G);
        LaurentSeries s = laurent_expand(res.value, cs.pi + 2);
        bool ok = s.at_order(0) == CycloNumber(1);
        for (int o = -1; o > 1 - cs.pi; --o) ok = ok && s.at_order(o).is_zero();
        ok = ok && s.at_order(1 - cs.pi) == CycloNumber(cs.crit);
        ok = ok && (s.zero || s.leadOrder <= 0);
        if (!ok) {
            report(2, "fixed point expansion, trivial G", false,
                   cs.w + ": series " + res.value.to_string());
            return;
        }
    }
    report(2, "fixed point expansion, trivial G", true);
}

void criterion3() {
    auto G = load_group("cyclic2");
    for (const std::string& wt : {std::string("abAB"), std::string("aabb")}) {
        Word w = parse_word(wt, 2);
        for (const MultiPartition& lam : sInd_basis_up_to(*G, 3)) {
            TheoremReport rep =
                verify_main_theorem(w, StableFunction::sInd_monomial(lam), *G);
            if (!rep.pass) {
                report(3, "unified expansion theorem", false,
                       wt + " lam=" + lam.key() + ": " + rep.detail);
                return;
            }
        }
    }
    report(3, "unified expansion theorem", true);
}

void criterion4() {
    auto G = load_group("cyclic2");
    for (const std::string& wt : {std::string("abAB"), std::string("aabb")}) {
        Word w = parse_word(wt, 2);
        int pi = primitivity_rank(w).pi;
        for (int t = 2; t <= 3; ++t)
            for (int c = 0; c < G->table.num_classes(); ++c) {
                ExpectationResult res = expect_stable(
                    w, StableFunction::a_monomial(AMonomial::single(t, c)), *G);
                LaurentSeries s = laurent_expand(res.value, pi + 2);
                Rational expected(G->table.classes()[c].size(),
                                  static_cast<long long>(t) * G->table.order());
                bool ok = s.at_order(0) == CycloNumber(expected);
                for (int o = -1; o >= 1 - pi; --o) ok = ok && s.at_order(o).is_zero();
                ok = ok && (s.zero || s.leadOrder <= 0);
                if (!ok) {
                    report(4, "cycle counter limits", false,
                           wt + " a[" + std::to_string(t) + "," + std::to_string(c) +
                               "]: " + res.value.to_string());
                    return;
                }
            }
    }
    report(4, "cycle counter limits", true);
}

void criterion5() {
    auto G = load_group("cyclic2");
    for (const std::string& ut : {std::string("abAB"), std::string("ab")}) {
        for (int k = 2; k <= 3; ++k) {
            std::string wt;
            for (int i = 0; i < k; ++i) wt += "(" + ut + ")";
            Word u = parse_word(ut, 2);
            Word uk = parse_word(wt, 2);
            for (const MultiPartition& lam : sInd_basis_up_to(*G, 2)) {
                // independent sides: the u^k w-graph directly (no power reduction)
                // against the power-twisted computation on the u w-graph;
                // combos beyond the quotient vertex cap are skipped
                if (uk.length() * lam.total_size() > 14) continue;
                StableFunction f = StableFunction::sInd_monomial(lam);
                ExpectationResult lhs = expect_sInd(uk, lam, *G);
                ExpectationResult rhs = expect_stable(u, power_twist(f, k), *G);
                if (!(lhs.value == rhs.value)) {
                    report(5, "power identity", false,
                           ut + "^" + std::to_string(k) + " lam=" + lam.key());
                    return;
                }
                // and the public entry point takes the reduced path to the same value
                ExpectationResult pub = expect_stable(uk, f, *G);
                if (!(pub.value == rhs.value)) {
                    report(5, "power identity", false,
                           ut + "^" + std::to_string(k) + " lam=" + lam.key() + " (entry point)");
                    return;
                }
            }
        }
    }
    // single letter powers: the expectation is the constant <f^(k), 1>
    for (int k = 2; k <= 3; ++k) {
        Word bk = parse_word(std::string(k, 'a'), 1);
        for (const MultiPartition& lam : sInd_basis_up_to(*G, 2)) {
            StableFunction f = StableFunction::sInd_monomial(lam);
            ExpectationResult res = expect_stable(bk, f, *G);
            CycloNumber expected = inner_one(power_twist(f, k), *G);
            if (!res.value.is_constant() || !(res.value.constant_value() == expected)) {
                report(5, "power identity", false,
                       "b1^" + std::to_string(k) + " lam=" + lam.key());
                return;
            }
        }
    }
    report(5, "power identity", true);
}

void criterion6() {
    bool sawGap = false;
    for (const std::string& gname : {std::string("cyclic2"), std::string("trivial")}) {
        auto G = load_group(gname);
        StableFunction one = StableFunction::constant(CycloNumber(1));
        for (const MultiPartition& lam : sInd_basis_up_to(*G, 3)) {
            CycloNumber stable = stable_inner_one(lam, *G);
            StableFunction f = StableFunction::sInd_monomial(lam);
            for (int n = 1; n <= lam.total_size() + 2; ++n) {
                CycloNumber fin = finite_inner(f, one, *G, n);
                if (n >= lam.total_size()) {
                    if (!(fin == stable)) {
                        report(6, "inner product stabilization", false,
                               gname + " lam=" + lam.key() + " n=" + std::to_string(n));
                        return;
                    }
                } else if (!(fin == stable)) {
                    sawGap = true;
                }
            }
        }
    }
    report(6, "inner product stabilization", sawGap,
           sawGap ? "" : "no pre-stable value ever differed");
}

void criterion7() {
    // <(Ind 1)^2, Ind 1> over the trivial group: embedded sub-partition
    // contributions (1,1,1,2) summing to 5
    auto triv = load_group("trivial");
    MultiPartition lam;
    lam.parts[0] = {1, 1};
    std::multiset<std::string> contributions;
    CycloNumber total(0);
    detail::for_each_subpartition(lam, [&](const MultiPartition& tau, const MultiPartition& rest,
                                           const Rational& weight) {
        // phi trivial, G trivial: each embedded copy contributes <sInd(rest), 1>
        CycloNumber per = stable_inner_one(rest, *triv);
        long copies = static_cast<long>(rat_to_double(weight) + 0.5);
        for (long i = 0; i < copies; ++i) contributions.insert(per.to_string());
        total += CycloNumber(weight) * per;
    });
    bool ok = total == CycloNumber(5) &&
              contributions == std::multiset<std::string>{"1", "1", "1", "2"};
    if (!ok) {
        report(7, "worked inner product tables", false, "<(Ind 1)^2, Ind 1> != 1+1+1+2");
        return;
    }

    // cyclic2 table for Ind(1) * Ind(sgn)
    auto c2 = load_group("cyclic2");
    MultiPartition mixed;
    mixed.parts[0] = {1};
    mixed.parts[1] = {1};
    ok = stable_inner_indphi(mixed, 1, *c2) == CycloNumber(2) &&
         stable_inner_indphi(mixed, 0, *c2) == CycloNumber(0);
    if (!ok) {
        report(7, "worked inner product tables", false, "cyclic2 Ind(1)*Ind(sgn) table");
        return;
    }

    // sym3 table for (Ind std)^(2): the <., 1> column splits as 1 + 1
    auto s3 = load_group("sym3");
    int stdRow = -1;
    for (size_t i = 0; i < s3->chars.irreducibles.size(); ++i)
        if (s3->chars.irreducibles[i].at_element(s3->table.identity()) == CycloNumber(2))
            stdRow = static_cast<int>(i);
    if (stdRow < 0) {
        report(7, "worked inner product tables", false, "sym3 table has no degree-2 row");
        return;
    }
    MultiPartition std2 = MultiPartition::single(stdRow, 2);
    std::multiset<std::string> parts;
    CycloNumber colTotal(0);
    detail::for_each_subpartition(std2, [&](const MultiPartition& tau, const MultiPartition& rest,
                                            const Rational& weight) {
        CycloNumber tauVal(0);
        for (int g = 0; g < s3->table.order(); ++g) {
            CycloNumber prod(1);  // against the trivial character
            for (const auto& [p, sz] : tau.flat())
                prod *= s3->chars.irreducibles[p].at_element(s3->table.pow(g, sz));
            tauVal += prod;
        }
        tauVal *= CycloNumber(Rational(1, s3->table.order()));
        CycloNumber contrib = CycloNumber(weight) * tauVal * stable_inner_one(rest, *s3);
        if (!contrib.is_zero()) parts.insert(contrib.to_string());
        colTotal += contrib;
    });
    ok = stdRow >= 0 && colTotal == CycloNumber(2) &&
         parts == std::multiset<std::string>{"1", "1"};
    report(7, "worked inner product tables", ok,
           ok ? "" : "sym3 (Ind std)^(2) column");
}

void criterion8() {
    // every expectation from criteria 2-4: trivial-G fixed points, and all cyclic2
    // sInd monomials of degree <= 3 (the a[t,c] of criterion 4 expand into these)
    auto triv = load_group("trivial");
    for (const std::string& wt : {std::string("abAB"), std::string("aabb"),
                                  std::string("aabbcc")}) {
        Word w = parse_word(wt, infer_rank_hint(wt));
        int pi = primitivity_rank(w).pi;
        BoundReport rep = coefficient_bound_check(w, MultiPartition::single(0, 1), pi + 4, *triv);
        if (!rep.pass) {
            report(8, "coefficient bounds", false, "trivial G, w=" + wt);
            return;
        }
    }
    auto c2 = load_group("cyclic2");
    for (const std::string& wt : {std::string("abAB"), std::string("aabb")}) {
        Word w = parse_word(wt, 2);
        int pi = primitivity_rank(w).pi;
        for (const MultiPartition& lam : sInd_basis_up_to(*c2, 3)) {
            BoundReport rep = coefficient_bound_check(w, lam, pi + 4, *c2);
            if (!rep.pass) {
                report(8, "coefficient bounds", false, wt + " lam=" + lam.key());
                return;
            }
        }
    }
    report(8, "coefficient bounds", true);
}

void criterion9() {
    auto c2 = load_group("cyclic2");
    int threads = std::max(1u, std::thread::hardware_concurrency());
    ExperimentResult res = run_experiment(ActionSpec{ActionKind::signed_points}, *c2,
                                          {50, 100, 200}, 4, 20, 1, threads);
    bool muFloor = true;
    double floor = alon_bound(4) - 0.5;
    for (const auto& row : res.rows)
        if (row.n >= 100 && row.mu < floor) muFloor = false;
    bool ok = res.pass_rate >= 0.95 && muFloor;
    report(9, "schreier spectral experiment", ok,
           ok ? "" : "pass_rate " + std::to_string(res.pass_rate) +
                     (muFloor ? "" : ", mu below the Alon floor"));
}

void criterion10() {
    std::vector<std::vector<int>> lambdas{{1}, {2}, {1, 1}};
    for (const Word& w : word_classes(4, false)) {
        for (const auto& lam : lambdas) {
            int total = 0;
            for (int x : lam) total += x;
            if (w.length() * total > 8) continue;
            WGraph wg = build_w_graph(w, lam);
            std::set<std::string> fast, brute;
            for (const auto& qc : enumerate_quotients(wg)) fast.insert(qc.partition_key());
            for (const auto& qc : enumerate_quotients_bruteforce(wg))
                brute.insert(qc.partition_key());
            if (fast != brute) {
                report(10, "quotient lattice vs brute force", false,
                       "w=" + w.to_string() + " sizes=" + std::to_string(lam.size()));
                return;
            }
        }
    }
    report(10, "quotient lattice vs brute force", true);
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    criterion10();
    return failures == 0 ? 0 : 1;
}
