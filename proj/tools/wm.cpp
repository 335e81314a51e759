// wm: word measures on wreath products G wr S_n
//
// subcommands: expect, inner, pirank, crit, verify, basis, quotients, oracle, schreier
// exit codes: 0 ok, 1 usage, 2 computation error, 3 verification failure

#include <CLI11.hpp>

#include <wm/fnparse.hpp>
#include <wm/measure.hpp>
#include <wm/schreier.hpp>

#include <fstream>
#include <iostream>
#include <thread>

using namespace wm;

namespace {

struct RunConfig {
    std::string word;
    std::string group = "trivial";
    std::string fn;
    std::string fn2;
    std::string lam;    // partition literal for quotients, e.g. "[2,1]"
    std::string action = "signed";
    std::string method = "exact";
    std::string out;
    int rank = 0;  // 0: infer from the word's letters
    int K = 6;
    int phi = -1;
    int degree = 3;
    int r = 4;
    int k = 1;
    int trials = 20;
    long long samples = 10000;
    uint64_t seed = 1;
    int threads = 0;  // 0: hardware concurrency
    bool csv = false;
    bool perturb = false;  // test hook: force a verification failure
    std::vector<int> evalNs;
    std::vector<long long> caps;  // [vertexCap, budget]
};

// the rational function matches every finite n from ||lambda|| times the largest
// per-letter multiplicity of the (power-reduced) word; below that it can have poles
int sharp_valid_from(const Word& w, const StableFunction& f, const LoadedGroup& G) {
    Word core = cyclic_reduce(w).first;
    auto [u, k] = power_decompose(core);
    std::map<int, int> counts;
    for (int l : u.letters) counts[std::abs(l)]++;
    int mult = 0;
    for (const auto& [b, c] : counts) mult = std::max(mult, c);
    int deg = 0;
    for (const auto& [lam, c] : to_sInd_basis(G, f).sTerms)
        deg = std::max(deg, lam.total_size() * k);
    return std::max(1, deg * mult);
}

int infer_rank(const std::string& text) {
    int r = 1;
    for (char c : text) {
        if (c >= 'a' && c <= 'z') r = std::max(r, c - 'a' + 1);
        if (c >= 'A' && c <= 'Z') r = std::max(r, c - 'A' + 1);
    }
    return r;
}

EngineOptions engine_opts(const RunConfig& cfg) {
    EngineOptions opts;
    if (!cfg.caps.empty()) {
        if (cfg.caps[0] <= 0) throw std::invalid_argument("caps must be positive");
        opts.vertexCap = static_cast<int>(cfg.caps[0]);
    }
    if (cfg.caps.size() > 1) {
        if (cfg.caps[1] <= 0) throw std::invalid_argument("caps must be positive");
        opts.budget = cfg.caps[1];
    }
    opts.threads = cfg.threads > 0
                       ? cfg.threads
                       : std::max(1u, std::thread::hardware_concurrency());
    return opts;
}

Word get_word(const RunConfig& cfg) {
    if (cfg.word.empty()) throw std::invalid_argument("empty word");
    return parse_word(cfg.word, cfg.rank > 0 ? cfg.rank : infer_rank(cfg.word));
}

void emit(const RunConfig& cfg, const std::string& text) {
    std::string payload = text;
    if (payload.empty() || payload.back() != '\n') payload += '\n';
    if (cfg.out.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream f(cfg.out);
    if (!f) throw std::runtime_error("cannot write output file: " + cfg.out);
    f << payload;
}

void emit(const RunConfig& cfg, const json& j) { emit(cfg, j.dump(2)); }

json cyclo_out(const CycloNumber& x) {
    return json{{"value", cyclo_to_json(x)}, {"text", x.to_string()}};
}

json ratfn_out(const RationalFunction& f) {
    json j = ratfn_to_json(f);
    j["text"] = f.to_string();
    return j;
}

json laurent_out(const LaurentSeries& s) {
    json terms = json::array();
    if (!s.zero)
        for (int p = 0; p <= s.K; ++p)
            terms.push_back(json{{"order", s.leadOrder - p}, {"coeff", cyclo_out(s.coeffs[p])}});
    return json{{"zero", s.zero}, {"lead_order", s.zero ? 0 : s.leadOrder},
                {"truncation", s.K}, {"terms", terms}};
}

LaurentSeries expand(const RationalFunction& f, int K) {
    int lead = f.is_zero() ? 0 : f.num().degree() - f.den().degree();
    return laurent_expand(f, K + std::max(0, lead));
}

json graph_out(const MultiCoreGraph& g) {
    json edges = json::array();
    for (const auto& e : g.edges())
        edges.push_back(json{{"src", e.src}, {"dst", e.dst}, {"label", e.label}});
    return json{{"num_vertices", g.num_vertices()}, {"edges", edges}};
}

json word_out(const Word& w) { return json{{"text", w.to_string()}, {"rank", w.rank}}; }

std::vector<int> parse_partition(const std::string& text) {
    std::vector<int> parts;
    size_t pos = 0;
    auto skip = [&] {
        while (pos < text.size() && (std::isspace(static_cast<unsigned char>(text[pos]))))
            ++pos;
    };
    skip();
    if (pos >= text.size() || text[pos] != '[')
        throw std::invalid_argument("partition: expected a literal like [2,1]");
    ++pos;
    skip();
    while (pos < text.size() && text[pos] != ']') {
        int v = 0;
        if (!std::isdigit(static_cast<unsigned char>(text[pos])))
            throw std::invalid_argument("partition: expected an integer part");
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
            v = v * 10 + (text[pos++] - '0');
        if (v < 1) throw std::invalid_argument("partition: parts must be positive");
        parts.push_back(v);
        skip();
        if (pos < text.size() && text[pos] == ',') {
            ++pos;
            skip();
        }
    }
    if (pos >= text.size()) throw std::invalid_argument("partition: missing ']'");
    return parts;
}

ActionSpec parse_action(const RunConfig& cfg) {
    if (cfg.action == "projection") return ActionSpec{ActionKind::projection};
    if (cfg.action == "signed") return ActionSpec{ActionKind::signed_points};
    if (cfg.action == "subsets") return ActionSpec{ActionKind::labeled_k_subsets, cfg.k};
    throw std::invalid_argument("unknown action: " + cfg.action +
                                " (expected projection, signed, or subsets)");
}

int cmd_expect(const RunConfig& cfg) {
    auto G = load_group(cfg.group);
    Word w = get_word(cfg);
    StableFunction f = parse_stable_function(cfg.fn, *G);
    EngineOptions opts = engine_opts(cfg);
    ExpectationResult res = expect_stable(w, f, *G, opts);
    json out{{"word", word_out(w)},
             {"group", G->table.name()},
             {"fn", cfg.fn},
             {"value", ratfn_out(res.value)},
             {"valid_from", res.validFrom},
             {"quotient_count", res.quotientCount},
             {"laurent", laurent_out(expand(res.value, cfg.K))}};
    if (!cfg.evalNs.empty()) {
        json evals = json::array();
        for (int n : cfg.evalNs) {
            json row{{"n", n}};
            try {
                row["value"] = cyclo_out(res.value.evaluate_at(CycloNumber(n)));
            } catch (const std::domain_error&) {
                row["error"] = "pole";
            }
            evals.push_back(std::move(row));
        }
        out["eval"] = std::move(evals);
    }
    emit(cfg, out);
    return 0;
}

int cmd_inner(const RunConfig& cfg) {
    auto G = load_group(cfg.group);
    StableFunction f = parse_stable_function(cfg.fn, *G);
    StableFunction h = parse_stable_function(cfg.fn2.empty() ? "1" : cfg.fn2, *G);
    CycloNumber v = stable_inner(f, h, *G, engine_opts(cfg));
    emit(cfg, json{{"group", G->table.name()},
                   {"f", cfg.fn},
                   {"g", cfg.fn2.empty() ? "1" : cfg.fn2},
                   {"inner", cyclo_out(v)}});
    return 0;
}

json crit_report_out(const CritReport& rep, bool full) {
    json out;
    if (rep.pi == PI_INFINITY)
        out["pi"] = "inf";
    else
        out["pi"] = rep.pi;
    out["crit_count"] = rep.critical.size();
    if (rep.phiIndex >= 0) out["phi"] = rep.phiIndex;
    if (full) {
        json crit = json::array();
        for (const auto& e : rep.critical)
            crit.push_back(json{{"rank", e.rank},
                                {"word_in_basis", word_out(e.wordInBasis)},
                                {"expectation", cyclo_out(e.expectation)},
                                {"partition", e.quotient.partition},
                                {"image", graph_out(e.quotient.image)}});
        out["critical"] = std::move(crit);
    }
    return out;
}

int cmd_pirank(const RunConfig& cfg, bool full) {
    Word w = get_word(cfg);
    Word core = cyclic_reduce(w).first;
    if (core.empty()) throw std::invalid_argument("word is trivial");
    EngineOptions opts = engine_opts(cfg);
    json out{{"word", word_out(w)}};
    if (cfg.phi >= 0) {
        auto G = load_group(cfg.group);
        CritReport rep = phi_rank(core, cfg.phi, *G, opts.vertexCap);
        out.update(crit_report_out(rep, full));
        CriticalValues cv = critical_values(core, cfg.phi, *G, opts.vertexCap);
        out["pi_phi"] = cv.pi_phi == PI_INFINITY ? json("inf") : json(cv.pi_phi);
        out["c_phi"] = cyclo_out(cv.c_phi);
        out["c_pi_phi"] = cyclo_out(cv.c_pi_phi);
    } else {
        out.update(crit_report_out(primitivity_rank(core, opts.vertexCap), full));
    }
    emit(cfg, out);
    return 0;
}

int cmd_verify(const RunConfig& cfg) {
    auto G = load_group(cfg.group);
    Word w = get_word(cfg);
    StableFunction f = parse_stable_function(cfg.fn, *G);
    EngineOptions opts = engine_opts(cfg);
    TheoremReport rep = verify_main_theorem(w, f, *G, cfg.K > 0 ? cfg.K : -1, opts);
    if (cfg.perturb) {
        int at = rep.predicted.pi == PI_INFINITY ? 0 : 1 - rep.predicted.pi;
        if (!rep.detail.empty()) rep.detail += "; ";
        rep.detail += "perturbed expected coefficient at order n^" + std::to_string(at) +
                      " does not match";
        rep.pass = false;
    }
    json out{{"word", word_out(w)},
             {"group", G->table.name()},
             {"fn", cfg.fn},
             {"pi", rep.predicted.pi == PI_INFINITY ? json("inf") : json(rep.predicted.pi)},
             {"c0", cyclo_out(rep.predicted.c0)},
             {"c_sub", cyclo_out(rep.predicted.c_sub)},
             {"value", ratfn_out(rep.expectation.value)},
             {"valid_from", rep.expectation.validFrom},
             {"laurent", laurent_out(rep.series)},
             {"detail", rep.detail}};
    bool pass = rep.pass;
    if (!cfg.evalNs.empty()) {
        // independent cross-check against the enumerating oracle
        int sharpFrom = sharp_valid_from(w, f, *G);
        out["sharp_valid_from"] = sharpFrom;
        json rows = json::array();
        for (int n : cfg.evalNs) {
            json row{{"n", n}};
            CycloNumber oracle = exact_expectation(w, f, *G, n, opts.budget);
            row["oracle"] = cyclo_out(oracle);
            if (n < sharpFrom) {
                row["skipped"] = "below the finite-n validity threshold";
            } else {
                CycloNumber engine = rep.expectation.value.evaluate_at(CycloNumber(n));
                row["engine"] = cyclo_out(engine);
                row["match"] = engine == oracle;
                if (!(engine == oracle)) pass = false;
            }
            rows.push_back(std::move(row));
        }
        out["oracle"] = std::move(rows);
    }
    out["pass"] = pass;
    emit(cfg, out);
    return pass ? 0 : 3;
}

int cmd_basis(const RunConfig& cfg) {
    auto G = load_group(cfg.group);
    json rows = json::array();
    for (const auto& lam : sInd_basis_up_to(*G, cfg.degree))
        rows.push_back(json{{"degree", lam.total_size()},
                            {"parts", lam.num_parts()},
                            {"fn", stable_to_string(StableFunction::sInd_monomial(lam))}});
    emit(cfg, json{{"group", G->table.name()}, {"max_degree", cfg.degree}, {"basis", rows}});
    return 0;
}

int cmd_quotients(const RunConfig& cfg) {
    Word w = cyclic_reduce(get_word(cfg)).first;
    if (w.empty()) throw std::invalid_argument("word is trivial");
    std::vector<int> lam = cfg.lam.empty() ? std::vector<int>{1} : parse_partition(cfg.lam);
    EngineOptions opts = engine_opts(cfg);
    WGraph wg = build_w_graph(w, lam);
    json rows = json::array();
    for (const auto& qc : enumerate_quotients(wg, opts.vertexCap)) {
        // L = (n)_{#V} / prod_b (n)_{#E_b}, the expected number of injective lifts
        Polynomial num = falling_factorial(qc.image.num_vertices());
        Polynomial den(CycloNumber(1));
        json edgeCounts = json::array();
        for (int b = 1; b <= w.rank; ++b) {
            int eb = qc.image.edges_with_label(b);
            edgeCounts.push_back(eb);
            den = den * falling_factorial(eb);
        }
        json paths = json::array();
        auto comps = qc.image.components();
        for (const auto& path : qc.pathImages) {
            auto basis = spanning_tree_basis(qc.image, comps[path.root]);
            paths.push_back(word_out(path_word(basis, path)));
        }
        rows.push_back(json{{"partition", qc.partition},
                            {"image", graph_out(qc.image)},
                            {"components", qc.image.num_components()},
                            {"edges_by_label", edgeCounts},
                            {"L", ratfn_out(RationalFunction(num, den))},
                            {"path_words", paths}});
    }
    emit(cfg, json{{"word", word_out(w)}, {"lambda", lam}, {"quotients", rows}});
    return 0;
}

int cmd_oracle(const RunConfig& cfg) {
    auto G = load_group(cfg.group);
    Word w = get_word(cfg);
    StableFunction f = parse_stable_function(cfg.fn, *G);
    EngineOptions opts = engine_opts(cfg);
    if (cfg.evalNs.empty()) throw std::invalid_argument("oracle: needs --eval n values");
    if (cfg.method != "exact" && cfg.method != "mc")
        throw std::invalid_argument("oracle: method must be exact or mc");

    json rows = json::array();
    std::ostringstream csv;
    csv << "word,group,n,f,method,value_re,value_im,stderr,samples,seed\n";
    csv << std::setprecision(12);
    for (int n : cfg.evalNs) {
        double re, im, se;
        long long samples;
        json row{{"word", w.to_string()}, {"group", G->table.name()},
                 {"n", n},               {"fn", cfg.fn},
                 {"method", cfg.method}};
        if (cfg.method == "exact") {
            CycloNumber v = exact_expectation(w, f, *G, n, opts.budget);
            auto z = v.to_float();
            re = z.real();
            im = z.imag();
            se = 0;
            samples = 0;
            row["value"] = cyclo_out(v);
        } else {
            McResult mc = mc_expectation(w, f, *G, n, cfg.samples, cfg.seed);
            re = mc.meanRe;
            im = mc.meanIm;
            se = std::max(mc.stderrRe, mc.stderrIm);
            samples = mc.samples;
            row["stderr_re"] = mc.stderrRe;
            row["stderr_im"] = mc.stderrIm;
        }
        row["value_re"] = re;
        row["value_im"] = im;
        rows.push_back(std::move(row));
        csv << w.to_string() << "," << G->table.name() << "," << n << "," << cfg.fn << ","
            << cfg.method << "," << re << "," << im << "," << se << "," << samples << ","
            << cfg.seed << "\n";
    }
    if (cfg.csv)
        emit(cfg, csv.str());
    else
        emit(cfg, json{{"rows", rows}, {"seed", cfg.seed}});
    return 0;
}

int cmd_schreier(const RunConfig& cfg) {
    auto G = load_group(cfg.group);
    if (cfg.evalNs.empty()) throw std::invalid_argument("schreier: needs --n values");
    ActionSpec spec = parse_action(cfg);
    EngineOptions opts = engine_opts(cfg);
    ExperimentResult res =
        run_experiment(spec, *G, cfg.evalNs, cfg.r, cfg.trials, cfg.seed, opts.threads);
    if (cfg.csv) {
        emit(cfg, res.csv());
        return 0;
    }
    json rows = json::array();
    for (const auto& row : res.rows)
        rows.push_back(json{{"action", spec.name()},
                            {"n", row.n},
                            {"trial", row.trial},
                            {"seed", row.seed},
                            {"X", row.X},
                            {"connected", row.connected},
                            {"mu", row.mu},
                            {"alon_bound", row.alon},
                            {"thm_bound", row.bound},
                            {"pass", row.pass}});
    emit(cfg, json{{"rows", rows}, {"pass_rate", res.pass_rate}});
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"word measures on wreath products G wr S_n"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto add_common = [&](CLI::App* sub, bool needsWord, bool needsFn, bool withRank = true) {
        auto* wordOpt = sub->add_option("-w,--word", cfg.word, "word in the free group");
        if (needsWord) wordOpt->required();
        if (withRank)
            sub->add_option("--rank", cfg.rank, "ambient free rank (default: inferred)");
        sub->add_option("-G,--group", cfg.group, "group: trivial, cyclicN, sym3, or a JSON file");
        auto* fnOpt = sub->add_option("-f,--fn", cfg.fn, "stable function, e.g. 'Ind(phi0)'");
        if (needsFn) fnOpt->required();
        sub->add_option("-K,--laurent", cfg.K, "Laurent truncation depth");
        sub->add_option("--eval", cfg.evalNs, "n values for pointwise evaluation");
        sub->add_option("--caps", cfg.caps, "vertex cap [and enumeration budget]")
            ->expected(1, 2);
        sub->add_option("--seed", cfg.seed, "random seed");
        sub->add_option("--threads", cfg.threads, "worker threads (default: all cores)");
        sub->add_option("--out", cfg.out, "write output to a file instead of stdout");
        sub->add_flag("--csv", cfg.csv, "CSV output for tabular subcommands");
        return sub;
    };

    int rc = 0;
    auto* sExpect = add_common(app.add_subcommand("expect", "exact E_w[f] as a function of n"),
                               true, true);
    sExpect->callback([&] { rc = cmd_expect(cfg); });

    auto* sInner = add_common(app.add_subcommand("inner", "stable inner product <f, g>"),
                              false, true);
    sInner->add_option("-g,--gn", cfg.fn2, "second stable function (default: 1)");
    sInner->callback([&] { rc = cmd_inner(cfg); });

    auto* sPirank = add_common(app.add_subcommand("pirank", "primitivity rank of a word"),
                               true, false);
    sPirank->add_option("--phi", cfg.phi, "character row for the phi-variant");
    sPirank->callback([&] { rc = cmd_pirank(cfg, false); });

    auto* sCrit = add_common(app.add_subcommand("crit", "critical subgroups of a word"),
                             true, false);
    sCrit->add_option("--phi", cfg.phi, "character row for the phi-variant");
    sCrit->callback([&] { rc = cmd_pirank(cfg, true); });

    auto* sVerify = add_common(
        app.add_subcommand("verify", "check the expansion theorem, optionally against the oracle"),
        true, true);
    sVerify->add_flag("--perturb", cfg.perturb, "perturb the prediction (forces a failure)");
    sVerify->callback([&] { rc = cmd_verify(cfg); });

    auto* sBasis = add_common(app.add_subcommand("basis", "list sInd basis monomials"),
                              false, false);
    sBasis->add_option("-d,--degree", cfg.degree, "maximum degree");
    sBasis->callback([&] { rc = cmd_basis(cfg); });

    auto* sQuot = add_common(app.add_subcommand("quotients", "fold-closed quotients of a w-graph"),
                             true, false);
    sQuot->add_option("--lam", cfg.lam, "cycle power partition, e.g. '[2,1]' (default [1])");
    sQuot->callback([&] { rc = cmd_quotients(cfg); });

    auto* sOracle = add_common(
        app.add_subcommand("oracle", "finite-n expectation by enumeration or sampling"),
        true, true);
    sOracle->add_option("--method", cfg.method, "exact or mc");
    sOracle->add_option("--samples", cfg.samples, "Monte Carlo sample count");
    sOracle->callback([&] { rc = cmd_oracle(cfg); });

    auto* sSchreier = add_common(
        app.add_subcommand("schreier", "spectral experiment on random Schreier graphs"),
        false, false, false);
    sSchreier->add_option("--action", cfg.action, "projection, signed, or subsets");
    sSchreier->add_option("--n", cfg.evalNs, "n values");
    sSchreier->add_option("--r", cfg.r, "number of random generators");
    sSchreier->add_option("--k", cfg.k, "subset size for the subsets action");
    sSchreier->add_option("--trials", cfg.trials, "trials per n");
    sSchreier->callback([&] { rc = cmd_schreier(cfg); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return rc;
}
