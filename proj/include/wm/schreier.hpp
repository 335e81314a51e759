#pragma once

#include "wreath.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <atomic>
#include <sstream>
#include <thread>

namespace wm {

enum class ActionKind { projection, signed_points, labeled_k_subsets };

struct ActionSpec {
    ActionKind kind = ActionKind::projection;
    int k = 1;  // only for labeled_k_subsets

    int stable_degree() const { return kind == ActionKind::labeled_k_subsets ? k : 1; }

    std::string name() const {
        switch (kind) {
            case ActionKind::projection: return "projection";
            case ActionKind::signed_points: return "signed_points";
            default: return "labeled_k_subsets";
        }
    }
};

// indexed point set of a rep-stable action together with the action map
class PointSet {
public:
    PointSet(const ActionSpec& spec, const GroupTable& G, int n) : spec_(spec), G_(&G), n_(n) {
        long long m = G.order();
        switch (spec.kind) {
            case ActionKind::projection: size_ = n; break;
            case ActionKind::signed_points: size_ = static_cast<long long>(n) * m; break;
            case ActionKind::labeled_k_subsets: {
                if (spec.k < 1 || spec.k > n)
                    throw std::invalid_argument("point set: bad subset size");
                long long c = 1;
                for (int i = 0; i < spec.k; ++i) c = c * (n - i) / (i + 1);
                long long lab = 1;
                for (int i = 0; i < spec.k; ++i) lab *= m;
                size_ = c * lab;
                // lex-ordered k-subsets
                std::vector<int> cur(spec.k);
                std::iota(cur.begin(), cur.end(), 0);
                while (true) {
                    subsetIndex_[cur] = static_cast<long long>(subsets_.size());
                    subsets_.push_back(cur);
                    int i = spec.k - 1;
                    while (i >= 0 && cur[i] == n - spec.k + i) --i;
                    if (i < 0) break;
                    ++cur[i];
                    for (int j = i + 1; j < spec.k; ++j) cur[j] = cur[j - 1] + 1;
                }
                break;
            }
        }
        if (size_ > 1000000) throw std::runtime_error("point set: size cap 1e6 exceeded");
    }

    long long size() const { return size_; }

    // projection: i -> sigma(i); signed: (i,g) -> (sigma(i), v(sigma(i))g);
    // subsets: (A,f) -> (sigma A, i -> v(i) f(sigma^-1 i))
    long long apply(const WreathElement& g, long long x) const {
        long long m = G_->order();
        switch (spec_.kind) {
            case ActionKind::projection: return g.sigma[x];
            case ActionKind::signed_points: {
                long long i = x / m, h = x % m;
                int j = g.sigma[i];
                return static_cast<long long>(j) * m + G_->mul(g.v[j], static_cast<int>(h));
            }
            default: {
                int k = spec_.k;
                long long lab = 1;
                for (int i = 0; i < k; ++i) lab *= m;
                long long si = x / lab, code = x % lab;
                const std::vector<int>& A = subsets_[si];
                std::vector<int> f(k);
                for (int i = k - 1; i >= 0; --i) {
                    f[i] = static_cast<int>(code % m);
                    code /= m;
                }
                // image subset with labels carried along, then resorted
                std::vector<std::pair<int, int>> img(k);
                for (int i = 0; i < k; ++i) img[i] = {g.sigma[A[i]], G_->mul(g.v[g.sigma[A[i]]], f[i])};
                std::sort(img.begin(), img.end());
                std::vector<int> B(k);
                long long newCode = 0;
                for (int i = 0; i < k; ++i) {
                    B[i] = img[i].first;
                    newCode = newCode * m + img[i].second;
                }
                return subsetIndex_.at(B) * lab + newCode;
            }
        }
    }

private:
    ActionSpec spec_;
    const GroupTable* G_;
    int n_;
    long long size_ = 0;
    std::vector<std::vector<int>> subsets_;
    std::map<std::vector<int>, long long> subsetIndex_;
};

struct SchreierGraph {
    long long X = 0;
    int r = 0;
    std::vector<std::vector<int>> images;  // per generator: x -> g_i(x)

    int degree() const { return 2 * r; }
};

inline SchreierGraph random_schreier(const ActionSpec& spec, const LoadedGroup& G, int n, int r,
                                     uint64_t seed) {
    PointSet pts(spec, G.table, n);
    SchreierGraph graph;
    graph.X = pts.size();
    graph.r = r;
    SplitMix64 rng = SplitMix64::stream(seed, 0);
    for (int i = 0; i < r; ++i) {
        WreathElement g = wreath_random(G.table, n, rng);
        std::vector<int> img(graph.X);
        std::vector<bool> hit(graph.X, false);
        for (long long x = 0; x < graph.X; ++x) {
            long long y = pts.apply(g, x);
            img[x] = static_cast<int>(y);
            if (hit[y]) throw std::logic_error("random_schreier: generator image not a bijection");
            hit[y] = true;
        }
        graph.images.push_back(std::move(img));
    }
    return graph;
}

struct SpectralReport {
    double mu = 0;
    double lambda2 = 0;
    double lambdaMin = 0;
    bool connected = true;
    bool trivialOnly = false;  // no nontrivial eigenvalue exists (one vertex per component)
    std::string method;
    double tolerance = 1e-8;
    int components = 1;
};

namespace detail {

inline std::vector<int> schreier_components(const SchreierGraph& g) {
    std::vector<int> parent(g.X);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& img : g.images)
        for (long long x = 0; x < g.X; ++x) {
            int a = find(static_cast<int>(x)), b = find(img[x]);
            if (a != b) parent[std::max(a, b)] = std::min(a, b);
        }
    std::vector<int> comp(g.X, -1);
    int next = 0;
    for (long long v = 0; v < g.X; ++v) {
        int root = find(static_cast<int>(v));
        if (comp[root] < 0) comp[root] = next++;
        comp[v] = comp[root];
    }
    return comp;
}

// y = A x via the generator arrays; a self-loop contributes 2
inline void schreier_matvec(const SchreierGraph& g, const std::vector<double>& x,
                            std::vector<double>& y) {
    std::fill(y.begin(), y.end(), 0.0);
    for (const auto& img : g.images)
        for (long long v = 0; v < g.X; ++v) {
            y[img[v]] += x[v];
            y[v] += x[img[v]];
        }
}

// largest eigenvalue of (shift I +/- A) restricted to the complement of per-component constants
inline double deflated_power_top(const SchreierGraph& g, const std::vector<int>& comp, double shift,
                                 double sign, double tol, int iterCap, bool& converged) {
    long long X = g.X;
    int nc = *std::max_element(comp.begin(), comp.end()) + 1;
    std::vector<double> compSize(nc, 0.0);
    for (long long v = 0; v < X; ++v) compSize[comp[v]] += 1.0;
    auto deflate = [&](std::vector<double>& x) {
        std::vector<double> mean(nc, 0.0);
        for (long long v = 0; v < X; ++v) mean[comp[v]] += x[v];
        for (int c = 0; c < nc; ++c) mean[c] /= compSize[c];
        for (long long v = 0; v < X; ++v) x[v] -= mean[comp[v]];
    };
    SplitMix64 rng(12345);
    std::vector<double> x(X), y(X);
    for (auto& v : x) v = rng.uniform01() - 0.5;
    deflate(x);
    double prev = 0;
    converged = false;
    for (int it = 0; it < iterCap; ++it) {
        schreier_matvec(g, x, y);
        for (long long v = 0; v < X; ++v) y[v] = shift * x[v] + sign * y[v];
        deflate(y);
        double norm = 0;
        for (double v : y) norm += v * v;
        norm = std::sqrt(norm);
        if (norm < 1e-300) {  // operator vanishes on the complement
            converged = true;
            return 0.0;
        }
        for (long long v = 0; v < X; ++v) x[v] = y[v] / norm;
        // Rayleigh quotient of the shifted operator
        schreier_matvec(g, x, y);
        double rq = 0;
        for (long long v = 0; v < X; ++v) rq += x[v] * (shift * x[v] + sign * y[v]);
        if (it > 0 && std::abs(rq - prev) < tol) {
            converged = true;
            return rq;
        }
        prev = rq;
    }
    return prev;
}

}  // namespace detail

inline SpectralReport adjacency_mu(const SchreierGraph& g) {
    SpectralReport rep;
    auto comp = detail::schreier_components(g);
    rep.components = g.X == 0 ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
    rep.connected = rep.components <= 1;
    double d = g.degree();
    if (g.X <= rep.components) {  // bouquets only: no nontrivial eigenvalue
        rep.trivialOnly = true;
        rep.mu = rep.lambda2 = 0;
        rep.lambdaMin = d;
        rep.method = "dense";
        return rep;
    }
    if (g.X <= 2000) {
        rep.method = "dense";
        Eigen::MatrixXd A = Eigen::MatrixXd::Zero(g.X, g.X);
        for (const auto& img : g.images)
            for (long long x = 0; x < g.X; ++x) {
                A(x, img[x]) += 1.0;
                A(img[x], x) += 1.0;
            }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(A, Eigen::EigenvaluesOnly);
        std::vector<double> ev(solver.eigenvalues().data(),
                               solver.eigenvalues().data() + g.X);
        std::sort(ev.begin(), ev.end(), std::greater<double>());
        // one trivial eigenvalue d per component (the per-component constants)
        rep.lambda2 = ev[rep.components];
        rep.lambdaMin = ev.back();
        rep.mu = std::max(rep.lambda2, -rep.lambdaMin);
    } else {
        rep.method = "iterative";
        bool conv1 = false, conv2 = false;
        // lambda2 via top of (dI + A), lambdaMin via top of (dI - A), both deflated
        double top1 = detail::deflated_power_top(g, comp, d, 1.0, rep.tolerance, 100000, conv1);
        double top2 = detail::deflated_power_top(g, comp, d, -1.0, rep.tolerance, 100000, conv2);
        if (!conv1 || !conv2)
            throw std::runtime_error("adjacency_mu: power iteration did not converge");
        rep.lambda2 = top1 - d;
        rep.lambdaMin = d - top2;
        rep.mu = std::max(rep.lambda2, -rep.lambdaMin);
    }
    return rep;
}

// largest nontrivial |eigenvalue| of the non-backtracking operator; small sizes only
inline double hashimoto_nu(const SchreierGraph& g, double* allTrivialFlag = nullptr) {
    long long E = 2LL * g.r * g.X;  // directed edges
    if (E > 4000) throw std::runtime_error("hashimoto_nu: size cap exceeded");
    // directed edge ids: generator i forward at x -> 2(i*X + x), backward -> +1
    auto src = [&](long long e) {
        long long ix = e / 2;
        return e % 2 == 0 ? ix % g.X : g.images[ix / g.X][ix % g.X];
    };
    auto trg = [&](long long e) {
        long long ix = e / 2;
        return e % 2 == 0 ? static_cast<long long>(g.images[ix / g.X][ix % g.X]) : ix % g.X;
    };
    Eigen::MatrixXd B = Eigen::MatrixXd::Zero(E, E);
    for (long long e = 0; e < E; ++e)
        for (long long f = 0; f < E; ++f) {
            if (trg(e) != src(f)) continue;
            if ((e ^ 1) == f) continue;  // reversal
            B(e, f) = 1.0;
        }
    Eigen::EigenSolver<Eigen::MatrixXd> solver(B);
    double d = g.degree();
    double nu = 0;
    bool sawNontrivial = false;
    for (long long i = 0; i < E; ++i) {
        std::complex<double> ev = solver.eigenvalues()(i);
        if (std::abs(ev - std::complex<double>(1, 0)) < 1e-6) continue;
        if (std::abs(ev - std::complex<double>(d - 1, 0)) < 1e-6) continue;
        sawNontrivial = true;
        nu = std::max(nu, std::abs(ev));
    }
    if (allTrivialFlag) *allTrivialFlag = sawNontrivial ? 0.0 : 1.0;
    return nu;
}

inline double alon_bound(int r) {
    if (r < 2) throw std::invalid_argument("alon_bound: r >= 2 required");
    return 2.0 * std::sqrt(2.0 * r - 1.0);
}

inline double thm_bound(int r, int k) {
    if (r < 2) throw std::invalid_argument("thm_bound: r >= 2 required");
    double d = 2.0 * r - 1.0;
    double e = std::exp(1.0);
    return 2.0 * std::sqrt(d) * std::exp(2.0 * k * k / (e * e * d));
}

struct ExperimentRow {
    std::string action, group;
    int n = 0, r = 0, k = 0, trial = 0;
    uint64_t seed = 0;
    long long X = 0;
    bool connected = true;
    double mu = 0, alon = 0, bound = 0;
    bool pass = false;
};

struct ExperimentResult {
    std::vector<ExperimentRow> rows;
    double pass_rate = 0;

    std::string csv() const {
        std::ostringstream os;
        os << "action,G,n,r,k,trial,seed,X_size,connected,mu,alon_bound,thm_bound,pass\n";
        os.precision(12);
        for (const auto& row : rows)
            os << row.action << "," << row.group << "," << row.n << "," << row.r << "," << row.k
               << "," << row.trial << "," << row.seed << "," << row.X << ","
               << (row.connected ? 1 : 0) << "," << row.mu << "," << row.alon << "," << row.bound
               << "," << (row.pass ? 1 : 0) << "\n";
        return os.str();
    }
};

inline ExperimentResult run_experiment(const ActionSpec& spec, const LoadedGroup& G,
                                       const std::vector<int>& nList, int r, int trials,
                                       uint64_t seed, int threads = 1) {
    ExperimentResult res;
    std::vector<std::pair<int, int>> jobs;  // (n, trial)
    for (int n : nList)
        for (int t = 0; t < trials; ++t) jobs.push_back({n, t});
    res.rows.resize(jobs.size());
    auto runJob = [&](size_t j) {
        auto [n, t] = jobs[j];
        uint64_t trialSeed = SplitMix64::stream(seed, j + 1).next();
        SchreierGraph graph = random_schreier(spec, G, n, r, trialSeed);
        SpectralReport sp = adjacency_mu(graph);
        ExperimentRow row;
        row.action = spec.name();
        row.group = G.table.name();
        row.n = n;
        row.r = r;
        row.k = spec.stable_degree();
        row.trial = t;
        row.seed = trialSeed;
        row.X = graph.X;
        row.connected = sp.connected;
        row.mu = sp.mu;
        row.alon = alon_bound(r);
        row.bound = thm_bound(r, row.k);
        row.pass = sp.mu <= row.bound;
        res.rows[j] = std::move(row);
    };
    if (threads > 1) {
        std::vector<std::thread> pool;
        std::atomic<size_t> next{0};
        for (int i = 0; i < threads; ++i)
            pool.emplace_back([&] {
                for (size_t j = next++; j < jobs.size(); j = next++) runJob(j);
            });
        for (auto& th : pool) th.join();
    } else {
        for (size_t j = 0; j < jobs.size(); ++j) runJob(j);
    }
    size_t passed = 0;
    for (const auto& row : res.rows)
        if (row.pass) ++passed;
    res.pass_rate = res.rows.empty() ? 0.0 : static_cast<double>(passed) / res.rows.size();
    return res;
}

}  // namespace wm
