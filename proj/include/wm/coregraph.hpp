#pragma once

#include "word.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <queue>
#include <set>

namespace wm {

struct GraphEdge {
    int src = 0, dst = 0, label = 1;  // label in 1..r
};

// step of a directed edge walk: edge index + direction (true = along the edge)
struct PathStep {
    int edge = 0;
    bool forward = true;
    friend bool operator==(const PathStep& a, const PathStep& b) {
        return a.edge == b.edge && a.forward == b.forward;
    }
};

// folded B-labeled graph, disjoint union of core graphs
class MultiCoreGraph {
public:
    MultiCoreGraph() {}
    MultiCoreGraph(int numVertices, int rank, std::vector<GraphEdge> edges)
        : V_(numVertices), r_(rank), edges_(std::move(edges)) {
        build_index();
    }

    int num_vertices() const { return V_; }
    int num_edges() const { return static_cast<int>(edges_.size()); }
    int rank_labels() const { return r_; }
    const std::vector<GraphEdge>& edges() const { return edges_; }
    const GraphEdge& edge(int i) const { return edges_[i]; }

    // edge index or -1
    int out_edge(int v, int label) const { return out_[v * r_ + label - 1]; }
    int in_edge(int v, int label) const { return in_[v * r_ + label - 1]; }

    bool is_folded() const {
        std::set<std::pair<int, int>> outs, ins;
        for (const auto& e : edges_) {
            if (!outs.insert({e.src, e.label}).second) return false;
            if (!ins.insert({e.dst, e.label}).second) return false;
        }
        return true;
    }

    bool is_leafless() const {
        std::vector<int> deg(V_, 0);
        for (const auto& e : edges_) {
            deg[e.src]++;
            deg[e.dst]++;  // loop counts 2
        }
        for (int d : deg)
            if (d < 2) return false;
        return true;
    }

    int euler_char() const { return V_ - num_edges(); }

    int edges_with_label(int label) const {
        int c = 0;
        for (const auto& e : edges_)
            if (e.label == label) ++c;
        return c;
    }

    // component id per vertex, numbered by smallest contained vertex order
    std::vector<int> components() const {
        std::vector<int> parent(V_);
        std::iota(parent.begin(), parent.end(), 0);
        std::function<int(int)> find = [&](int x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        for (const auto& e : edges_) {
            int a = find(e.src), b = find(e.dst);
            if (a != b) parent[std::max(a, b)] = std::min(a, b);
        }
        std::vector<int> comp(V_, -1);
        int next = 0;
        for (int v = 0; v < V_; ++v) {
            int root = find(v);
            if (comp[root] < 0) comp[root] = next++;
            comp[v] = comp[root];
        }
        return comp;
    }

    int num_components() const {
        auto c = components();
        return c.empty() ? 0 : *std::max_element(c.begin(), c.end()) + 1;
    }

    // label-respecting canonical form; equal keys iff isomorphic over the bouquet
    std::string canonical_key() const {
        auto comp = components();
        int nc = num_components();
        std::vector<std::string> keys(nc);
        for (int c = 0; c < nc; ++c) {
            std::string best;
            for (int start = 0; start < V_; ++start) {
                if (comp[start] != c) continue;
                std::string k = bfs_key(start);
                if (best.empty() || k < best) best = std::move(k);
            }
            keys[c] = std::move(best);
        }
        std::sort(keys.begin(), keys.end());
        std::string out;
        for (auto& k : keys) out += k + "|";
        return out;
    }

    std::string dump() const {
        std::string s;
        for (const auto& e : edges_)
            s += std::to_string(e.src) + " --" + std::to_string(e.label) + "--> " +
                 std::to_string(e.dst) + "\n";
        return s;
    }

private:
    void build_index() {
        out_.assign(static_cast<size_t>(V_) * r_, -1);
        in_.assign(static_cast<size_t>(V_) * r_, -1);
        for (size_t i = 0; i < edges_.size(); ++i) {
            const auto& e = edges_[i];
            out_[e.src * r_ + e.label - 1] = static_cast<int>(i);
            in_[e.dst * r_ + e.label - 1] = static_cast<int>(i);
        }
    }

    std::string bfs_key(int start) const {
        std::vector<int> id(V_, -1);
        std::vector<int> order;
        id[start] = 0;
        order.push_back(start);
        std::queue<int> q;
        q.push(start);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int l = 1; l <= r_; ++l) {
                for (int dir = 0; dir < 2; ++dir) {
                    int ei = dir == 0 ? out_edge(v, l) : in_edge(v, l);
                    if (ei < 0) continue;
                    int u = dir == 0 ? edges_[ei].dst : edges_[ei].src;
                    if (id[u] < 0) {
                        id[u] = static_cast<int>(order.size());
                        order.push_back(u);
                        q.push(u);
                    }
                }
            }
        }
        std::string k;
        for (int v : order) {
            for (int l = 1; l <= r_; ++l) {
                int eo = out_edge(v, l), ei = in_edge(v, l);
                k += eo < 0 ? "." : std::to_string(id[edges_[eo].dst]);
                k += ",";
                k += ei < 0 ? "." : std::to_string(id[edges_[ei].src]);
                k += ";";
            }
            k += "/";
        }
        return k;
    }

    int V_ = 0, r_ = 0;
    std::vector<GraphEdge> edges_;
    std::vector<int> out_, in_;
};

struct MarkedPath {
    int root = 0;
    std::vector<PathStep> steps;
};

// disjoint cycles spelling w^{lambda_i}, with marked traversal paths
struct WGraph {
    MultiCoreGraph graph;
    std::vector<MarkedPath> cycles;
    std::vector<int> lambda;
    Word w;
};

inline WGraph build_w_graph(const Word& w, const std::vector<int>& lambda) {
    if (w.empty()) throw std::invalid_argument("build_w_graph: empty word");
    if (!is_cyclically_reduced(w))
        throw std::invalid_argument("build_w_graph: word not cyclically reduced");
    WGraph g;
    g.w = w;
    g.lambda = lambda;
    std::vector<GraphEdge> edges;
    int base = 0;
    int L = w.length();
    for (int part : lambda) {
        if (part < 1) throw std::invalid_argument("build_w_graph: bad partition part");
        int len = part * L;
        MarkedPath path;
        path.root = base;
        for (int t = 0; t < len; ++t) {
            int u = base + t, v = base + (t + 1) % len;
            int letter = w.letters[t % L];
            PathStep step;
            step.edge = static_cast<int>(edges.size());
            if (letter > 0) {
                edges.push_back({u, v, letter});
                step.forward = true;
            } else {
                edges.push_back({v, u, -letter});
                step.forward = false;
            }
            path.steps.push_back(step);
        }
        g.cycles.push_back(std::move(path));
        base += len;
    }
    g.graph = MultiCoreGraph(base, w.rank, std::move(edges));
    return g;
}

// fold-closed vertex partition of a WGraph together with its folded image
struct QuotientClass {
    std::vector<int> partition;          // block id per source vertex, blocks numbered by first occurrence
    MultiCoreGraph image;
    std::vector<MarkedPath> pathImages;  // per source cycle
    std::vector<int> vertexMap;          // source vertex -> image vertex (same as partition)
    std::vector<int> edgeMap;            // source edge -> image edge

    int rank() const { return 1 - image.euler_char(); }  // for a connected image

    std::string partition_key() const {
        std::string k;
        for (int b : partition) k += std::to_string(b) + ",";
        return k;
    }
};

namespace detail {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[std::max(a, b)] = std::min(a, b);
        return true;
    }
};

}  // namespace detail

// smallest fold-closed coarsening of the seed partition
inline QuotientClass fold_closure(const WGraph& g, const std::vector<int>& seed) {
    const auto& src = g.graph;
    detail::UnionFind uf(src.num_vertices());
    {
        std::map<int, int> firstOfBlock;
        for (int v = 0; v < src.num_vertices(); ++v) {
            auto it = firstOfBlock.find(seed[v]);
            if (it == firstOfBlock.end())
                firstOfBlock[seed[v]] = v;
            else
                uf.unite(it->second, v);
        }
    }
    bool changed = true;
    while (changed) {
        changed = false;
        std::map<std::pair<int, int>, int> bySrc, byDst;
        for (const auto& e : src.edges()) {
            auto ks = std::make_pair(e.label, uf.find(e.src));
            auto it = bySrc.find(ks);
            if (it == bySrc.end())
                bySrc[ks] = e.dst;
            else
                changed |= uf.unite(it->second, e.dst);
            auto kd = std::make_pair(e.label, uf.find(e.dst));
            auto jt = byDst.find(kd);
            if (jt == byDst.end())
                byDst[kd] = e.src;
            else
                changed |= uf.unite(jt->second, e.src);
        }
    }

    QuotientClass qc;
    qc.partition.assign(src.num_vertices(), -1);
    std::vector<int> blockOfRoot(src.num_vertices(), -1);
    int nextBlock = 0;
    for (int v = 0; v < src.num_vertices(); ++v) {
        int root = uf.find(v);
        if (blockOfRoot[root] < 0) blockOfRoot[root] = nextBlock++;
        qc.partition[v] = blockOfRoot[root];
    }
    qc.vertexMap = qc.partition;

    std::map<std::pair<int, int>, int> imageEdgeIndex;  // (label, src block) -> image edge
    std::vector<GraphEdge> imageEdges;
    qc.edgeMap.assign(src.num_edges(), -1);
    for (int i = 0; i < src.num_edges(); ++i) {
        const auto& e = src.edge(i);
        auto key = std::make_pair(e.label, qc.partition[e.src]);
        auto it = imageEdgeIndex.find(key);
        if (it == imageEdgeIndex.end()) {
            imageEdgeIndex[key] = static_cast<int>(imageEdges.size());
            qc.edgeMap[i] = static_cast<int>(imageEdges.size());
            imageEdges.push_back({qc.partition[e.src], qc.partition[e.dst], e.label});
        } else {
            qc.edgeMap[i] = it->second;
        }
    }
    qc.image = MultiCoreGraph(nextBlock, src.rank_labels(), std::move(imageEdges));

    for (const auto& cyc : g.cycles) {
        MarkedPath p;
        p.root = qc.partition[cyc.root];
        for (const auto& step : cyc.steps) p.steps.push_back({qc.edgeMap[step.edge], step.forward});
        qc.pathImages.push_back(std::move(p));
    }
    return qc;
}

inline std::vector<int> identity_partition(int n) {
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    return p;
}

// all fold-closed partitions, by BFS over single block merges + closure
inline std::vector<QuotientClass> enumerate_quotients(const WGraph& g, int vertexCap = 14) {
    int V = g.graph.num_vertices();
    if (V > vertexCap)
        throw std::runtime_error("enumerate_quotients: vertex cap exceeded (" + std::to_string(V) +
                                 " > " + std::to_string(vertexCap) + ")");
    std::map<std::string, QuotientClass> seen;
    std::queue<std::vector<int>> work;

    auto push = [&](const std::vector<int>& seed) {
        QuotientClass qc = fold_closure(g, seed);
        std::string key = qc.partition_key();
        if (seen.find(key) == seen.end()) {
            work.push(qc.partition);
            seen.emplace(std::move(key), std::move(qc));
        }
    };

    push(identity_partition(V));
    while (!work.empty()) {
        std::vector<int> part = std::move(work.front());
        work.pop();
        int blocks = part.empty() ? 0 : *std::max_element(part.begin(), part.end()) + 1;
        for (int b1 = 0; b1 < blocks; ++b1)
            for (int b2 = b1 + 1; b2 < blocks; ++b2) {
                std::vector<int> seed = part;
                for (int& x : seed)
                    if (x == b2) x = b1;
                push(seed);
            }
    }
    std::vector<QuotientClass> out;
    out.reserve(seen.size());
    for (auto& [k, qc] : seen) out.push_back(std::move(qc));
    return out;
}

// rewrite a closed walk in the image over a spanning-tree free basis of its component;
// generators are indexed by the excess (non-tree) edges in edge-index order
struct ComponentBasis {
    std::vector<int> treeEdges;    // edge indices in the tree
    std::vector<int> excessEdges;  // generator i <-> excessEdges[i]
    std::vector<int> genOfEdge;    // edge index -> generator index or -1
    int component = 0;
    int rank = 0;
};

inline ComponentBasis spanning_tree_basis(const MultiCoreGraph& image, int componentId) {
    auto comp = image.components();
    ComponentBasis cb;
    cb.component = componentId;
    cb.genOfEdge.assign(image.num_edges(), -1);
    std::vector<bool> visited(image.num_vertices(), false);
    int start = -1;
    for (int v = 0; v < image.num_vertices(); ++v)
        if (comp[v] == componentId) {
            start = v;
            break;
        }
    if (start < 0) throw std::invalid_argument("spanning_tree_basis: no such component");
    std::vector<bool> inTree(image.num_edges(), false);
    visited[start] = true;
    std::queue<int> q;
    q.push(start);
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (int l = 1; l <= image.rank_labels(); ++l)
            for (int dir = 0; dir < 2; ++dir) {
                int ei = dir == 0 ? image.out_edge(v, l) : image.in_edge(v, l);
                if (ei < 0) continue;
                int u = dir == 0 ? image.edge(ei).dst : image.edge(ei).src;
                if (!visited[u]) {
                    visited[u] = true;
                    inTree[ei] = true;
                    cb.treeEdges.push_back(ei);
                    q.push(u);
                }
            }
    }
    for (int ei = 0; ei < image.num_edges(); ++ei) {
        if (comp[image.edge(ei).src] != componentId) continue;
        if (!inTree[ei]) {
            cb.genOfEdge[ei] = static_cast<int>(cb.excessEdges.size());
            cb.excessEdges.push_back(ei);
        }
    }
    cb.rank = static_cast<int>(cb.excessEdges.size());
    return cb;
}

// path word of a closed walk over the spanning-tree basis (tree edges vanish)
inline Word path_word(const ComponentBasis& cb, const MarkedPath& path) {
    std::vector<int> letters;
    for (const auto& step : path.steps) {
        int g = cb.genOfEdge[step.edge];
        if (g < 0) continue;
        letters.push_back(step.forward ? g + 1 : -(g + 1));
    }
    Word w;
    w.rank = std::max(cb.rank, 1);
    w.letters = free_reduce(letters);
    return w;
}

// brute-force oracle: all vertex partitions, keep the fold-closed ones
inline std::vector<QuotientClass> enumerate_quotients_bruteforce(const WGraph& g) {
    int V = g.graph.num_vertices();
    std::map<std::string, QuotientClass> seen;
    // enumerate set partitions in restricted growth form
    std::vector<int> rg(V, 0);
    std::function<void(int, int)> rec = [&](int i, int maxUsed) {
        if (i == V) {
            QuotientClass qc = fold_closure(g, rg);
            if (qc.partition == rg) seen.emplace(qc.partition_key(), std::move(qc));
            return;
        }
        for (int b = 0; b <= maxUsed + 1 && b < V; ++b) {
            rg[i] = b;
            rec(i + 1, std::max(maxUsed, b));
        }
    };
    if (V > 0) rec(1, 0);  // rg[0] = 0 fixed
    std::vector<QuotientClass> out;
    for (auto& [k, qc] : seen) out.push_back(std::move(qc));
    return out;
}

}  // namespace wm
