#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "steiner_ecc/error.hpp"

namespace steiner_ecc {

using Vertex = int;
using Edge = std::pair<Vertex, Vertex>;

// A path in a host tree, stored as the ordered vertex sequence.
// Length is counted in edges: m(P) = |vertices| - 1.
struct TreePath {
    std::vector<Vertex> vertices;

    int length() const { return static_cast<int>(vertices.size()) - 1; }
};

namespace detail {

inline void check_edges(int n, const std::vector<Edge>& edges,
                        std::vector<std::vector<Vertex>>& adj) {
    adj.assign(static_cast<std::size_t>(n), {});
    for (const auto& [u, v] : edges) {
        if (u < 0 || u >= n || v < 0 || v >= n)
            fail(errc::vertex_out_of_range,
                 "edge endpoint out of range: (" + std::to_string(u) + "," +
                     std::to_string(v) + ") with n=" + std::to_string(n));
        if (u == v)
            fail(errc::self_loop, "self-loop at vertex " + std::to_string(u));
        adj[static_cast<std::size_t>(u)].push_back(v);
        adj[static_cast<std::size_t>(v)].push_back(u);
    }
    for (auto& nbrs : adj) {
        std::sort(nbrs.begin(), nbrs.end());
        if (std::adjacent_find(nbrs.begin(), nbrs.end()) != nbrs.end())
            fail(errc::duplicate_edge, "duplicate edge in input");
    }
}

inline bool connected(int n, const std::vector<std::vector<Vertex>>& adj) {
    if (n == 0) return false;
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::vector<Vertex> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
        Vertex v = stack.back();
        stack.pop_back();
        for (Vertex w : adj[static_cast<std::size_t>(v)]) {
            if (!seen[static_cast<std::size_t>(w)]) {
                seen[static_cast<std::size_t>(w)] = 1;
                ++count;
                stack.push_back(w);
            }
        }
    }
    return count == n;
}

}  // namespace detail

// Small simple connected graph; only used by the 3-terminal Steiner oracle.
class Graph {
public:
    static Graph from_edge_list(int n, const std::vector<Edge>& edges) {
        if (n < 1) fail(errc::invalid_parameters, "graph needs n >= 1");
        Graph g;
        g.n_ = n;
        detail::check_edges(n, edges, g.adj_);
        if (!detail::connected(n, g.adj_))
            fail(errc::disconnected, "graph is not connected");
        return g;
    }

    int n() const { return n_; }
    const std::vector<Vertex>& neighbors(Vertex v) const {
        return adj_[static_cast<std::size_t>(v)];
    }
    std::vector<Edge> edges() const {
        std::vector<Edge> out;
        for (Vertex u = 0; u < n_; ++u)
            for (Vertex v : adj_[static_cast<std::size_t>(u)])
                if (u < v) out.emplace_back(u, v);
        return out;
    }

    std::vector<int> distances_from(Vertex s) const {
        std::vector<int> dist(static_cast<std::size_t>(n_), -1);
        std::vector<Vertex> queue{s};
        dist[static_cast<std::size_t>(s)] = 0;
        for (std::size_t i = 0; i < queue.size(); ++i) {
            Vertex v = queue[i];
            for (Vertex w : adj_[static_cast<std::size_t>(v)]) {
                if (dist[static_cast<std::size_t>(w)] < 0) {
                    dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(v)] + 1;
                    queue.push_back(w);
                }
            }
        }
        return dist;
    }

private:
    int n_ = 0;
    std::vector<std::vector<Vertex>> adj_;
};

// Immutable tree on n vertices with 0-based dense ids and sorted adjacency.
// All operations below are pure; a Tree never mutates after construction.
class Tree {
public:
    static Tree from_edge_list(int n, const std::vector<Edge>& edges) {
        if (n < 1) fail(errc::invalid_parameters, "tree needs n >= 1");
        Tree t;
        t.n_ = n;
        if (static_cast<int>(edges.size()) != n - 1)
            fail(errc::wrong_edge_count,
                 "tree on " + std::to_string(n) + " vertices needs " +
                     std::to_string(n - 1) + " edges, got " + std::to_string(edges.size()));
        detail::check_edges(n, edges, t.adj_);
        if (!detail::connected(n, t.adj_))
            fail(errc::disconnected, "edge set does not form a connected tree");
        return t;
    }

    int n() const { return n_; }
    int degree(Vertex v) const {
        check_vertex(v);
        return static_cast<int>(adj_[static_cast<std::size_t>(v)].size());
    }
    const std::vector<Vertex>& neighbors(Vertex v) const {
        check_vertex(v);
        return adj_[static_cast<std::size_t>(v)];
    }

    std::vector<Edge> edges() const {
        std::vector<Edge> out;
        out.reserve(static_cast<std::size_t>(n_ > 0 ? n_ - 1 : 0));
        for (Vertex u = 0; u < n_; ++u)
            for (Vertex v : adj_[static_cast<std::size_t>(u)])
                if (u < v) out.emplace_back(u, v);
        return out;
    }

    std::vector<Vertex> leaves() const {
        std::vector<Vertex> out;
        for (Vertex v = 0; v < n_; ++v)
            if (n_ > 1 && degree(v) == 1) out.push_back(v);
        return out;
    }

    int leaf_count() const { return static_cast<int>(leaves().size()); }

    int max_degree() const {
        int d = 0;
        for (Vertex v = 0; v < n_; ++v) d = std::max(d, degree(v));
        return d;
    }

    bool has_edge(Vertex u, Vertex v) const {
        const auto& nbrs = neighbors(u);
        return std::binary_search(nbrs.begin(), nbrs.end(), v);
    }

    std::vector<int> distances_from(Vertex s) const {
        check_vertex(s);
        std::vector<int> dist(static_cast<std::size_t>(n_), -1);
        std::vector<Vertex> queue{s};
        dist[static_cast<std::size_t>(s)] = 0;
        for (std::size_t i = 0; i < queue.size(); ++i) {
            Vertex v = queue[i];
            for (Vertex w : adj_[static_cast<std::size_t>(v)]) {
                if (dist[static_cast<std::size_t>(w)] < 0) {
                    dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(v)] + 1;
                    queue.push_back(w);
                }
            }
        }
        return dist;
    }

    friend bool operator==(const Tree& a, const Tree& b) {
        return a.n_ == b.n_ && a.adj_ == b.adj_;
    }

private:
    void check_vertex(Vertex v) const {
        if (v < 0 || v >= n_)
            fail(errc::vertex_out_of_range, "vertex id " + std::to_string(v) +
                                                " out of range for n=" + std::to_string(n_));
    }

    int n_ = 0;
    std::vector<std::vector<Vertex>> adj_;
};

inline int distance(const Tree& t, Vertex u, Vertex v) {
    (void)t.neighbors(v);  // id validation
    return t.distances_from(u)[static_cast<std::size_t>(v)];
}

// Longest path starting at v, ties broken by smallest-neighbor-id DFS order:
// children are scanned in ascending id order and the first deepest child wins.
inline std::pair<int, TreePath> longest_path_from(const Tree& t, Vertex v) {
    const int n = t.n();
    (void)t.neighbors(v);  // id validation
    std::vector<int> depth(static_cast<std::size_t>(n), 0);
    std::vector<Vertex> best_child(static_cast<std::size_t>(n), -1);
    std::vector<Vertex> parent(static_cast<std::size_t>(n), -1);
    // post-order over the tree rooted at v
    std::vector<Vertex> order;
    order.reserve(static_cast<std::size_t>(n));
    std::vector<Vertex> stack{v};
    parent[static_cast<std::size_t>(v)] = v;
    while (!stack.empty()) {
        Vertex x = stack.back();
        stack.pop_back();
        order.push_back(x);
        for (Vertex y : t.neighbors(x)) {
            if (y != parent[static_cast<std::size_t>(x)]) {
                parent[static_cast<std::size_t>(y)] = x;
                stack.push_back(y);
            }
        }
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        Vertex x = *it;
        for (Vertex y : t.neighbors(x)) {
            if (parent[static_cast<std::size_t>(y)] != x) continue;
            int d = depth[static_cast<std::size_t>(y)] + 1;
            if (d > depth[static_cast<std::size_t>(x)]) {
                depth[static_cast<std::size_t>(x)] = d;
                best_child[static_cast<std::size_t>(x)] = y;
            }
        }
    }
    TreePath path;
    Vertex x = v;
    path.vertices.push_back(x);
    while (best_child[static_cast<std::size_t>(x)] != -1) {
        x = best_child[static_cast<std::size_t>(x)];
        path.vertices.push_back(x);
    }
    return {depth[static_cast<std::size_t>(v)], path};
}

inline void validate_path(const Tree& t, const TreePath& p) {
    if (p.vertices.empty()) fail(errc::not_a_path, "empty vertex sequence");
    std::vector<char> seen(static_cast<std::size_t>(t.n()), 0);
    for (std::size_t i = 0; i < p.vertices.size(); ++i) {
        Vertex v = p.vertices[i];
        if (v < 0 || v >= t.n()) fail(errc::vertex_out_of_range, "path vertex out of range");
        if (seen[static_cast<std::size_t>(v)]) fail(errc::not_a_path, "repeated path vertex");
        seen[static_cast<std::size_t>(v)] = 1;
        if (i > 0 && !t.has_edge(p.vertices[i - 1], v))
            fail(errc::not_a_path, "consecutive path vertices not adjacent");
    }
}

// ecc_T(P): farthest vertex from the path, via multi-source BFS from all path
// vertices. Equivalent to contracting P to a point and taking a longest path.
inline std::pair<int, Vertex> path_eccentricity(const Tree& t, const TreePath& p) {
    validate_path(t, p);
    std::vector<int> dist(static_cast<std::size_t>(t.n()), -1);
    std::vector<Vertex> queue;
    for (Vertex v : p.vertices) {
        dist[static_cast<std::size_t>(v)] = 0;
        queue.push_back(v);
    }
    for (std::size_t i = 0; i < queue.size(); ++i) {
        Vertex v = queue[i];
        for (Vertex w : t.neighbors(v)) {
            if (dist[static_cast<std::size_t>(w)] < 0) {
                dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(v)] + 1;
                queue.push_back(w);
            }
        }
    }
    int best = 0;
    Vertex witness = p.vertices.front();
    for (Vertex v = 0; v < t.n(); ++v) {
        if (dist[static_cast<std::size_t>(v)] > best) {
            best = dist[static_cast<std::size_t>(v)];
            witness = v;
        }
    }
    return {best, witness};
}

struct CenterInfo {
    int diameter = 0;
    int radius = 0;
    std::vector<Vertex> center;
};

inline CenterInfo diameter_radius_center(const Tree& t) {
    CenterInfo info;
    const int n = t.n();
    std::vector<int> ecc(static_cast<std::size_t>(n), 0);
    for (Vertex v = 0; v < n; ++v) {
        auto dist = t.distances_from(v);
        ecc[static_cast<std::size_t>(v)] = *std::max_element(dist.begin(), dist.end());
    }
    info.diameter = *std::max_element(ecc.begin(), ecc.end());
    info.radius = *std::min_element(ecc.begin(), ecc.end());
    for (Vertex v = 0; v < n; ++v)
        if (ecc[static_cast<std::size_t>(v)] == info.radius) info.center.push_back(v);
    return info;
}

// Maximum matching by processing vertices leaf-inward (exact on trees).
inline int matching_number(const Tree& t) {
    const int n = t.n();
    if (n == 1) return 0;
    std::vector<Vertex> order;
    std::vector<Vertex> parent(static_cast<std::size_t>(n), -1);
    std::vector<Vertex> stack{0};
    parent[0] = 0;
    while (!stack.empty()) {
        Vertex x = stack.back();
        stack.pop_back();
        order.push_back(x);
        for (Vertex y : t.neighbors(x)) {
            if (parent[static_cast<std::size_t>(y)] == -1) {
                parent[static_cast<std::size_t>(y)] = x;
                stack.push_back(y);
            }
        }
    }
    std::vector<char> matched(static_cast<std::size_t>(n), 0);
    int count = 0;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        Vertex v = *it;
        if (v == 0) continue;
        Vertex p = parent[static_cast<std::size_t>(v)];
        if (!matched[static_cast<std::size_t>(v)] && !matched[static_cast<std::size_t>(p)]) {
            matched[static_cast<std::size_t>(v)] = matched[static_cast<std::size_t>(p)] = 1;
            ++count;
        }
    }
    return count;
}

// Maximum independent set by rooted DP; cross-checked against the Konig
// identity alpha + nu = n, which is exact on trees.
inline int independence_number(const Tree& t) {
    const int n = t.n();
    if (n == 1) return 1;
    std::vector<Vertex> order;
    std::vector<Vertex> parent(static_cast<std::size_t>(n), -1);
    std::vector<Vertex> stack{0};
    parent[0] = 0;
    while (!stack.empty()) {
        Vertex x = stack.back();
        stack.pop_back();
        order.push_back(x);
        for (Vertex y : t.neighbors(x)) {
            if (parent[static_cast<std::size_t>(y)] == -1) {
                parent[static_cast<std::size_t>(y)] = x;
                stack.push_back(y);
            }
        }
    }
    std::vector<int> take(static_cast<std::size_t>(n), 1);
    std::vector<int> skip(static_cast<std::size_t>(n), 0);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        Vertex v = *it;
        if (v == 0) continue;
        Vertex p = parent[static_cast<std::size_t>(v)];
        take[static_cast<std::size_t>(p)] += skip[static_cast<std::size_t>(v)];
        skip[static_cast<std::size_t>(p)] +=
            std::max(take[static_cast<std::size_t>(v)], skip[static_cast<std::size_t>(v)]);
    }
    int alpha = std::max(take[0], skip[0]);
    if (alpha + matching_number(t) != n)
        fail(errc::invalid_parameters, "internal: Konig identity violated on a tree");
    return alpha;
}

inline Tree prufer_decode(const std::vector<int>& seq, int n) {
    if (n != static_cast<int>(seq.size()) + 2)
        fail(errc::invalid_parameters, "prufer sequence length must be n-2");
    for (int x : seq)
        if (x < 0 || x >= n) fail(errc::vertex_out_of_range, "prufer entry out of range");
    std::vector<int> deg(static_cast<std::size_t>(n), 1);
    for (int x : seq) ++deg[static_cast<std::size_t>(x)];
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(n - 1));
    int ptr = 0;
    while (deg[static_cast<std::size_t>(ptr)] != 1) ++ptr;
    int leaf = ptr;
    for (int x : seq) {
        edges.emplace_back(leaf, x);
        if (--deg[static_cast<std::size_t>(x)] == 1 && x < ptr) {
            leaf = x;
        } else {
            ++ptr;
            while (deg[static_cast<std::size_t>(ptr)] != 1) ++ptr;
            leaf = ptr;
        }
    }
    edges.emplace_back(leaf, n - 1);
    return Tree::from_edge_list(n, edges);
}

inline std::vector<int> prufer_encode(const Tree& t) {
    const int n = t.n();
    if (n < 2) fail(errc::invalid_parameters, "prufer encoding needs n >= 2");
    std::vector<int> deg(static_cast<std::size_t>(n));
    for (Vertex v = 0; v < n; ++v) deg[static_cast<std::size_t>(v)] = t.degree(v);
    std::vector<char> removed(static_cast<std::size_t>(n), 0);
    std::vector<int> seq;
    seq.reserve(static_cast<std::size_t>(n - 2));
    int ptr = 0;
    while (deg[static_cast<std::size_t>(ptr)] != 1) ++ptr;
    int leaf = ptr;
    for (int i = 0; i < n - 2; ++i) {
        removed[static_cast<std::size_t>(leaf)] = 1;
        int next = -1;
        for (Vertex w : t.neighbors(leaf))
            if (!removed[static_cast<std::size_t>(w)]) next = w;
        seq.push_back(next);
        if (--deg[static_cast<std::size_t>(next)] == 1 && next < ptr) {
            leaf = next;
        } else {
            ++ptr;
            while (deg[static_cast<std::size_t>(ptr)] != 1 ||
                   removed[static_cast<std::size_t>(ptr)])
                ++ptr;
            leaf = ptr;
        }
    }
    return seq;
}

namespace detail {

// Unbiased bounded sample so generated corpora are identical across platforms
// (std::uniform_int_distribution is implementation-defined).
inline std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % n;
}

}  // namespace detail

inline Tree random_tree(int n, std::uint64_t seed) {
    if (n < 1) fail(errc::invalid_parameters, "random_tree needs n >= 1");
    if (n == 1) return Tree::from_edge_list(1, {});
    if (n == 2) return Tree::from_edge_list(2, {{0, 1}});
    std::mt19937_64 rng(seed);
    std::vector<int> seq(static_cast<std::size_t>(n - 2));
    for (int& x : seq) x = static_cast<int>(detail::bounded(rng, static_cast<std::uint64_t>(n)));
    return prufer_decode(seq, n);
}

// AHU canonical form rooted at the tree center; equal strings iff isomorphic.
inline std::string canonical_form(const Tree& t) {
    const int n = t.n();
    if (n == 1) return "()";
    auto encode_rooted = [&](Vertex root) {
        std::vector<Vertex> order;
        std::vector<Vertex> parent(static_cast<std::size_t>(n), -1);
        std::vector<Vertex> stack{root};
        parent[static_cast<std::size_t>(root)] = root;
        while (!stack.empty()) {
            Vertex x = stack.back();
            stack.pop_back();
            order.push_back(x);
            for (Vertex y : t.neighbors(x)) {
                if (parent[static_cast<std::size_t>(y)] == -1) {
                    parent[static_cast<std::size_t>(y)] = x;
                    stack.push_back(y);
                }
            }
        }
        std::vector<std::string> code(static_cast<std::size_t>(n));
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            Vertex v = *it;
            std::vector<std::string> child_codes;
            for (Vertex w : t.neighbors(v))
                if (parent[static_cast<std::size_t>(w)] == v)
                    child_codes.push_back(code[static_cast<std::size_t>(w)]);
            std::sort(child_codes.begin(), child_codes.end());
            std::string s = "(";
            for (const auto& c : child_codes) s += c;
            s += ")";
            code[static_cast<std::size_t>(v)] = std::move(s);
        }
        return code[static_cast<std::size_t>(root)];
    };
    auto info = diameter_radius_center(t);
    std::vector<std::string> forms;
    for (Vertex c : info.center) forms.push_back(encode_rooted(c));
    std::sort(forms.begin(), forms.end());
    return forms.front();
}

inline bool isomorphic(const Tree& a, const Tree& b) {
    return a.n() == b.n() && canonical_form(a) == canonical_form(b);
}

}  // namespace steiner_ecc
