#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "steiner_ecc/error.hpp"
#include "steiner_ecc/rational.hpp"
#include "steiner_ecc/tree.hpp"

namespace steiner_ecc {

// Enumeration guard: oracles refuse to run past this many subsets rather
// than silently truncating.
inline constexpr std::uint64_t default_subset_cap = std::uint64_t{1} << 26;

// Vertex set of the unique minimal subtree spanning a terminal set.
struct SteinerSubtree {
    std::vector<Vertex> vertices;   // sorted
    std::vector<Vertex> terminals;  // sorted
};

// Per-vertex Steiner k-eccentricities with their exact average.
struct EccReport {
    int k = 0;
    std::vector<int> per_vertex;
    std::int64_t sum = 0;
    Rational average;
};

namespace detail {

inline EccReport make_report(int k, std::vector<int> per_vertex) {
    EccReport r;
    r.k = k;
    r.per_vertex = std::move(per_vertex);
    for (int x : r.per_vertex) r.sum += x;
    r.average = Rational(r.sum, static_cast<std::int64_t>(r.per_vertex.size()));
    return r;
}

// Reusable buffers for leaf pruning; one instance serves many subsets.
struct PruneScratch {
    std::vector<int> deg;
    std::vector<char> alive;
    std::vector<char> terminal;
    std::vector<Vertex> queue;
    std::vector<Vertex> touched;

    void init(const Tree& t) {
        const auto n = static_cast<std::size_t>(t.n());
        deg.resize(n);
        alive.assign(n, 1);
        terminal.assign(n, 0);
        queue.clear();
        touched.clear();
    }

    // Edge count of the minimal subtree spanning the marked terminals.
    // Repeatedly removes non-terminal leaves; what survives is the subtree.
    int prune(const Tree& t, const std::vector<Vertex>& terms,
              std::vector<Vertex>* subtree_vertices = nullptr) {
        const int n = t.n();
        for (Vertex v : terms) terminal[static_cast<std::size_t>(v)] = 1;
        for (Vertex v = 0; v < n; ++v) deg[static_cast<std::size_t>(v)] = t.degree(v);
        queue.clear();
        for (Vertex v = 0; v < n; ++v)
            if (deg[static_cast<std::size_t>(v)] <= 1 && !terminal[static_cast<std::size_t>(v)])
                queue.push_back(v);
        int alive_count = n;
        for (std::size_t i = 0; i < queue.size(); ++i) {
            Vertex x = queue[i];
            alive[static_cast<std::size_t>(x)] = 0;
            --alive_count;
            for (Vertex y : t.neighbors(x)) {
                if (!alive[static_cast<std::size_t>(y)]) continue;
                if (--deg[static_cast<std::size_t>(y)] == 1 &&
                    !terminal[static_cast<std::size_t>(y)])
                    queue.push_back(y);
            }
        }
        if (subtree_vertices) {
            subtree_vertices->clear();
            for (Vertex v = 0; v < n; ++v)
                if (alive[static_cast<std::size_t>(v)]) subtree_vertices->push_back(v);
        }
        // restore
        for (Vertex v : queue) alive[static_cast<std::size_t>(v)] = 1;
        for (Vertex v : terms) terminal[static_cast<std::size_t>(v)] = 0;
        return alive_count - 1;
    }
};

inline std::uint64_t binomial_capped(std::uint64_t n, std::uint64_t k, std::uint64_t cap) {
    if (k > n) return 0;
    std::uint64_t result = 1;
    for (std::uint64_t i = 0; i < k; ++i) {
        result = result * (n - i) / (i + 1);
        if (result > cap) return cap + 1;
    }
    return result;
}

}  // namespace detail

inline std::pair<int, SteinerSubtree> steiner_distance_tree(const Tree& t,
                                                            std::vector<Vertex> terminals) {
    if (terminals.empty()) fail(errc::empty_terminal_set, "Steiner distance of empty set");
    std::sort(terminals.begin(), terminals.end());
    terminals.erase(std::unique(terminals.begin(), terminals.end()), terminals.end());
    for (Vertex v : terminals) (void)t.neighbors(v);  // id validation
    detail::PruneScratch scratch;
    scratch.init(t);
    SteinerSubtree sub;
    sub.terminals = terminals;
    int dist = scratch.prune(t, terminals, &sub.vertices);
    return {dist, sub};
}

inline std::pair<int, std::vector<Vertex>> ecc_k_bruteforce(const Tree& t, Vertex v, int k) {
    const int n = t.n();
    (void)t.neighbors(v);
    if (k < 2 || k > n) fail(errc::k_out_of_range, "k must satisfy 2 <= k <= n");
    detail::PruneScratch scratch;
    scratch.init(t);

    std::vector<Vertex> others;
    for (Vertex u = 0; u < n; ++u)
        if (u != v) others.push_back(u);
    const int m = static_cast<int>(others.size());
    const int r = k - 1;

    std::vector<int> idx(static_cast<std::size_t>(r));
    for (int i = 0; i < r; ++i) idx[static_cast<std::size_t>(i)] = i;

    int best = -1;
    std::vector<Vertex> best_set;
    std::vector<Vertex> terms(static_cast<std::size_t>(k));
    for (;;) {
        for (int i = 0; i < r; ++i)
            terms[static_cast<std::size_t>(i)] = others[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])];
        terms[static_cast<std::size_t>(r)] = v;
        int d = scratch.prune(t, terms);
        if (d > best) {
            best = d;
            best_set = terms;
            std::sort(best_set.begin(), best_set.end());
        }
        // next lexicographic combination
        int i = r - 1;
        while (i >= 0 && idx[static_cast<std::size_t>(i)] == m - r + i) --i;
        if (i < 0) break;
        ++idx[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < r; ++j)
            idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
    return {best, best_set};
}

inline EccReport aecc_k_bruteforce(const Tree& t, int k,
                                   std::uint64_t max_subsets = default_subset_cap) {
    const int n = t.n();
    if (k < 2 || k > n) fail(errc::k_out_of_range, "k must satisfy 2 <= k <= n");
    std::uint64_t per_vertex_subsets = detail::binomial_capped(
        static_cast<std::uint64_t>(n - 1), static_cast<std::uint64_t>(k - 1), max_subsets);
    if (per_vertex_subsets * static_cast<std::uint64_t>(n) > max_subsets)
        fail(errc::subset_cap_exceeded, "brute-force subset count exceeds cap");

    std::vector<int> per_vertex(static_cast<std::size_t>(n));
    for (Vertex v = 0; v < n; ++v)
        per_vertex[static_cast<std::size_t>(v)] = ecc_k_bruteforce(t, v, k).first;
    return detail::make_report(k, std::move(per_vertex));
}

inline std::int64_t steiner_wiener(const Tree& t, int k,
                                   std::uint64_t max_subsets = default_subset_cap) {
    const int n = t.n();
    if (k < 2 || k > n) fail(errc::k_out_of_range, "k must satisfy 2 <= k <= n");
    if (detail::binomial_capped(static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(k),
                                max_subsets) > max_subsets)
        fail(errc::subset_cap_exceeded, "Steiner-Wiener subset count exceeds cap");

    detail::PruneScratch scratch;
    scratch.init(t);
    std::vector<int> idx(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
    std::int64_t total = 0;
    std::vector<Vertex> terms(static_cast<std::size_t>(k));
    for (;;) {
        for (int i = 0; i < k; ++i) terms[static_cast<std::size_t>(i)] = idx[static_cast<std::size_t>(i)];
        total += scratch.prune(t, terms);
        int i = k - 1;
        while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
        if (i < 0) break;
        ++idx[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j)
            idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
    return total;
}

// Optimal 3-terminal Steiner trees in unweighted graphs are spiders with a
// single branch vertex, so minimising over that vertex is exact.
inline int steiner3_distance_graph(const Graph& g, Vertex a, Vertex b, Vertex c) {
    auto da = g.distances_from(a);
    auto db = g.distances_from(b);
    auto dc = g.distances_from(c);
    int best = -1;
    for (Vertex x = 0; x < g.n(); ++x) {
        int s = da[static_cast<std::size_t>(x)] + db[static_cast<std::size_t>(x)] +
                dc[static_cast<std::size_t>(x)];
        if (best < 0 || s < best) best = s;
    }
    return best;
}

inline EccReport aecc3_graph_bruteforce(const Graph& g, int max_n = 64) {
    const int n = g.n();
    if (n < 3) fail(errc::k_out_of_range, "aecc3 needs n >= 3");
    if (n > max_n) fail(errc::subset_cap_exceeded, "graph oracle capped at n <= " + std::to_string(max_n));

    std::vector<std::vector<int>> dist(static_cast<std::size_t>(n));
    for (Vertex v = 0; v < n; ++v) dist[static_cast<std::size_t>(v)] = g.distances_from(v);

    std::vector<int> per_vertex(static_cast<std::size_t>(n), 0);
    for (Vertex v = 0; v < n; ++v) {
        int best = 0;
        for (Vertex b = 0; b < n; ++b) {
            if (b == v) continue;
            for (Vertex c = b + 1; c < n; ++c) {
                if (c == v) continue;
                int d = -1;
                for (Vertex x = 0; x < n; ++x) {
                    int s = dist[static_cast<std::size_t>(v)][static_cast<std::size_t>(x)] +
                            dist[static_cast<std::size_t>(b)][static_cast<std::size_t>(x)] +
                            dist[static_cast<std::size_t>(c)][static_cast<std::size_t>(x)];
                    if (d < 0 || s < d) d = s;
                }
                best = std::max(best, d);
            }
        }
        per_vertex[static_cast<std::size_t>(v)] = best;
    }
    return detail::make_report(3, std::move(per_vertex));
}

}  // namespace steiner_ecc
