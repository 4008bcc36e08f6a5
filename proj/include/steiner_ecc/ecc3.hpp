#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <thread>
#include <vector>

#include "steiner_ecc/error.hpp"
#include "steiner_ecc/rational.hpp"
#include "steiner_ecc/steiner.hpp"
#include "steiner_ecc/tree.hpp"

namespace steiner_ecc {

// Neighbor scan order for longest-path tie-breaking. The ecc3 value is
// tie-independent; only witnesses may change between the two orders.
enum class TieOrder { ascending, descending };

struct Ecc3Result {
    std::vector<int> per_vertex;
    std::vector<std::array<Vertex, 3>> witnesses;  // (v, x, y); empty unless requested
    std::int64_t sum = 0;
    Rational average;
};

namespace detail {

// Per-thread work arrays reused across vertices. The per-vertex pass is
// memory-bound, so randomly indexed state is held in just two arrays (depth,
// reused as the dist-to-path array, plus a visit-epoch array); parents ride
// along in the BFS queue and everything else is scanned sequentially.
struct Ecc3Scratch {
    std::vector<int> depth;  // subtree depth in phase one, dist-to-path after
    std::vector<std::uint16_t> seen;
    std::uint16_t epoch = 0;
    std::vector<Vertex> qv;  // BFS queue, vertices
    std::vector<Vertex> qp;  // BFS queue, matching parents
    std::vector<Vertex> path;
    // flat adjacency (CSR) of the tree over BFS-relabeled ids: adjacent
    // vertices get nearby labels, so the per-vertex sweeps stay cache-local;
    // contiguous neighbor scans also beat chasing one heap block per vertex
    std::vector<std::uint32_t> adj_off;
    std::vector<Vertex> adj;
    std::vector<Vertex> label;    // original id -> internal label
    std::vector<Vertex> original; // internal label -> original id

    void init(const Tree& t) {
        const int n = t.n();
        const auto sz = static_cast<std::size_t>(n);
        depth.resize(sz);
        seen.assign(sz, 0);
        epoch = 0;
        qv.reserve(sz);
        qp.reserve(sz);
        path.reserve(sz);

        label.assign(sz, -1);
        original.clear();
        original.reserve(sz);
        label[0] = 0;
        original.push_back(0);
        for (std::size_t i = 0; i < original.size(); ++i) {
            for (Vertex y : t.neighbors(original[i])) {
                if (label[static_cast<std::size_t>(y)] == -1) {
                    label[static_cast<std::size_t>(y)] = static_cast<Vertex>(original.size());
                    original.push_back(y);
                }
            }
        }

        adj_off.assign(sz + 1, 0);
        adj.clear();
        adj.reserve(2 * sz);
        for (Vertex v = 0; v < n; ++v) {
            adj_off[static_cast<std::size_t>(v)] = static_cast<std::uint32_t>(adj.size());
            for (Vertex y : t.neighbors(original[static_cast<std::size_t>(v)]))
                adj.push_back(label[static_cast<std::size_t>(y)]);
        }
        adj_off[sz] = static_cast<std::uint32_t>(adj.size());
    }
};

// Longest path from v with a deterministic tie-break: among equally deep
// children, ascending order follows the smallest-id child, descending the
// largest. Leaves s.path holding the path vertices, v first.
inline std::uint16_t next_epoch(Ecc3Scratch& s) {
    if (++s.epoch == 0) {  // wrapped: clear stale marks once per 65536 calls
        std::fill(s.seen.begin(), s.seen.end(), 0);
        s.epoch = 1;
    }
    return s.epoch;
}

inline int longest_path_scratch(const Tree& t, Vertex v, TieOrder order, Ecc3Scratch& s) {
    (void)t;
    const std::uint16_t cur = next_epoch(s);
    s.qv.assign(1, v);
    s.qp.assign(1, v);
    s.seen[static_cast<std::size_t>(v)] = cur;
    s.depth[static_cast<std::size_t>(v)] = 0;
    for (std::size_t i = 0; i < s.qv.size(); ++i) {
        Vertex x = s.qv[i];
        for (std::size_t j = s.adj_off[static_cast<std::size_t>(x)],
                         e = s.adj_off[static_cast<std::size_t>(x) + 1];
             j < e; ++j) {
            Vertex y = s.adj[j];
            if (s.seen[static_cast<std::size_t>(y)] != cur) {
                s.seen[static_cast<std::size_t>(y)] = cur;
                s.depth[static_cast<std::size_t>(y)] = 0;
                s.qv.push_back(y);
                s.qp.push_back(x);
            }
        }
    }
    // reverse BFS order: a vertex's depth is final before its parent is read
    for (std::size_t i = s.qv.size(); i-- > 1;) {
        int d = s.depth[static_cast<std::size_t>(s.qv[i])] + 1;
        if (d > s.depth[static_cast<std::size_t>(s.qp[i])])
            s.depth[static_cast<std::size_t>(s.qp[i])] = d;
    }
    // walk down the depth gradient; the parent side never matches the wanted
    // depth, so only the chosen neighbor order decides ties
    s.path.clear();
    Vertex x = v;
    Vertex prev = v;
    s.path.push_back(x);
    while (s.depth[static_cast<std::size_t>(x)] > 0) {
        const int want = s.depth[static_cast<std::size_t>(x)] - 1;
        Vertex next = -1;
        for (std::size_t j = s.adj_off[static_cast<std::size_t>(x)],
                         e = s.adj_off[static_cast<std::size_t>(x) + 1];
             j < e; ++j) {
            Vertex y = s.adj[j];
            if (y == prev || s.depth[static_cast<std::size_t>(y)] != want) continue;
            next = y;
            if (order == TieOrder::ascending) break;  // first hit = smallest id
        }
        prev = x;
        x = next;
        s.path.push_back(x);
    }
    return s.depth[static_cast<std::size_t>(v)];
}

inline std::pair<int, std::array<Vertex, 3>> ecc3_fast_scratch(const Tree& t, Vertex v,
                                                               TieOrder order, Ecc3Scratch& s) {
    const int n = t.n();
    const Vertex vi = s.label[static_cast<std::size_t>(v)];
    int len = longest_path_scratch(t, vi, order, s);
    Vertex x = s.path.back();

    // multi-source BFS from the path; depth doubles as the dist array
    const std::uint16_t cur = next_epoch(s);
    s.qv.clear();
    for (Vertex p : s.path) {
        s.depth[static_cast<std::size_t>(p)] = 0;
        s.seen[static_cast<std::size_t>(p)] = cur;
        s.qv.push_back(p);
    }
    int off = 0;
    for (std::size_t i = 0; i < s.qv.size(); ++i) {
        Vertex a = s.qv[i];
        int da = s.depth[static_cast<std::size_t>(a)];
        off = da;  // BFS order is non-decreasing in distance
        for (std::size_t j = s.adj_off[static_cast<std::size_t>(a)],
                         e = s.adj_off[static_cast<std::size_t>(a) + 1];
             j < e; ++j) {
            Vertex b = s.adj[j];
            if (s.seen[static_cast<std::size_t>(b)] != cur) {
                s.seen[static_cast<std::size_t>(b)] = cur;
                s.depth[static_cast<std::size_t>(b)] = da + 1;
                s.qv.push_back(b);
            }
        }
    }
    Vertex y = -1;
    for (Vertex u = 0; u < n; ++u) {
        if (s.depth[static_cast<std::size_t>(u)] == off && u != vi && u != x) {
            y = u;
            break;
        }
    }
    return {len + off,
            {v, s.original[static_cast<std::size_t>(x)],
             y >= 0 ? s.original[static_cast<std::size_t>(y)] : static_cast<Vertex>(-1)}};
}

}  // namespace detail

// ecc3(v) = ecc2(v) + ecc_T(P), where P is the deterministic longest path
// from v: the longest path fixes two terminals, the farthest vertex from P
// is the third.
inline std::pair<int, std::array<Vertex, 3>> ecc3_fast(const Tree& t, Vertex v,
                                                       TieOrder order = TieOrder::ascending) {
    const int n = t.n();
    if (n < 3) fail(errc::k_out_of_range, "ecc3 needs n >= 3");
    (void)t.neighbors(v);  // id validation
    detail::Ecc3Scratch scratch;
    scratch.init(t);
    return detail::ecc3_fast_scratch(t, v, order, scratch);
}

inline Ecc3Result aecc3_fast(const Tree& t, bool with_witnesses = false, int threads = 1) {
    const int n = t.n();
    if (n < 3) fail(errc::k_out_of_range, "aecc3 needs n >= 3");
    Ecc3Result result;
    result.per_vertex.assign(static_cast<std::size_t>(n), 0);
    if (with_witnesses) result.witnesses.assign(static_cast<std::size_t>(n), {-1, -1, -1});

    auto run_range = [&](Vertex lo, Vertex hi) {
        detail::Ecc3Scratch scratch;
        scratch.init(t);
        for (Vertex v = lo; v < hi; ++v) {
            auto [val, wit] = detail::ecc3_fast_scratch(t, v, TieOrder::ascending, scratch);
            result.per_vertex[static_cast<std::size_t>(v)] = val;
            if (with_witnesses) result.witnesses[static_cast<std::size_t>(v)] = wit;
        }
    };

    if (threads <= 1 || n < 256) {
        run_range(0, n);
    } else {
        // fixed per-thread slices keep the output identical to sequential
        int nthreads = std::min(threads, n);
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(nthreads));
        for (int i = 0; i < nthreads; ++i) {
            Vertex lo = static_cast<Vertex>(static_cast<std::int64_t>(n) * i / nthreads);
            Vertex hi = static_cast<Vertex>(static_cast<std::int64_t>(n) * (i + 1) / nthreads);
            pool.emplace_back(run_range, lo, hi);
        }
        for (auto& th : pool) th.join();
    }

    for (int x : result.per_vertex) result.sum += x;
    result.average = Rational(result.sum, n);
    return result;
}

}  // namespace steiner_ecc
