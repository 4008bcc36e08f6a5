#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "steiner_ecc/ecc3.hpp"
#include "steiner_ecc/error.hpp"
#include "steiner_ecc/rational.hpp"
#include "steiner_ecc/tree.hpp"

namespace steiner_ecc {

// Decomposition (u, w, T0, T1, P) witnessing applicability of the
// pi-transformation: u and w adjacent, T0 the u-side component of T - uw,
// P a pendent path hanging at w with m(P) < ecc2(u, T0), and T1 the
// remaining branches at w. pi moves T1's attachment from w to u.
struct PiSite {
    Vertex u = -1;
    Vertex w = -1;
    std::vector<Vertex> t0;  // sorted, contains u
    std::vector<Vertex> t1;  // sorted, non-empty
    TreePath pendent;        // starts at w; just {w} when m(P) = 0
    Vertex v0 = -1;          // endpoint of the pendent path

    int pendent_length() const { return pendent.length(); }
};

enum class StepKind { pi, pi_inverse, reattach };

struct TransformStep {
    StepKind kind = StepKind::pi;
    Vertex u = -1;
    Vertex w = -1;
    std::vector<Edge> removed_edges;
    std::vector<Edge> added_edges;
    Rational aecc_before;
    Rational aecc_after;
    bool equality = false;
};

struct TransformTrace {
    std::vector<TransformStep> steps;
};

enum class ReduceStrategy { to_star, to_path, to_broom, to_balanced_starlike };

namespace detail {

// vertices reachable from `keep` without crossing the edge (a, b)
inline std::vector<char> side_mask(const Tree& t, Vertex keep, Vertex a, Vertex b) {
    std::vector<char> mask(static_cast<std::size_t>(t.n()), 0);
    std::vector<Vertex> stack{keep};
    mask[static_cast<std::size_t>(keep)] = 1;
    while (!stack.empty()) {
        Vertex x = stack.back();
        stack.pop_back();
        for (Vertex y : t.neighbors(x)) {
            if ((x == a && y == b) || (x == b && y == a)) continue;
            if (!mask[static_cast<std::size_t>(y)]) {
                mask[static_cast<std::size_t>(y)] = 1;
                stack.push_back(y);
            }
        }
    }
    return mask;
}

// max distance from src to any vertex inside the mask (src must be masked)
inline int masked_ecc(const Tree& t, Vertex src, const std::vector<char>& mask) {
    std::vector<int> dist(static_cast<std::size_t>(t.n()), -1);
    std::vector<Vertex> queue{src};
    dist[static_cast<std::size_t>(src)] = 0;
    int best = 0;
    for (std::size_t i = 0; i < queue.size(); ++i) {
        Vertex x = queue[i];
        best = std::max(best, dist[static_cast<std::size_t>(x)]);
        for (Vertex y : t.neighbors(x)) {
            if (!mask[static_cast<std::size_t>(y)] || dist[static_cast<std::size_t>(y)] >= 0)
                continue;
            dist[static_cast<std::size_t>(y)] = dist[static_cast<std::size_t>(x)] + 1;
            queue.push_back(y);
        }
    }
    return best;
}

inline std::vector<Vertex> mask_to_sorted(const std::vector<char>& mask) {
    std::vector<Vertex> out;
    for (std::size_t v = 0; v < mask.size(); ++v)
        if (mask[v]) out.push_back(static_cast<Vertex>(v));
    return out;
}

// If the branch hanging at `anchor` through `head` is a pendent path, return
// its vertices beyond the anchor (head first); otherwise nullopt.
inline std::optional<std::vector<Vertex>> pendent_branch(const Tree& t, Vertex anchor,
                                                         Vertex head) {
    std::vector<Vertex> out;
    Vertex prev = anchor;
    Vertex cur = head;
    for (;;) {
        out.push_back(cur);
        if (t.degree(cur) == 1) return out;
        if (t.degree(cur) != 2) return std::nullopt;
        Vertex next = t.neighbors(cur)[0] == prev ? t.neighbors(cur)[1] : t.neighbors(cur)[0];
        prev = cur;
        cur = next;
    }
}

inline std::vector<Vertex> branch_vertices(const Tree& t, Vertex anchor, Vertex head) {
    auto mask = side_mask(t, head, anchor, head);
    return mask_to_sorted(mask);
}

}  // namespace detail

// All (u, w, P-choice) decompositions valid for a forward pi step, in
// deterministic (u, w, P-head) order. The empty-path choice comes first.
inline std::vector<PiSite> find_pi_sites(const Tree& t) {
    std::vector<PiSite> sites;
    const int n = t.n();
    if (n < 3) return sites;
    for (Vertex u = 0; u < n; ++u) {
        for (Vertex w : t.neighbors(u)) {
            auto t0_mask = detail::side_mask(t, u, u, w);
            int ecc_u_t0 = detail::masked_ecc(t, u, t0_mask);
            auto t0 = detail::mask_to_sorted(t0_mask);

            std::vector<Vertex> heads;
            for (Vertex h : t.neighbors(w))
                if (h != u) heads.push_back(h);
            if (heads.empty()) continue;

            // P-choice: empty, or one pendent-path branch at w
            std::vector<std::pair<Vertex, std::vector<Vertex>>> p_choices;
            p_choices.emplace_back(-1, std::vector<Vertex>{});
            for (Vertex h : heads) {
                if (auto branch = detail::pendent_branch(t, w, h))
                    p_choices.emplace_back(h, std::move(*branch));
            }

            for (auto& [p_head, p_tail] : p_choices) {
                if (p_tail.empty() ? heads.empty() : heads.size() < 2)
                    continue;  // T1 would be empty
                int m_p = static_cast<int>(p_tail.size());
                if (m_p >= ecc_u_t0) continue;

                PiSite s;
                s.u = u;
                s.w = w;
                s.t0 = t0;
                s.pendent.vertices.push_back(w);
                for (Vertex x : p_tail) s.pendent.vertices.push_back(x);
                s.v0 = s.pendent.vertices.back();
                for (Vertex h : heads) {
                    if (h == p_head) continue;
                    auto branch = detail::branch_vertices(t, w, h);
                    s.t1.insert(s.t1.end(), branch.begin(), branch.end());
                }
                std::sort(s.t1.begin(), s.t1.end());
                sites.push_back(std::move(s));
            }
        }
    }
    return sites;
}

namespace detail {

inline void validate_forward_site(const Tree& t, const PiSite& s) {
    if (s.u < 0 || s.u >= t.n() || s.w < 0 || s.w >= t.n() || !t.has_edge(s.u, s.w))
        fail(errc::invalid_site, "u and w must be adjacent");
    if (s.pendent.vertices.empty() || s.pendent.vertices.front() != s.w ||
        s.pendent.vertices.back() != s.v0)
        fail(errc::invalid_site, "pendent path must start at w and end at v0");
    validate_path(t, s.pendent);
    auto t0_mask = side_mask(t, s.u, s.u, s.w);
    if (mask_to_sorted(t0_mask) != s.t0)
        fail(errc::invalid_site, "T0 is not the u-side component of T - uw");
    if (s.t1.empty()) fail(errc::invalid_site, "T1 must be non-empty");
    // pendent path must really be pendent and hang at w
    if (s.pendent.length() > 0) {
        auto branch = pendent_branch(t, s.w, s.pendent.vertices[1]);
        if (!branch || static_cast<int>(branch->size()) != s.pendent.length())
            fail(errc::invalid_site, "P is not a pendent path hanging at w");
        for (int i = 1; i <= s.pendent.length(); ++i)
            if ((*branch)[static_cast<std::size_t>(i - 1)] !=
                s.pendent.vertices[static_cast<std::size_t>(i)])
                fail(errc::invalid_site, "P does not match the branch at w");
    }
    // T1 = V \ T0 \ V(P)
    std::vector<char> claimed(static_cast<std::size_t>(t.n()), 0);
    for (Vertex x : s.t0) claimed[static_cast<std::size_t>(x)] = 1;
    for (Vertex x : s.pendent.vertices) {
        if (claimed[static_cast<std::size_t>(x)]) fail(errc::invalid_site, "overlapping parts");
        claimed[static_cast<std::size_t>(x)] = 1;
    }
    for (Vertex x : s.t1) {
        if (claimed[static_cast<std::size_t>(x)]) fail(errc::invalid_site, "overlapping parts");
        claimed[static_cast<std::size_t>(x)] = 1;
    }
    for (char c : claimed)
        if (!c) fail(errc::invalid_site, "site parts do not partition V(T)");
    int ecc_u_t0 = masked_ecc(t, s.u, t0_mask);
    if (s.pendent.length() >= ecc_u_t0)
        fail(errc::invalid_site, "requires m(P) < ecc2(u, T0)");
}

inline Tree rewire(const Tree& t, Vertex from, Vertex to, const std::vector<Vertex>& moved_heads,
                   std::vector<Edge>* removed = nullptr, std::vector<Edge>* added = nullptr) {
    std::vector<Edge> edges;
    for (auto [a, b] : t.edges()) {
        bool moved = false;
        for (Vertex h : moved_heads) {
            if ((a == from && b == h) || (a == h && b == from)) {
                moved = true;
                break;
            }
        }
        if (moved) {
            if (removed) removed->emplace_back(std::min(a, b), std::max(a, b));
            Vertex h = (a == from) ? b : a;
            edges.emplace_back(to, h);
            if (added) added->emplace_back(std::min(to, h), std::max(to, h));
        } else {
            edges.emplace_back(a, b);
        }
    }
    return Tree::from_edge_list(t.n(), edges);
}

}  // namespace detail

inline Tree apply_pi(const Tree& t, const PiSite& s, std::vector<Edge>* removed = nullptr,
                     std::vector<Edge>* added = nullptr) {
    detail::validate_forward_site(t, s);
    std::vector<Vertex> moved_heads;
    for (Vertex h : t.neighbors(s.w))
        if (std::binary_search(s.t1.begin(), s.t1.end(), h)) moved_heads.push_back(h);
    return detail::rewire(t, s.w, s.u, moved_heads, removed, added);
}

// Inverse sites describe the transformed tree: T1 hangs at u and is moved
// back to w. Single-branch T1 choices are enumerated; apply_pi_inverse also
// accepts explicit multi-branch sites (e.g. mirrored forward sites).
inline std::vector<PiSite> find_pi_inverse_sites(const Tree& t) {
    std::vector<PiSite> sites;
    const int n = t.n();
    if (n < 3) return sites;
    for (Vertex u = 0; u < n; ++u) {
        if (t.degree(u) < 2) continue;
        for (Vertex w : t.neighbors(u)) {
            // far side of w must be exactly a pendent path (possibly empty)
            std::vector<Vertex> p_tail;
            if (t.degree(w) > 1) {
                Vertex far_head = -1;
                int far_count = 0;
                for (Vertex h : t.neighbors(w))
                    if (h != u) {
                        far_head = h;
                        ++far_count;
                    }
                if (far_count > 1) continue;
                auto branch = detail::pendent_branch(t, w, far_head);
                if (!branch) continue;
                p_tail = std::move(*branch);
            }
            for (Vertex h : t.neighbors(u)) {
                if (h == w) continue;
                auto t1 = detail::branch_vertices(t, u, h);
                // T0 = V \ V(P) \ T1
                std::vector<char> t0_mask(static_cast<std::size_t>(n), 1);
                t0_mask[static_cast<std::size_t>(w)] = 0;
                for (Vertex x : p_tail) t0_mask[static_cast<std::size_t>(x)] = 0;
                for (Vertex x : t1) t0_mask[static_cast<std::size_t>(x)] = 0;
                int ecc_u_t0 = detail::masked_ecc(t, u, t0_mask);
                int m_p = static_cast<int>(p_tail.size());
                if (m_p >= ecc_u_t0) continue;

                PiSite s;
                s.u = u;
                s.w = w;
                s.t0 = detail::mask_to_sorted(t0_mask);
                s.t1 = t1;
                std::sort(s.t1.begin(), s.t1.end());
                s.pendent.vertices.push_back(w);
                for (Vertex x : p_tail) s.pendent.vertices.push_back(x);
                s.v0 = s.pendent.vertices.back();
                sites.push_back(std::move(s));
            }
        }
    }
    return sites;
}

namespace detail {

inline void validate_inverse_site(const Tree& t, const PiSite& s) {
    if (s.u < 0 || s.u >= t.n() || s.w < 0 || s.w >= t.n() || !t.has_edge(s.u, s.w))
        fail(errc::invalid_site, "u and w must be adjacent");
    if (s.pendent.vertices.empty() || s.pendent.vertices.front() != s.w ||
        s.pendent.vertices.back() != s.v0)
        fail(errc::invalid_site, "pendent path must start at w and end at v0");
    validate_path(t, s.pendent);
    if (s.t1.empty()) fail(errc::invalid_site, "T1 must be non-empty");
    // the w-side component of T - uw must be exactly V(P)
    auto w_mask = side_mask(t, s.w, s.u, s.w);
    auto w_side = mask_to_sorted(w_mask);
    std::vector<Vertex> p_sorted = s.pendent.vertices;
    std::sort(p_sorted.begin(), p_sorted.end());
    if (w_side != p_sorted)
        fail(errc::invalid_site, "w-side of T - uw must be exactly the pendent path");
    // T1 must be a union of complete branches at u, away from w
    std::vector<char> in_t1(static_cast<std::size_t>(t.n()), 0);
    for (Vertex x : s.t1) in_t1[static_cast<std::size_t>(x)] = 1;
    for (Vertex h : t.neighbors(s.u)) {
        if (h == s.w) continue;
        if (!in_t1[static_cast<std::size_t>(h)]) continue;
        for (Vertex x : branch_vertices(t, s.u, h))
            if (!in_t1[static_cast<std::size_t>(x)])
                fail(errc::invalid_site, "T1 must consist of complete branches at u");
    }
    // partition check and the pendent-length constraint against T0
    std::vector<char> t0_mask(static_cast<std::size_t>(t.n()), 1);
    for (Vertex x : s.pendent.vertices) t0_mask[static_cast<std::size_t>(x)] = 0;
    for (Vertex x : s.t1) {
        if (!t0_mask[static_cast<std::size_t>(x)])
            fail(errc::invalid_site, "T1 overlaps the pendent path");
        t0_mask[static_cast<std::size_t>(x)] = 0;
    }
    if (mask_to_sorted(t0_mask) != s.t0)
        fail(errc::invalid_site, "T0 must be V(T) minus P and T1");
    if (!t0_mask[static_cast<std::size_t>(s.u)])
        fail(errc::invalid_site, "u must belong to T0");
    int ecc_u_t0 = masked_ecc(t, s.u, t0_mask);
    if (s.pendent.length() >= ecc_u_t0)
        fail(errc::invalid_site, "requires m(P) < ecc2(u, T0)");
}

}  // namespace detail

inline Tree apply_pi_inverse(const Tree& t, const PiSite& s,
                             std::vector<Edge>* removed = nullptr,
                             std::vector<Edge>* added = nullptr) {
    detail::validate_inverse_site(t, s);
    std::vector<Vertex> moved_heads;
    for (Vertex h : t.neighbors(s.u))
        if (std::binary_search(s.t1.begin(), s.t1.end(), h)) moved_heads.push_back(h);
    return detail::rewire(t, s.u, s.w, moved_heads, removed, added);
}

// Mirror a forward site so it can undo the corresponding pi application.
inline PiSite mirror_site(const PiSite& s) { return s; }

// Equality characterization: ecc_T0(P0) <= m(P) < ecc2(u, T0) and
// ecc2(w, T1) <= m(P), with P0 a longest path from u inside T0.
inline bool is_equality_case(const Tree& t, const PiSite& s) {
    detail::validate_forward_site(t, s);
    auto t0_mask = detail::side_mask(t, s.u, s.u, s.w);
    const int n = t.n();

    // longest path from u inside T0 (BFS parents; lemma-backed tie freedom)
    std::vector<int> dist(static_cast<std::size_t>(n), -1);
    std::vector<Vertex> parent(static_cast<std::size_t>(n), -1);
    std::vector<Vertex> queue{s.u};
    dist[static_cast<std::size_t>(s.u)] = 0;
    for (std::size_t i = 0; i < queue.size(); ++i) {
        Vertex x = queue[i];
        for (Vertex y : t.neighbors(x)) {
            if (!t0_mask[static_cast<std::size_t>(y)] || dist[static_cast<std::size_t>(y)] >= 0)
                continue;
            dist[static_cast<std::size_t>(y)] = dist[static_cast<std::size_t>(x)] + 1;
            parent[static_cast<std::size_t>(y)] = x;
            queue.push_back(y);
        }
    }
    Vertex far = s.u;
    for (Vertex v = 0; v < n; ++v)
        if (t0_mask[static_cast<std::size_t>(v)] &&
            dist[static_cast<std::size_t>(v)] > dist[static_cast<std::size_t>(far)])
            far = v;
    int ecc_u_t0 = dist[static_cast<std::size_t>(far)];
    std::vector<char> on_p0(static_cast<std::size_t>(n), 0);
    for (Vertex x = far; x != -1; x = parent[static_cast<std::size_t>(x)]) {
        on_p0[static_cast<std::size_t>(x)] = 1;
        if (x == s.u) break;
    }

    // ecc_T0(P0): farthest T0 vertex from P0 (multi-source BFS inside T0)
    std::vector<int> pdist(static_cast<std::size_t>(n), -1);
    std::vector<Vertex> pq;
    for (Vertex v = 0; v < n; ++v)
        if (on_p0[static_cast<std::size_t>(v)]) {
            pdist[static_cast<std::size_t>(v)] = 0;
            pq.push_back(v);
        }
    int ecc_t0_p0 = 0;
    for (std::size_t i = 0; i < pq.size(); ++i) {
        Vertex x = pq[i];
        ecc_t0_p0 = std::max(ecc_t0_p0, pdist[static_cast<std::size_t>(x)]);
        for (Vertex y : t.neighbors(x)) {
            if (!t0_mask[static_cast<std::size_t>(y)] || pdist[static_cast<std::size_t>(y)] >= 0)
                continue;
            pdist[static_cast<std::size_t>(y)] = pdist[static_cast<std::size_t>(x)] + 1;
            pq.push_back(y);
        }
    }

    // ecc2(w, T1): depth of the moved branches below w
    std::vector<char> t1w_mask(static_cast<std::size_t>(n), 0);
    t1w_mask[static_cast<std::size_t>(s.w)] = 1;
    for (Vertex x : s.t1) t1w_mask[static_cast<std::size_t>(x)] = 1;
    int ecc_w_t1 = detail::masked_ecc(t, s.w, t1w_mask);

    int m_p = s.pendent.length();
    return ecc_t0_p0 <= m_p && m_p < ecc_u_t0 && ecc_w_t1 <= m_p;
}

}  // namespace steiner_ecc
