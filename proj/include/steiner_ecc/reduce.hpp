#pragma once

#include <algorithm>
#include <vector>

#include "steiner_ecc/ecc3.hpp"
#include "steiner_ecc/transform.hpp"
#include "steiner_ecc/tree.hpp"

namespace steiner_ecc {

namespace detail {

inline std::vector<int> depth_from_center(const Tree& t) {
    auto info = diameter_radius_center(t);
    return t.distances_from(info.center.front());
}

// deterministic site policy: deepest w from the current center, then ids
inline const PiSite& pick_site(const Tree& t, const std::vector<PiSite>& sites) {
    auto depth = depth_from_center(t);
    const PiSite* best = &sites.front();
    for (const PiSite& s : sites) {
        int dw = depth[static_cast<std::size_t>(s.w)];
        int bw = depth[static_cast<std::size_t>(best->w)];
        if (dw > bw ||
            (dw == bw &&
             std::tuple(s.w, s.u, s.pendent_length()) <
                 std::tuple(best->w, best->u, best->pendent_length())))
            best = &s;
    }
    return *best;
}

inline TransformStep record_step(StepKind kind, const PiSite& s, const Rational& before,
                                 const Rational& after, std::vector<Edge> removed,
                                 std::vector<Edge> added) {
    TransformStep step;
    step.kind = kind;
    step.u = s.u;
    step.w = s.w;
    step.removed_edges = std::move(removed);
    step.added_edges = std::move(added);
    step.aecc_before = before;
    step.aecc_after = after;
    step.equality = before == after;
    return step;
}

inline void check_monotone(const TransformStep& step) {
    bool ok = true;
    switch (step.kind) {
        case StepKind::pi: ok = step.aecc_after <= step.aecc_before; break;
        case StepKind::pi_inverse: ok = step.aecc_after >= step.aecc_before; break;
        case StepKind::reattach: ok = step.aecc_after == step.aecc_before; break;
    }
    if (!ok)
        fail(errc::invalid_parameters,
             "internal: transformation step violated the monotonicity guarantee");
}

// branches at the root, as (head, vertices-beyond-root) pairs
inline std::vector<std::pair<Vertex, std::vector<Vertex>>> root_branches(const Tree& t,
                                                                         Vertex root) {
    std::vector<std::pair<Vertex, std::vector<Vertex>>> out;
    for (Vertex h : t.neighbors(root)) out.emplace_back(h, branch_vertices(t, root, h));
    return out;
}

}  // namespace detail

struct ReduceResult {
    Tree tree;
    TransformTrace trace;
};

inline ReduceResult reduce(const Tree& input, ReduceStrategy strategy, Vertex broom_root = -1) {
    const int n = input.n();
    if (n < 3) fail(errc::invalid_parameters, "reduce needs n >= 3");
    const std::size_t max_steps = static_cast<std::size_t>(n) * static_cast<std::size_t>(n) + 8;

    Tree t = input;
    TransformTrace trace;
    Rational current = aecc3_fast(t).average;

    auto apply_step = [&](StepKind kind, const PiSite& site) {
        std::vector<Edge> removed;
        std::vector<Edge> added;
        Tree next = (kind == StepKind::pi) ? apply_pi(t, site, &removed, &added)
                                           : apply_pi_inverse(t, site, &removed, &added);
        Rational after = aecc3_fast(next).average;
        auto step = detail::record_step(kind, site, current, after, std::move(removed),
                                        std::move(added));
        detail::check_monotone(step);
        trace.steps.push_back(std::move(step));
        t = std::move(next);
        current = after;
    };

    switch (strategy) {
        case ReduceStrategy::to_star: {
            for (;;) {
                auto sites = find_pi_sites(t);
                if (sites.empty()) break;
                apply_step(StepKind::pi, detail::pick_site(t, sites));
                if (trace.steps.size() > max_steps)
                    fail(errc::invalid_parameters, "reduce(to_star) exceeded step cap");
            }
            break;
        }
        case ReduceStrategy::to_path: {
            for (;;) {
                auto sites = find_pi_inverse_sites(t);
                if (sites.empty()) break;
                apply_step(StepKind::pi_inverse, detail::pick_site(t, sites));
                if (trace.steps.size() > max_steps)
                    fail(errc::invalid_parameters, "reduce(to_path) exceeded step cap");
            }
            break;
        }
        case ReduceStrategy::to_broom: {
            if (broom_root < 0 || broom_root >= n || t.degree(broom_root) != t.max_degree())
                fail(errc::invalid_parameters, "broom root must have degree Delta(T)");
            if (t.max_degree() <= 2) break;  // a path is already the degenerate broom
            // phase 1: straighten every branch away from the root into a
            // pendent path; the root's degree is invariant under these steps
            for (;;) {
                auto all = find_pi_inverse_sites(t);
                std::vector<PiSite> sites;
                for (auto& s : all)
                    if (s.u != broom_root) sites.push_back(std::move(s));
                if (sites.empty()) break;
                apply_step(StepKind::pi_inverse, detail::pick_site(t, sites));
                if (trace.steps.size() > max_steps)
                    fail(errc::invalid_parameters, "reduce(to_broom) exceeded step cap");
            }
            // phase 2: the tree is now a spider. Each step absorbs one edge
            // of the shortest long leg into the longest one by re-hanging all
            // remaining branches one step down that leg; the hub migrates to
            // w and its degree stays Delta throughout.
            Vertex hub = broom_root;
            for (;;) {
                auto branches = detail::root_branches(t, hub);
                std::size_t keeper = 0;
                for (std::size_t i = 1; i < branches.size(); ++i)
                    if (branches[i].second.size() > branches[keeper].second.size()) keeper = i;
                std::size_t mover = branches.size();
                for (std::size_t i = 0; i < branches.size(); ++i) {
                    if (i == keeper || branches[i].second.size() < 2) continue;
                    if (mover == branches.size() ||
                        branches[i].second.size() < branches[mover].second.size())
                        mover = i;
                }
                if (mover == branches.size()) break;  // broom reached

                PiSite s;
                s.u = hub;
                s.w = branches[mover].first;
                auto walk = detail::pendent_branch(t, hub, branches[mover].first);
                s.pendent.vertices = *walk;
                s.v0 = s.pendent.vertices.back();
                for (std::size_t i = 0; i < branches.size(); ++i) {
                    if (i == keeper || i == mover) continue;
                    s.t1.insert(s.t1.end(), branches[i].second.begin(),
                                branches[i].second.end());
                }
                std::sort(s.t1.begin(), s.t1.end());
                std::vector<char> t0_mask(static_cast<std::size_t>(n), 0);
                t0_mask[static_cast<std::size_t>(hub)] = 1;
                for (Vertex x : branches[keeper].second) t0_mask[static_cast<std::size_t>(x)] = 1;
                s.t0 = detail::mask_to_sorted(t0_mask);
                apply_step(StepKind::pi_inverse, s);
                hub = s.w;
                if (trace.steps.size() > max_steps)
                    fail(errc::invalid_parameters, "reduce(to_broom) exceeded step cap");
            }
            break;
        }
        case ReduceStrategy::to_balanced_starlike: {
            for (;;) {
                // balance pendent paths with leaf-count-preserving pi steps
                bool progressed = true;
                while (progressed) {
                    progressed = false;
                    auto all = find_pi_sites(t);
                    std::vector<PiSite> sites;
                    for (auto& s : all)
                        if (s.pendent_length() > 0) sites.push_back(std::move(s));
                    if (!sites.empty()) {
                        apply_step(StepKind::pi, detail::pick_site(t, sites));
                        progressed = true;
                    }
                    if (trace.steps.size() > max_steps)
                        fail(errc::invalid_parameters, "reduce(to_balanced) exceeded step cap");
                }
                std::vector<Vertex> branching;
                for (Vertex v = 0; v < n; ++v)
                    if (t.degree(v) >= 3) branching.push_back(v);
                if (branching.size() <= 1) break;
                if (branching.size() > 2)
                    fail(errc::invalid_parameters,
                         "reduce(to_balanced) stuck with more than two branching vertices");
                // the stuck state of the balancing procedure: two branching
                // vertices; reattach all but one leg of the second to the first
                Vertex x = branching[0];
                Vertex y = branching[1];
                auto toward_x = t.distances_from(x);
                Vertex x_side = -1;
                std::vector<Vertex> leg_heads;
                for (Vertex h : t.neighbors(y)) {
                    if (toward_x[static_cast<std::size_t>(h)] <
                        toward_x[static_cast<std::size_t>(y)])
                        x_side = h;
                    else
                        leg_heads.push_back(h);
                }
                (void)x_side;
                Rational before = current;
                std::vector<Edge> removed;
                std::vector<Edge> added;
                std::vector<Vertex> moved(leg_heads.begin() + 1, leg_heads.end());
                Tree next = detail::rewire(t, y, x, moved, &removed, &added);
                Rational after = aecc3_fast(next).average;
                PiSite pseudo;
                pseudo.u = x;
                pseudo.w = y;
                auto step = detail::record_step(StepKind::reattach, pseudo, before, after,
                                                std::move(removed), std::move(added));
                detail::check_monotone(step);
                trace.steps.push_back(std::move(step));
                t = std::move(next);
                current = after;
                if (trace.steps.size() > max_steps)
                    fail(errc::invalid_parameters, "reduce(to_balanced) exceeded step cap");
            }
            break;
        }
    }
    return ReduceResult{std::move(t), std::move(trace)};
}

}  // namespace steiner_ecc
