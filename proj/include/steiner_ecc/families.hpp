#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "steiner_ecc/ecc3.hpp"
#include "steiner_ecc/error.hpp"
#include "steiner_ecc/rational.hpp"
#include "steiner_ecc/tree.hpp"

namespace steiner_ecc {

enum class FamilyKind {
    path,
    star,
    complete,
    cycle,
    complete_bipartite,
    broom,
    balanced_starlike,
    t_nm,
    tprime_nd,
    tprime_general,
};

// Parameters for one named family instance. The t_nm range is relaxed to
// m >= 2 and m+1 <= n <= 2m+1 so that the matching/independence bound
// verifiers can always name their extremal tree (T_{n,2} degenerates to a
// path, T_{n,n-1} to a star).
struct FamilySpec {
    FamilyKind kind = FamilyKind::path;
    int n = 0;
    int m = 0;      // complete_bipartite / t_nm
    int delta = 0;  // broom
    int p = 0;      // balanced_starlike
    int d = 0;      // tprime
    std::vector<int> pendants;  // tprime_general: p_1..p_{d-1}

    static FamilySpec path(int n) { return {FamilyKind::path, n}; }
    static FamilySpec star(int n) { return {FamilyKind::star, n}; }
    static FamilySpec complete(int n) { return {FamilyKind::complete, n}; }
    static FamilySpec cycle(int n) { return {FamilyKind::cycle, n}; }
    static FamilySpec complete_bipartite(int m, int n) {
        FamilySpec s{FamilyKind::complete_bipartite, m + n};
        s.m = m;
        return s;
    }
    static FamilySpec broom(int n, int delta) {
        FamilySpec s{FamilyKind::broom, n};
        s.delta = delta;
        return s;
    }
    static FamilySpec balanced_starlike(int n, int p) {
        FamilySpec s{FamilyKind::balanced_starlike, n};
        s.p = p;
        return s;
    }
    static FamilySpec t_nm(int n, int m) {
        FamilySpec s{FamilyKind::t_nm, n};
        s.m = m;
        return s;
    }
    static FamilySpec tprime_nd(int n, int d) {
        FamilySpec s{FamilyKind::tprime_nd, n};
        s.d = d;
        return s;
    }
    static FamilySpec tprime_general(int n, int d, std::vector<int> pendants) {
        FamilySpec s{FamilyKind::tprime_general, n};
        s.d = d;
        s.pendants = std::move(pendants);
        return s;
    }
};

inline std::variant<Tree, Graph> generate(const FamilySpec& spec) {
    const int n = spec.n;
    switch (spec.kind) {
        case FamilyKind::path: {
            if (n < 1) fail(errc::invalid_parameters, "path needs n >= 1");
            std::vector<Edge> edges;
            for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
            return Tree::from_edge_list(n, edges);
        }
        case FamilyKind::star: {
            if (n < 2) fail(errc::invalid_parameters, "star needs n >= 2");
            std::vector<Edge> edges;
            for (int i = 1; i < n; ++i) edges.emplace_back(0, i);
            return Tree::from_edge_list(n, edges);
        }
        case FamilyKind::complete: {
            if (n < 1) fail(errc::invalid_parameters, "complete graph needs n >= 1");
            std::vector<Edge> edges;
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
            return Graph::from_edge_list(n, edges);
        }
        case FamilyKind::cycle: {
            if (n < 3) fail(errc::invalid_parameters, "cycle needs n >= 3");
            std::vector<Edge> edges;
            for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
            return Graph::from_edge_list(n, edges);
        }
        case FamilyKind::complete_bipartite: {
            int a = spec.m;
            int b = n - a;
            if (a < 1 || b < 1)
                fail(errc::invalid_parameters, "complete bipartite needs both parts non-empty");
            std::vector<Edge> edges;
            for (int i = 0; i < a; ++i)
                for (int j = 0; j < b; ++j) edges.emplace_back(i, a + j);
            return Graph::from_edge_list(n, edges);
        }
        case FamilyKind::broom: {
            int delta = spec.delta;
            if (delta < 2 || delta > n - 1)
                fail(errc::invalid_parameters, "broom needs 2 <= delta <= n-1");
            std::vector<Edge> edges;
            for (int i = 1; i <= delta; ++i) edges.emplace_back(0, i);
            // tail of length n - delta - 1 at the smallest-id leaf
            int prev = 1;
            for (int i = delta + 1; i < n; ++i) {
                edges.emplace_back(prev, i);
                prev = i;
            }
            return Tree::from_edge_list(n, edges);
        }
        case FamilyKind::balanced_starlike: {
            int p = spec.p;
            if (p < 2 || p > n - 1)
                fail(errc::invalid_parameters, "balanced starlike needs 2 <= p <= n-1");
            int q = (n - 1) / p;
            int r = (n - 1) % p;  // r legs of length q+1, p-r of length q
            std::vector<Edge> edges;
            int next = 1;
            for (int leg = 0; leg < p; ++leg) {
                int len = q + (leg < r ? 1 : 0);
                int prev = 0;
                for (int j = 0; j < len; ++j) {
                    edges.emplace_back(prev, next);
                    prev = next++;
                }
            }
            return Tree::from_edge_list(n, edges);
        }
        case FamilyKind::t_nm: {
            int m = spec.m;
            if (m < 2 || n < m + 1 || n > 2 * m + 1)
                fail(errc::invalid_parameters, "t_nm needs m >= 2 and m+1 <= n <= 2m+1");
            std::vector<Edge> edges;
            for (int i = 1; i <= m; ++i) edges.emplace_back(0, i);
            for (int i = 1; i <= n - m - 1; ++i) edges.emplace_back(i, m + i);
            return Tree::from_edge_list(n, edges);
        }
        case FamilyKind::tprime_nd: {
            int d = spec.d;
            if (d < 1 || d > n - 1) fail(errc::invalid_parameters, "tprime needs 1 <= d <= n-1");
            int extra = n - d - 1;
            std::vector<int> pendants(static_cast<std::size_t>(d > 0 ? d - 1 : 0), 0);
            if (extra > 0) {
                if (d < 2)
                    fail(errc::invalid_parameters, "tprime with pendants needs d >= 2");
                if (d % 2 == 0) {
                    pendants[static_cast<std::size_t>(d / 2 - 1)] = extra;
                } else {
                    pendants[static_cast<std::size_t>(d / 2 - 1)] = extra / 2;
                    pendants[static_cast<std::size_t>(d / 2)] = extra - extra / 2;
                }
            }
            return generate(FamilySpec::tprime_general(n, d, pendants));
        }
        case FamilyKind::tprime_general: {
            int d = spec.d;
            if (d < 1 || d > n - 1) fail(errc::invalid_parameters, "tprime needs 1 <= d <= n-1");
            if (static_cast<int>(spec.pendants.size()) != (d > 0 ? d - 1 : 0))
                fail(errc::invalid_parameters, "tprime needs d-1 pendant counts");
            int total = 0;
            for (int p : spec.pendants) {
                if (p < 0) fail(errc::invalid_parameters, "pendant counts must be >= 0");
                total += p;
            }
            if (total != n - d - 1)
                fail(errc::invalid_parameters, "pendant counts must sum to n-d-1");
            std::vector<Edge> edges;
            for (int i = 0; i < d; ++i) edges.emplace_back(i, i + 1);
            int next = d + 1;
            for (int i = 1; i <= d - 1; ++i)
                for (int j = 0; j < spec.pendants[static_cast<std::size_t>(i - 1)]; ++j)
                    edges.emplace_back(i, next++);
            return Tree::from_edge_list(n, edges);
        }
    }
    fail(errc::invalid_parameters, "unknown family kind");
}

inline Tree generate_tree(const FamilySpec& spec) {
    auto g = generate(spec);
    if (!std::holds_alternative<Tree>(g))
        fail(errc::invalid_parameters, "family instance is not a tree");
    return std::get<Tree>(g);
}

inline Graph generate_graph(const FamilySpec& spec) {
    auto g = generate(spec);
    if (std::holds_alternative<Graph>(g)) return std::get<Graph>(g);
    // trees are graphs too
    const Tree& t = std::get<Tree>(g);
    return Graph::from_edge_list(t.n(), t.edges());
}

// Published closed forms; families without one answer nullopt and are
// evaluated through the fast algorithm instead.
inline std::optional<Rational> closed_form_aecc3(const FamilySpec& spec) {
    const int n = spec.n;
    switch (spec.kind) {
        case FamilyKind::path:
            if (n >= 3) return Rational(n - 1);
            return std::nullopt;
        case FamilyKind::star:
            // K_{1,2} is P_3: a leaf has only one other leaf to pair with,
            // so the (3n-1)/n formula starts at n = 4
            if (n >= 4) return Rational(3) - Rational(1, n);
            if (n == 3) return Rational(2);
            return std::nullopt;
        case FamilyKind::complete:
            if (n >= 3) return Rational(2);
            return std::nullopt;
        case FamilyKind::cycle:
            // ecc3 of every cycle vertex is n minus the largest arc a best
            // triple can leave out, i.e. n - ceil(n/3)
            if (n >= 3) return Rational(n - (n + 2) / 3);
            return std::nullopt;
        case FamilyKind::complete_bipartite:
            if (spec.m >= 3 && n - spec.m >= 3) return Rational(3);
            return std::nullopt;
        case FamilyKind::broom:
            if (spec.delta >= 3 && spec.delta <= n - 1)
                return Rational(n - spec.delta + 1) + Rational(spec.delta, n);
            return std::nullopt;
        case FamilyKind::t_nm:
            if (n == 2 * spec.m) {  // the perfect-matching extremal trees
                if (n == 4) return Rational(3);
                if (n == 6) return Rational(9, 2);
                if (n >= 8) return Rational(11, 2) - Rational(2, n);
            }
            return std::nullopt;
        default:
            return std::nullopt;
    }
}

enum class BoundId {
    general_lower,
    general_upper,
    maxdeg_upper,
    leaves_lower,
    matching_lower,
    independence_lower,
    diameter_lower,
    radius_lower,
};

inline const char* bound_name(BoundId id) {
    switch (id) {
        case BoundId::general_lower: return "general_lower";
        case BoundId::general_upper: return "general_upper";
        case BoundId::maxdeg_upper: return "maxdeg_upper";
        case BoundId::leaves_lower: return "leaves_lower";
        case BoundId::matching_lower: return "matching_lower";
        case BoundId::independence_lower: return "independence_lower";
        case BoundId::diameter_lower: return "diameter_lower";
        case BoundId::radius_lower: return "radius_lower";
    }
    return "?";
}

inline std::vector<BoundId> all_bounds() {
    return {BoundId::general_lower,  BoundId::general_upper,      BoundId::maxdeg_upper,
            BoundId::leaves_lower,   BoundId::matching_lower,     BoundId::independence_lower,
            BoundId::diameter_lower, BoundId::radius_lower};
}

struct BoundReport {
    BoundId id = BoundId::general_lower;
    bool applicable = true;
    std::string note;
    Rational lhs;  // aecc3(T)
    Rational rhs;  // extremal-family value, oriented per bound
    bool holds = false;
    bool equality = false;
    enum class Source { closed_form, computed } source = Source::computed;
    // second candidate for the independence bound (statement vs proof family)
    std::optional<Rational> rhs_alt;
    std::optional<bool> holds_alt;
};

inline BoundReport verify_bound(const Tree& t, BoundId id) {
    const int n = t.n();
    if (n < 3) fail(errc::invalid_parameters, "bound verification needs n >= 3");
    BoundReport r;
    r.id = id;
    r.lhs = aecc3_fast(t).average;

    auto lower = [&](Rational rhs, BoundReport::Source src) {
        r.rhs = rhs;
        r.source = src;
        r.holds = r.lhs >= r.rhs;
        r.equality = r.lhs == r.rhs;
    };
    auto upper = [&](Rational rhs, BoundReport::Source src) {
        r.rhs = rhs;
        r.source = src;
        r.holds = r.lhs <= r.rhs;
        r.equality = r.lhs == r.rhs;
    };

    switch (id) {
        case BoundId::general_lower:
            lower(*closed_form_aecc3(FamilySpec::star(n)), BoundReport::Source::closed_form);
            break;
        case BoundId::general_upper:
            upper(Rational(n - 1), BoundReport::Source::closed_form);
            break;
        case BoundId::maxdeg_upper: {
            int delta = t.max_degree();
            if (delta >= 3)
                upper(*closed_form_aecc3(FamilySpec::broom(n, delta)),
                      BoundReport::Source::closed_form);
            else  // delta == 2: the tree is a path and the extremal broom degenerates to it
                upper(Rational(n - 1), BoundReport::Source::closed_form);
            break;
        }
        case BoundId::leaves_lower: {
            int p = t.leaf_count();
            lower(aecc3_fast(generate_tree(FamilySpec::balanced_starlike(n, p))).average,
                  BoundReport::Source::computed);
            break;
        }
        case BoundId::matching_lower: {
            int nu = matching_number(t);
            if (nu < 2) {
                r.applicable = false;
                r.note = "matching bound needs matching number >= 2";
                break;
            }
            auto spec = FamilySpec::t_nm(n, n - nu);
            if (auto cf = closed_form_aecc3(spec))
                lower(*cf, BoundReport::Source::closed_form);
            else
                lower(aecc3_fast(generate_tree(spec)).average, BoundReport::Source::computed);
            break;
        }
        case BoundId::independence_lower: {
            int alpha = independence_number(t);
            // statement family T_{n,alpha}
            lower(aecc3_fast(generate_tree(FamilySpec::t_nm(n, alpha))).average,
                  BoundReport::Source::computed);
            // proof family BS_{n,alpha}
            if (alpha <= n - 1) {
                Rational alt =
                    aecc3_fast(generate_tree(FamilySpec::balanced_starlike(n, alpha))).average;
                r.rhs_alt = alt;
                r.holds_alt = r.lhs >= alt;
            }
            break;
        }
        case BoundId::diameter_lower: {
            int d = diameter_radius_center(t).diameter;
            lower(aecc3_fast(generate_tree(FamilySpec::tprime_nd(n, d))).average,
                  BoundReport::Source::computed);
            break;
        }
        case BoundId::radius_lower: {
            int rad = diameter_radius_center(t).radius;
            if (rad < 2) {
                r.applicable = false;
                r.note = "radius bound needs radius >= 2";
                break;
            }
            lower(aecc3_fast(generate_tree(FamilySpec::tprime_nd(n, 2 * rad - 1))).average,
                  BoundReport::Source::computed);
            break;
        }
    }
    return r;
}

}  // namespace steiner_ecc
