#pragma once

#include <charconv>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "steiner_ecc/ecc3.hpp"
#include "steiner_ecc/error.hpp"
#include "steiner_ecc/families.hpp"
#include "steiner_ecc/steiner.hpp"
#include "steiner_ecc/transform.hpp"
#include "steiner_ecc/tree.hpp"

namespace steiner_ecc {

// Edge list file format:
//   n <count>
//   u v        (one edge per line, 0-based)
// Lines starting with '#' are ignored. Emission is byte-stable.

struct ParsedEdgeList {
    int n = 0;
    std::vector<Edge> edges;
};

inline ParsedEdgeList parse_edge_list_text(std::string_view text) {
    ParsedEdgeList out;
    bool have_header = false;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        std::string_view line =
            text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
        pos = (nl == std::string_view::npos) ? text.size() + 1 : nl + 1;
        ++line_no;
        // trim
        while (!line.empty() && (line.front() == ' ' || line.front() == '\t')) line.remove_prefix(1);
        while (!line.empty() && (line.back() == ' ' || line.back() == '\t' || line.back() == '\r'))
            line.remove_suffix(1);
        if (line.empty() || line.front() == '#') continue;

        std::istringstream iss{std::string(line)};
        if (!have_header) {
            std::string tag;
            long long n = -1;
            if (!(iss >> tag >> n) || tag != "n" || n < 1 || n > (1LL << 31) - 1)
                fail(errc::parse_error,
                     "line " + std::to_string(line_no) + ": expected header 'n <count>'");
            std::string rest;
            if (iss >> rest)
                fail(errc::parse_error, "line " + std::to_string(line_no) + ": trailing tokens");
            out.n = static_cast<int>(n);
            have_header = true;
            continue;
        }
        long long u = -1;
        long long v = -1;
        if (!(iss >> u >> v))
            fail(errc::parse_error,
                 "line " + std::to_string(line_no) + ": expected edge 'u v'");
        std::string rest;
        if (iss >> rest)
            fail(errc::parse_error, "line " + std::to_string(line_no) + ": trailing tokens");
        if (u < 0 || u >= out.n || v < 0 || v >= out.n)
            fail(errc::parse_error,
                 "line " + std::to_string(line_no) + ": vertex id out of range");
        out.edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
    }
    if (!have_header) fail(errc::parse_error, "missing 'n <count>' header");
    return out;
}

inline Tree parse_tree(std::string_view text) {
    auto p = parse_edge_list_text(text);
    return Tree::from_edge_list(p.n, p.edges);
}

inline Graph parse_graph(std::string_view text) {
    auto p = parse_edge_list_text(text);
    return Graph::from_edge_list(p.n, p.edges);
}

inline std::string emit_edge_list(const Tree& t) {
    std::string out = "n " + std::to_string(t.n()) + "\n";
    for (auto [u, v] : t.edges())
        out += std::to_string(u) + " " + std::to_string(v) + "\n";
    return out;
}

inline std::string emit_edge_list(const Graph& g) {
    std::string out = "n " + std::to_string(g.n()) + "\n";
    for (auto [u, v] : g.edges())
        out += std::to_string(u) + " " + std::to_string(v) + "\n";
    return out;
}

inline std::string emit_dot(const Tree& t, const std::string& name = "T") {
    std::string out = "graph " + name + " {\n";
    for (auto [u, v] : t.edges())
        out += "  " + std::to_string(u) + " -- " + std::to_string(v) + ";\n";
    out += "}\n";
    return out;
}

inline nlohmann::json rational_json(const Rational& r) {
    return nlohmann::json{{"num", r.num()}, {"den", r.den()}};
}

// ResultDocument: the normative average is the exact num/den pair; a decimal
// rendering may be added for convenience but is never parsed back.
inline nlohmann::json result_document(const EccReport& report, const std::string& algorithm,
                                      double elapsed_ms,
                                      const std::vector<std::array<Vertex, 3>>* witnesses = nullptr,
                                      bool decimal = false) {
    nlohmann::json doc;
    doc["schema"] = 1;
    doc["n"] = report.per_vertex.size();
    doc["k"] = report.k;
    doc["per_vertex"] = report.per_vertex;
    doc["sum"] = report.sum;
    doc["average"] = rational_json(report.average);
    if (decimal) doc["average_decimal_nonnormative"] = report.average.to_double();
    if (witnesses && !witnesses->empty()) {
        nlohmann::json w = nlohmann::json::array();
        for (const auto& triple : *witnesses) w.push_back({triple[0], triple[1], triple[2]});
        doc["witnesses"] = w;
    }
    doc["algorithm"] = algorithm;
    doc["elapsed_ms"] = elapsed_ms;
    return doc;
}

inline nlohmann::json result_document(const Ecc3Result& result, const std::string& algorithm,
                                      double elapsed_ms, bool decimal = false) {
    EccReport report;
    report.k = 3;
    report.per_vertex = result.per_vertex;
    report.sum = result.sum;
    report.average = result.average;
    return result_document(report, algorithm, elapsed_ms,
                           result.witnesses.empty() ? nullptr : &result.witnesses, decimal);
}

inline const char* step_kind_name(StepKind k) {
    switch (k) {
        case StepKind::pi: return "pi";
        case StepKind::pi_inverse: return "pi_inverse";
        case StepKind::reattach: return "reattach";
    }
    return "?";
}

inline nlohmann::json trace_json(const TransformTrace& trace) {
    nlohmann::json steps = nlohmann::json::array();
    int index = 0;
    for (const auto& s : trace.steps) {
        nlohmann::json step;
        step["index"] = index++;
        step["kind"] = step_kind_name(s.kind);
        step["u"] = s.u;
        step["w"] = s.w;
        nlohmann::json rem = nlohmann::json::array();
        for (auto [a, b] : s.removed_edges) rem.push_back({a, b});
        nlohmann::json add = nlohmann::json::array();
        for (auto [a, b] : s.added_edges) add.push_back({a, b});
        step["removed_edges"] = rem;
        step["added_edges"] = add;
        step["aecc_before"] = rational_json(s.aecc_before);
        step["aecc_after"] = rational_json(s.aecc_after);
        step["equality"] = s.equality;
        steps.push_back(std::move(step));
    }
    return nlohmann::json{{"schema", 1}, {"steps", steps}};
}

inline std::string bound_csv_header() {
    return "bound_id,applicable,lhs_num,lhs_den,rhs_num,rhs_den,holds,equality,source,"
           "alt_rhs_num,alt_rhs_den,alt_holds,note";
}

inline std::string bound_csv_row(const BoundReport& r) {
    auto b = [](bool v) { return v ? "1" : "0"; };
    std::string row = std::string(bound_name(r.id)) + "," + b(r.applicable) + ",";
    row += std::to_string(r.lhs.num()) + "," + std::to_string(r.lhs.den()) + ",";
    row += std::to_string(r.rhs.num()) + "," + std::to_string(r.rhs.den()) + ",";
    row += std::string(b(r.holds)) + "," + b(r.equality) + ",";
    row += (r.source == BoundReport::Source::closed_form ? "closed_form" : "computed");
    row += ",";
    if (r.rhs_alt) {
        row += std::to_string(r.rhs_alt->num()) + "," + std::to_string(r.rhs_alt->den()) + "," +
               b(*r.holds_alt);
    } else {
        row += ",,";
    }
    row += "," + r.note;
    return row;
}

}  // namespace steiner_ecc
