// Command-line surface for the Steiner 3-eccentricity library.
//
// Subcommands: compute, oracle, gen, transform, verify, bench.
// Averages are emitted as exact num/den pairs; --decimal adds a
// non-normative float rendering.

#include <chrono>
#include <ctime>
#include <limits>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "steiner_ecc/ecc3.hpp"
#include "steiner_ecc/families.hpp"
#include "steiner_ecc/io.hpp"
#include "steiner_ecc/reduce.hpp"
#include "steiner_ecc/steiner.hpp"
#include "steiner_ecc/transform.hpp"
#include "steiner_ecc/tree.hpp"

namespace se = steiner_ecc;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw se::error(se::errc::parse_error, "cannot open input file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& out_path, const std::string& content) {
    if (out_path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw se::error(se::errc::parse_error, "cannot open output file: " + out_path);
    out << content;
}

int thread_count(int flag_value) {
    if (flag_value > 0) return flag_value;
    if (const char* env = std::getenv("STEINER_ECC_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    return 1;
}

double now_ms() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double, std::milli>(clock::now().time_since_epoch()).count();
}

se::FamilySpec family_from_flags(const std::string& family, int n, int m, int delta, int p,
                                 int d) {
    if (family == "path") return se::FamilySpec::path(n);
    if (family == "star") return se::FamilySpec::star(n);
    if (family == "complete") return se::FamilySpec::complete(n);
    if (family == "cycle") return se::FamilySpec::cycle(n);
    if (family == "complete_bipartite") return se::FamilySpec::complete_bipartite(m, n - m);
    if (family == "broom") return se::FamilySpec::broom(n, delta);
    if (family == "balanced_starlike") return se::FamilySpec::balanced_starlike(n, p);
    if (family == "t_nm") return se::FamilySpec::t_nm(n, m);
    if (family == "tprime") return se::FamilySpec::tprime_nd(n, d);
    throw se::error(se::errc::invalid_parameters, "unknown family: " + family);
}

// least-squares slope of log(y) against log(x)
double loglog_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    double sx = 0;
    double sy = 0;
    double sxx = 0;
    double sxy = 0;
    const double n = static_cast<double>(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double lx = std::log(xs[i]);
        double ly = std::log(ys[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

std::vector<int> parse_int_list(const std::string& csv) {
    std::vector<int> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact Steiner 3-eccentricity toolkit for trees"};
    app.require_subcommand(1);

    // ---- compute ----
    auto* compute = app.add_subcommand("compute", "average Steiner 3-eccentricity of a tree");
    std::string c_input;
    std::string c_algo = "fast";
    std::string c_out;
    bool c_decimal = false;
    bool c_witnesses = false;
    int c_threads = 0;
    compute->add_option("--input", c_input, "edge list file")->required();
    compute->add_option("--algo", c_algo)->check(CLI::IsMember({"fast", "oracle"}));
    compute->add_option("--out", c_out, "write JSON here instead of stdout");
    compute->add_flag("--decimal", c_decimal, "add non-normative decimal average");
    compute->add_flag("--witnesses", c_witnesses, "include per-vertex witness triples");
    compute->add_option("--threads", c_threads, "worker threads (env STEINER_ECC_THREADS)");

    // ---- oracle ----
    auto* oracle = app.add_subcommand("oracle", "brute-force Steiner machinery (arbitrary k)");
    std::string o_input;
    std::string o_out;
    int o_k = 3;
    bool o_sw = false;
    bool o_graph = false;
    bool o_decimal = false;
    std::uint64_t o_cap = se::default_subset_cap;
    oracle->add_option("--input", o_input)->required();
    oracle->add_option("--k", o_k, "subset size (default 3)");
    oracle->add_flag("--sw", o_sw, "also report the Steiner-Wiener index SW_k");
    oracle->add_flag("--graph", o_graph, "input is a general graph (k=3 only)");
    oracle->add_flag("--decimal", o_decimal);
    oracle->add_option("--cap", o_cap, "subset enumeration cap");
    oracle->add_option("--out", o_out);

    // ---- gen ----
    auto* gen = app.add_subcommand("gen", "generate a named family instance or random tree");
    std::string g_family;
    std::string g_out;
    int g_n = 0;
    int g_m = 0;
    int g_delta = 0;
    int g_p = 0;
    int g_d = 0;
    std::uint64_t g_seed = 0;
    bool g_dot = false;
    gen->add_option("--family", g_family,
                    "path|star|complete|cycle|complete_bipartite|broom|balanced_starlike|"
                    "t_nm|tprime|random")
        ->required();
    gen->add_option("--n", g_n)->required();
    gen->add_option("--m", g_m);
    gen->add_option("--delta", g_delta);
    gen->add_option("--p", g_p);
    gen->add_option("--d", g_d);
    gen->add_option("--seed", g_seed);
    gen->add_flag("--dot", g_dot, "emit DOT instead of an edge list");
    gen->add_option("--out", g_out);

    // ---- transform ----
    auto* transform = app.add_subcommand("transform", "pi-transformation steps and reductions");
    std::string t_input;
    std::string t_reduce;
    std::string t_step;
    std::string t_out;
    std::string t_trace_out;
    int t_root = -1;
    bool t_dot = false;
    transform->add_option("--input", t_input)->required();
    transform->add_option("--reduce", t_reduce)
        ->check(CLI::IsMember({"to_star", "to_path", "to_broom", "to_balanced"}));
    transform->add_option("--step", t_step)->check(CLI::IsMember({"pi", "pi_inverse"}));
    transform->add_option("--root", t_root, "root for to_broom (must have degree Delta)");
    transform->add_option("--out", t_out, "write the final tree edge list here");
    transform->add_option("--trace-out", t_trace_out, "write the JSON trace here");
    transform->add_flag("--dot", t_dot, "emit final tree as DOT");

    // ---- verify ----
    auto* verify = app.add_subcommand("verify", "check the extremal bounds, CSV output");
    std::string v_input;
    std::string v_bounds = "all";
    std::string v_out;
    int v_random = 0;
    int v_min_n = 10;
    int v_max_n = 80;
    std::uint64_t v_seed = 1;
    verify->add_option("--input", v_input, "single tree to verify");
    verify->add_option("--bounds", v_bounds, "all or comma-separated bound ids");
    verify->add_option("--random", v_random, "verify this many random trees instead");
    verify->add_option("--min-n", v_min_n);
    verify->add_option("--max-n", v_max_n);
    verify->add_option("--seed", v_seed);
    verify->add_option("--out", v_out);

    // ---- bench ----
    auto* bench = app.add_subcommand("bench", "runtime scaling of fast vs oracle algorithms");
    std::string b_sizes = "500,1000,2000,4000";
    std::string b_algos = "fast";
    std::string b_out;
    int b_trials = 3;
    std::uint64_t b_seed = 1;
    int b_oracle_cap = 400;
    bench->add_option("--sizes", b_sizes, "comma-separated n values");
    bench->add_option("--algos", b_algos, "comma separated: fast,oracle");
    bench->add_option("--trials", b_trials);
    bench->add_option("--seed", b_seed);
    bench->add_option("--oracle-cap", b_oracle_cap, "largest n the oracle may run at");
    bench->add_option("--out", b_out);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*compute) {
            se::Tree t = se::parse_tree(read_file(c_input));
            double t0 = now_ms();
            nlohmann::json doc;
            if (c_algo == "fast") {
                auto result = se::aecc3_fast(t, c_witnesses, thread_count(c_threads));
                doc = se::result_document(result, "fast", now_ms() - t0, c_decimal);
            } else {
                auto report = se::aecc_k_bruteforce(t, 3);
                doc = se::result_document(report, "oracle", now_ms() - t0, nullptr, c_decimal);
            }
            write_output(c_out, doc.dump(2) + "\n");
            return 0;
        }
        if (*oracle) {
            double t0 = now_ms();
            nlohmann::json doc;
            if (o_graph) {
                if (o_k != 3)
                    throw se::error(se::errc::k_out_of_range,
                                    "the general-graph oracle supports k=3 only");
                se::Graph g = se::parse_graph(read_file(o_input));
                auto report = se::aecc3_graph_bruteforce(g);
                doc = se::result_document(report, "graph_oracle", now_ms() - t0, nullptr,
                                          o_decimal);
            } else {
                se::Tree t = se::parse_tree(read_file(o_input));
                auto report = se::aecc_k_bruteforce(t, o_k, o_cap);
                doc = se::result_document(report, "oracle", now_ms() - t0, nullptr, o_decimal);
                if (o_sw) doc["steiner_wiener"] = se::steiner_wiener(t, o_k, o_cap);
            }
            write_output(o_out, doc.dump(2) + "\n");
            return 0;
        }
        if (*gen) {
            if (g_family == "random") {
                se::Tree t = se::random_tree(g_n, g_seed);
                write_output(g_out, g_dot ? se::emit_dot(t) : se::emit_edge_list(t));
                return 0;
            }
            auto inst = se::generate(family_from_flags(g_family, g_n, g_m, g_delta, g_p, g_d));
            if (std::holds_alternative<se::Tree>(inst)) {
                const auto& t = std::get<se::Tree>(inst);
                write_output(g_out, g_dot ? se::emit_dot(t) : se::emit_edge_list(t));
            } else {
                if (g_dot)
                    throw se::error(se::errc::invalid_parameters, "DOT export is for trees");
                write_output(g_out, se::emit_edge_list(std::get<se::Graph>(inst)));
            }
            return 0;
        }
        if (*transform) {
            se::Tree t = se::parse_tree(read_file(t_input));
            se::TransformTrace trace;
            se::Tree result = t;
            if (!t_reduce.empty()) {
                se::ReduceStrategy strategy = se::ReduceStrategy::to_star;
                if (t_reduce == "to_path") strategy = se::ReduceStrategy::to_path;
                if (t_reduce == "to_broom") strategy = se::ReduceStrategy::to_broom;
                if (t_reduce == "to_balanced") strategy = se::ReduceStrategy::to_balanced_starlike;
                auto reduced = se::reduce(t, strategy, t_root);
                result = reduced.tree;
                trace = std::move(reduced.trace);
            } else if (!t_step.empty()) {
                auto sites = (t_step == "pi") ? se::find_pi_sites(t) : se::find_pi_inverse_sites(t);
                if (sites.empty())
                    throw se::error(se::errc::invalid_site, "no applicable site on this tree");
                const auto& s = sites.front();
                std::vector<se::Edge> removed;
                std::vector<se::Edge> added;
                se::Rational before = se::aecc3_fast(t).average;
                result = (t_step == "pi") ? se::apply_pi(t, s, &removed, &added)
                                          : se::apply_pi_inverse(t, s, &removed, &added);
                se::Rational after = se::aecc3_fast(result).average;
                se::TransformStep step;
                step.kind = (t_step == "pi") ? se::StepKind::pi : se::StepKind::pi_inverse;
                step.u = s.u;
                step.w = s.w;
                step.removed_edges = std::move(removed);
                step.added_edges = std::move(added);
                step.aecc_before = before;
                step.aecc_after = after;
                step.equality = before == after;
                trace.steps.push_back(std::move(step));
            } else {
                throw se::error(se::errc::invalid_parameters,
                                "transform needs --reduce or --step");
            }
            write_output(t_out, t_dot ? se::emit_dot(result) : se::emit_edge_list(result));
            if (!t_trace_out.empty())
                write_output(t_trace_out, se::trace_json(trace).dump(2) + "\n");
            return 0;
        }
        if (*verify) {
            std::vector<se::BoundId> bounds;
            if (v_bounds == "all") {
                bounds = se::all_bounds();
            } else {
                std::stringstream ss(v_bounds);
                std::string item;
                while (std::getline(ss, item, ',')) {
                    bool found = false;
                    for (auto id : se::all_bounds())
                        if (item == se::bound_name(id)) {
                            bounds.push_back(id);
                            found = true;
                        }
                    if (!found)
                        throw se::error(se::errc::invalid_parameters, "unknown bound: " + item);
                }
            }
            std::vector<se::Tree> corpus;
            if (v_random > 0) {
                for (int i = 0; i < v_random; ++i) {
                    int range = v_max_n - v_min_n + 1;
                    int n = v_min_n + static_cast<int>((v_seed + 0x9e3779b97f4a7c15ULL * i) % range);
                    corpus.push_back(se::random_tree(std::max(3, n), v_seed + i));
                }
            } else if (!v_input.empty()) {
                corpus.push_back(se::parse_tree(read_file(v_input)));
            } else {
                throw se::error(se::errc::invalid_parameters, "verify needs --input or --random");
            }
            std::string csv = "tree,n," + se::bound_csv_header() + "\n";
            bool violation = false;
            for (std::size_t i = 0; i < corpus.size(); ++i) {
                for (auto id : bounds) {
                    auto report = se::verify_bound(corpus[i], id);
                    csv += std::to_string(i) + "," + std::to_string(corpus[i].n()) + "," +
                           se::bound_csv_row(report) + "\n";
                    if (report.applicable && !report.holds) {
                        // for the dual-candidate bound one passing candidate suffices
                        if (!(report.holds_alt && *report.holds_alt)) violation = true;
                    }
                }
            }
            write_output(v_out, csv);
            if (violation) {
                std::cerr << "bound violation detected\n";
                return 2;
            }
            return 0;
        }
        if (*bench) {
            auto sizes = parse_int_list(b_sizes);
            std::vector<std::string> algos;
            {
                std::stringstream ss(b_algos);
                std::string item;
                while (std::getline(ss, item, ',')) algos.push_back(item);
            }
            std::string csv = "n,algo,trial,elapsed_ns\n";
            for (const auto& algo : algos) {
                std::vector<double> xs;
                std::vector<double> ys;
                for (int n : sizes) {
                    if (algo == "oracle" && n > b_oracle_cap)
                        throw se::error(se::errc::subset_cap_exceeded,
                                        "oracle benchmark capped at n <= " +
                                            std::to_string(b_oracle_cap));
                    // process CPU time: wall-clock minimums are meaningless
                    // on a loaded host, and the slope is a claim about work
                    auto cpu_ns = [] {
                        timespec ts;
                        clock_gettime(CLOCK_PROCESS_CPUTIME_ID, &ts);
                        return static_cast<long long>(ts.tv_sec) * 1000000000LL + ts.tv_nsec;
                    };
                    long long best = std::numeric_limits<long long>::max();
                    for (int trial = 0; trial < b_trials; ++trial) {
                        se::Tree t = se::random_tree(n, b_seed + static_cast<std::uint64_t>(trial));
                        auto start = cpu_ns();
                        if (algo == "fast") {
                            (void)se::aecc3_fast(t);
                        } else {
                            (void)se::aecc_k_bruteforce(t, 3);
                        }
                        auto ns = cpu_ns() - start;
                        csv += std::to_string(n) + "," + algo + "," + std::to_string(trial) +
                               "," + std::to_string(ns) + "\n";
                        best = std::min(best, static_cast<long long>(ns));
                    }
                    xs.push_back(static_cast<double>(n));
                    ys.push_back(static_cast<double>(best));
                }
                csv += "slope," + algo + ",," +
                       std::to_string(loglog_slope(xs, ys)) + "\n";
            }
            write_output(b_out, csv);
            return 0;
        }
    } catch (const se::error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
