#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "perturb/codegen.hpp"
#include "perturb/errors.hpp"
#include "perturb/eval.hpp"
#include "perturb/experiment.hpp"
#include "perturb/generators.hpp"
#include "perturb/mesh.hpp"
#include "perturb/tables.hpp"

namespace {

using namespace perturb;
using ordered_json = nlohmann::ordered_json;

SlotPattern parse_pattern(const std::string& text, std::size_t arity) {
    SlotPattern p;
    if (text.empty()) {
        for (std::size_t i = 0; i < arity; ++i) p.slots.push_back(static_cast<std::int64_t>(i));
        return p;
    }
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) p.slots.push_back(std::stoll(item));
    return p;
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::ParseError, "cannot write '" + path + "'");
    out << content;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ParseError, "cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

EvaluationTable table_from_options(const std::string& table_path, const std::string& predicate,
                                   const std::string& scheme, const std::string& pattern) {
    if (!table_path.empty()) return table_from_json(read_file(table_path));
    TableKind kind = table_kind_from_name(predicate);
    SchemeId s = scheme_from_name(scheme);
    return compute_table(kind, parse_pattern(pattern, table_kind_arity(kind)), s);
}

ordered_json stats_json(const EvaluationTable& t) {
    ordered_json j;
    j["kind"] = table_kind_name(t.kind);
    j["scheme"] = scheme_name(t.scheme);
    j["max_depth"] = t.max_depth();
    ordered_json rows = ordered_json::array();
    for (const auto& st : table_stats(t).rows) {
        ordered_json r;
        r["terms"] = st.terms;
        r["ops"] = st.ops;
        rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    j["terminal"] = t.terminal ? ordered_json(t.terminal->str()) : ordered_json(nullptr);
    return j;
}

// Mirrors an oracle-vs-table comparison over a seeded corpus: half random,
// half synthetically degenerate inputs, for both epsilon schemes. Inputs the
// global scheme cannot resolve (cocircular antipodal concurrency) count as
// consistent when both the table scan and the oracle refuse them.
int run_oracle_check(std::uint64_t n, std::uint64_t seed) {
    Rational eta(1, 2);
    std::uint64_t checked = 0, mismatched = 0, refusals = 0;
    for (SchemeId scheme : {SchemeId::E, SchemeId::A}) {
        for (std::uint64_t k = 0; k < n; ++k) {
            auto rnd = gen_random_triple(seed, k);
            auto col = gen_collinear(seed + 1, k);
            for (const auto& pts : {rnd, col}) {
                int table_sign = orient(pts[0], pts[1], pts[2], scheme).sign;
                int oracle_sign = oracle_orient(pts[0], pts[1], pts[2], scheme, eta);
                ++checked;
                if (table_sign != oracle_sign) ++mismatched;
            }
            auto rseg = gen_random_segments(seed + 2, k);
            auto cseg = gen_concurrent(seed + 3, k);
            for (const auto& segs : {rseg, cseg}) {
                int table_sign = 0, oracle_sign = 0;
                bool table_refused = false, oracle_refused = false;
                try {
                    table_sign = segment_order_param(segs[0], segs[1], segs[2], scheme).sign;
                } catch (const Error& e) {
                    if (e.code() != ErrorCode::SchemeLimitation) throw;
                    table_refused = true;
                }
                try {
                    oracle_sign = oracle_segment_order(segs[0], segs[1], segs[2], scheme, eta);
                } catch (const Error& e) {
                    if (e.code() != ErrorCode::NoStabilization) throw;
                    oracle_refused = true;
                }
                ++checked;
                if (table_refused || oracle_refused) {
                    if (table_refused && oracle_refused)
                        ++refusals;
                    else
                        ++mismatched;
                } else if (table_sign != oracle_sign) {
                    ++mismatched;
                }
            }
        }
    }
    ordered_json j;
    j["inputs"] = checked;
    j["mismatches"] = mismatched;
    j["consistent_refusals"] = refusals;
    j["seed"] = seed;
    std::cout << j.dump(2) << "\n";
    return mismatched == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Symbolic perturbation toolkit for planar predicates"};
    app.require_subcommand(1);

    std::string predicate = "orient3", scheme = "E", pattern, out_path, table_path, dialect = "cxx";
    std::string mesh_path, format = "json";
    std::uint64_t samples = 1000, seed = 0, n = 100;

    auto* cmd_table = app.add_subcommand("table", "Build an evaluation table and write it as JSON");
    cmd_table->add_option("--predicate", predicate, "lex|orient3|seg-order-param|seg-order-dual");
    cmd_table->add_option("--scheme", scheme, "E|A|YL|YT");
    cmd_table->add_option("--pattern", pattern, "comma-separated global point indices per slot");
    cmd_table->add_option("--out", out_path, "output file (default stdout)");

    auto* cmd_stats = app.add_subcommand("stats", "Per-row term/operation counts of a table");
    cmd_stats->add_option("--table", table_path, "table JSON file");
    cmd_stats->add_option("--predicate", predicate);
    cmd_stats->add_option("--scheme", scheme);
    cmd_stats->add_option("--pattern", pattern);

    auto* cmd_depth = app.add_subcommand("depth-experiment",
                                         "Depth/operation statistics on synthetic degenerate cases");
    cmd_depth->add_option("--predicate", predicate, "orient|order");
    cmd_depth->add_option("--scheme", scheme);
    cmd_depth->add_option("-n,--samples", samples);
    cmd_depth->add_option("--seed", seed);
    bool as_csv = false;
    cmd_depth->add_flag("--csv", as_csv, "CSV output instead of JSON");

    auto* cmd_scan = app.add_subcommand("scan", "Count degenerate configurations in a mesh");
    cmd_scan->add_option("--mesh", mesh_path)->required();
    cmd_scan->add_option("--samples", samples);
    cmd_scan->add_option("--seed", seed);

    auto* cmd_emit = app.add_subcommand("emit", "Emit evaluator source code from a table");
    cmd_emit->add_option("--table", table_path, "table JSON file");
    cmd_emit->add_option("--predicate", predicate);
    cmd_emit->add_option("--scheme", scheme);
    cmd_emit->add_option("--pattern", pattern);
    cmd_emit->add_option("--dialect", dialect, "dialect name or template file path");
    cmd_emit->add_option("--out", out_path, "output file (default stdout)");

    auto* cmd_oracle = app.add_subcommand("oracle-check",
                                          "Cross-check table evaluation against the numeric oracle");
    cmd_oracle->add_option("-n,--samples", n, "inputs per generator, scheme and predicate");
    cmd_oracle->add_option("--seed", seed);

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_table->parsed()) {
            write_output(out_path, table_to_json(table_from_options("", predicate, scheme, pattern)));
        } else if (cmd_stats->parsed()) {
            auto t = table_from_options(table_path, predicate, scheme, pattern);
            std::cout << stats_json(t).dump(2) << "\n";
        } else if (cmd_depth->parsed()) {
            ExperimentConfig cfg;
            cfg.predicate = predicate == "order" || predicate == "segment_order_param"
                                ? PredicateKind::SegOrderParam
                                : predicate_from_name(predicate);
            cfg.scheme = scheme_from_name(scheme);
            cfg.samples = samples;
            cfg.seed = seed;
            auto report = run_depth_experiment(cfg);
            std::cout << (as_csv ? report.to_csv() : report.to_json());
        } else if (cmd_scan->parsed()) {
            auto mesh = load_mesh(mesh_path);
            std::cout << scan_mesh(mesh, samples, seed).to_json();
        } else if (cmd_emit->parsed()) {
            auto t = table_from_options(table_path, predicate, scheme, pattern);
            write_output(out_path, emit_source(lower_table(t), load_dialect(dialect)));
        } else if (cmd_oracle->parsed()) {
            return run_oracle_check(n, seed);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
