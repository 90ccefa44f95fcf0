#include "perturb/experiment.hpp"

#include <cmath>
#include <sstream>

#include <json.hpp>

#include "perturb/errors.hpp"
#include "perturb/eval.hpp"
#include "perturb/generators.hpp"

namespace perturb {

double DepthReport::depth_fraction(std::size_t depth) const {
    auto it = depth_histogram.find(depth);
    std::uint64_t total = 0;
    for (const auto& [d, c] : depth_histogram) total += c;
    if (total == 0) return 0.0;
    return it == depth_histogram.end() ? 0.0 : double(it->second) / double(total);
}

DepthReport run_depth_experiment(const ExperimentConfig& cfg) {
    if (cfg.samples < 1) throw Error(ErrorCode::ParseError, "sample count must be at least 1");
    if (cfg.predicate != PredicateKind::Orient3 && cfg.predicate != PredicateKind::SegOrderParam)
        throw Error(ErrorCode::ParseError,
                    "depth experiments cover the orientation and segment order predicates");
    DepthReport report;
    report.config = cfg;
    long double depth_sum = 0, depth_sq = 0, ops_sum = 0, ops_sq = 0;
    for (std::uint64_t k = 0; k < cfg.samples; ++k) {
        EvalReport r;
        if (cfg.predicate == PredicateKind::Orient3) {
            auto pts = gen_collinear(cfg.seed, k);
            r = orient(pts[0], pts[1], pts[2], cfg.scheme);
        } else {
            auto segs = gen_concurrent(cfg.seed, k);
            r = segment_order_param(segs[0], segs[1], segs[2], cfg.scheme);
        }
        depth_sum += static_cast<long double>(r.depth);
        depth_sq += static_cast<long double>(r.depth) * static_cast<long double>(r.depth);
        ops_sum += static_cast<long double>(r.ops_used);
        ops_sq += static_cast<long double>(r.ops_used) * static_cast<long double>(r.ops_used);
        report.depth_histogram[r.depth] += 1;
    }
    long double n = static_cast<long double>(cfg.samples);
    report.depth_mean = double(depth_sum / n);
    report.depth_sd = double(std::sqrt(std::max(0.0L, depth_sq / n - (depth_sum / n) * (depth_sum / n))));
    report.ops_mean = double(ops_sum / n);
    report.ops_sd = double(std::sqrt(std::max(0.0L, ops_sq / n - (ops_sum / n) * (ops_sum / n))));
    return report;
}

std::string DepthReport::to_json() const {
    nlohmann::ordered_json j;
    j["predicate"] = predicate_name(config.predicate);
    j["scheme"] = scheme_name(config.scheme);
    j["samples"] = config.samples;
    j["seed"] = config.seed;
    j["depth"]["mean"] = depth_mean;
    j["depth"]["sd"] = depth_sd;
    j["ops"]["mean"] = ops_mean;
    j["ops"]["sd"] = ops_sd;
    nlohmann::ordered_json hist = nlohmann::ordered_json::object();
    for (const auto& [d, c] : depth_histogram) hist[std::to_string(d)] = c;
    j["depth_histogram"] = std::move(hist);
    return j.dump(2) + "\n";
}

std::string DepthReport::to_csv() const {
    std::ostringstream os;
    os << "predicate,scheme,samples,seed,depth_mean,depth_sd,ops_mean,ops_sd\n";
    os << predicate_name(config.predicate) << "," << scheme_name(config.scheme) << ","
       << config.samples << "," << config.seed << "," << depth_mean << "," << depth_sd << ","
       << ops_mean << "," << ops_sd << "\n";
    return os.str();
}

}  // namespace perturb
