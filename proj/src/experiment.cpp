#include "nup/experiment.hpp"

#include <cstdio>
#include <limits>
#include <sstream>

#include "nup/io.hpp"
#include "nup/packing.hpp"

namespace nup {

using nlohmann::json;

namespace {

GeneratorSpec parse_generator(const json& j) {
    GeneratorSpec spec;
    spec.family = family_from_string(j.at("family").get<std::string>());
    if (j.contains("n")) spec.n = j.at("n").get<Index>();
    if (j.contains("d")) spec.d = j.at("d").get<int>();
    if (j.contains("norm")) spec.norm = norm_from_string(j.at("norm").get<std::string>());
    if (j.contains("k")) spec.k = j.at("k").get<int>();
    return spec;
}

RadiusSpec parse_radii(const json& j) {
    RadiusSpec spec;
    spec.mode = radius_mode_from_string(j.at("mode").get<std::string>());
    if (j.contains("r")) spec.r = j.at("r").get<double>();
    if (j.contains("lo")) spec.lo = j.at("lo").get<double>();
    if (j.contains("hi")) spec.hi = j.at("hi").get<double>();
    if (j.contains("beta")) spec.beta = j.at("beta").get<double>();
    if (j.contains("alpha")) spec.alpha = j.at("alpha").get<double>();
    if (j.contains("scale")) spec.scale = j.at("scale").get<double>();
    if (j.contains("cap")) spec.cap = j.at("cap").get<double>();
    return spec;
}

std::string fmt_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

}  // namespace

ExperimentConfig parse_config(const json& j) {
    if (!j.is_object()) throw std::invalid_argument("experiment config must be a JSON object");
    ExperimentConfig config;
    if (j.contains("seed")) config.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("mode")) config.mode = cover_mode_from_string(j.at("mode").get<std::string>());
    if (j.contains("subset_cap")) config.subset_cap = j.at("subset_cap").get<int>();
    if (j.contains("cover_cap")) config.cover_cap = j.at("cover_cap").get<int>();
    if (j.contains("tolerance")) config.tolerance = j.at("tolerance").get<double>();
    if (j.contains("output_jsonl")) config.output_jsonl = j.at("output_jsonl").get<std::string>();
    if (j.contains("output_csv")) config.output_csv = j.at("output_csv").get<std::string>();
    if (j.contains("trials")) {
        for (const json& t : j.at("trials")) {
            TrialSpec spec;
            spec.generator = parse_generator(t.at("generator"));
            spec.radii = parse_radii(t.at("radii"));
            if (t.contains("count")) spec.count = t.at("count").get<int>();
            if (spec.count < 0) throw std::invalid_argument("trial count must be >= 0");
            if (t.contains("seed")) spec.seed = t.at("seed").get<std::uint64_t>();
            config.trials.push_back(std::move(spec));
        }
    }
    return config;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
    ExperimentResult result;
    result.worst_theorem1_slack = std::numeric_limits<double>::infinity();

    std::ostringstream jsonl;
    std::ostringstream csv;
    csv << "family,n,d,seed,rbar,diam,ddim_subset,ddim_ambient,bound_theorem1,"
           "n_over_bound,verdict\n";

    VerifyOptions options;
    options.mode = config.mode;
    options.cover_cap = config.cover_cap;
    options.subset_cap = config.subset_cap;
    options.tolerance = config.tolerance;

    Index ordinal = 0;
    for (std::size_t g = 0; g < config.trials.size(); ++g) {
        const TrialSpec& group = config.trials[g];
        // Non-overlapping per-group seed blocks keep every trial's stream
        // independent of how the groups are ordered or sized.
        const std::uint64_t base =
            group.seed ? *group.seed
                       : config.seed + (static_cast<std::uint64_t>(g + 1) << 32);
        for (int i = 0; i < group.count; ++i, ++ordinal) {
            GeneratorSpec gspec = group.generator;
            gspec.seed = base + 2 * static_cast<std::uint64_t>(i);
            RadiusSpec rspec = group.radii;
            rspec.seed = gspec.seed + 1;

            const MetricInstance instance = gen_instance(gspec);
            const Subset full = instance.all_points();
            const RadiusAssignment radii = gen_radii(instance, full, rspec);

            TrialRow row;
            row.family = to_string(gspec.family);
            row.d = instance.is_coords() ? static_cast<int>(instance.dim()) : 0;
            row.gen_seed = gspec.seed;
            row.radius_seed = rspec.seed;

            Subset subset = full;
            if (!is_R_separated(instance, full, radii)) {
                row.extracted = true;
                subset = static_cast<int>(full.size()) <= config.subset_cap
                             ? max_separated_subset_exact(instance, full, radii,
                                                          config.subset_cap)
                             : max_separated_subset_greedy(instance, full, radii);
            }
            row.report = analyze_instance(instance, subset, radii, options);

            json line;
            line["trial"] = ordinal;
            line["family"] = row.family;
            line["gen_seed"] = row.gen_seed;
            line["radius_seed"] = row.radius_seed;
            line["extracted"] = row.extracted;
            line["report"] = report_to_json(row.report);
            jsonl << line.dump() << '\n';

            const BoundReport& report = row.report;
            const double n_over_bound =
                report.theorem1 > 0.0 ? static_cast<double>(report.n) / report.theorem1 : 0.0;
            csv << row.family << ',' << report.n << ',' << row.d << ',' << row.gen_seed << ','
                << fmt_real(report.rbar) << ',' << fmt_real(report.diam) << ','
                << fmt_real(report.ddim_subset_upper) << ','
                << fmt_real(report.ddim_ambient_upper) << ',' << fmt_real(report.theorem1) << ','
                << fmt_real(n_over_bound) << ',' << report.verdict << '\n';

            if (report.verdict == "pass") {
                ++result.pass_count;
            } else if (report.verdict == "fail") {
                ++result.fail_count;
                result.ok = false;
            }
            result.worst_theorem1_slack = std::min(result.worst_theorem1_slack, report.slack);
            for (const ChainLink& link : report.chain) {
                LinkStats& stats = result.link_stats[link.name];
                if (stats.total == 0) {
                    stats.worst_slack = std::numeric_limits<double>::infinity();
                }
                ++stats.total;
                if (link.holds) ++stats.passes;
                stats.worst_slack = std::min(stats.worst_slack, link.slack);
                if (!link.holds && (link.name == "a" || link.name == "b" || link.name == "c")) {
                    result.ok = false;
                }
            }
            result.rows.push_back(std::move(row));
        }
    }

    result.jsonl = jsonl.str();
    result.csv = csv.str();
    if (!config.output_jsonl.empty()) write_text(config.output_jsonl, result.jsonl);
    if (!config.output_csv.empty()) write_text(config.output_csv, result.csv);
    return result;
}

std::string experiment_summary(const ExperimentResult& result) {
    std::ostringstream out;
    out << "trials: " << result.rows.size() << "  pass: " << result.pass_count
        << "  fail: " << result.fail_count << '\n';
    if (!result.rows.empty()) {
        out << "worst theorem1 slack (bound - n): " << fmt_real(result.worst_theorem1_slack)
            << '\n';
    }
    if (!result.link_stats.empty()) {
        out << "chain link pass rates:\n";
        for (const auto& [name, stats] : result.link_stats) {
            out << "  link " << name << ": " << stats.passes << '/' << stats.total
                << "  worst slack " << fmt_real(stats.worst_slack) << '\n';
        }
    }
    out << (result.ok ? "OK: all asserted checks passed" : "FAIL: an asserted check failed")
        << '\n';
    return out.str();
}

}  // namespace nup
