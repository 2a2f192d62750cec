#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "nup/bounds.hpp"
#include "nup/generators.hpp"

namespace nup {

/// One batch entry: `count` trials drawn from one generator/radius recipe.
struct TrialSpec {
    GeneratorSpec generator;
    RadiusSpec radii;
    int count = 1;
    std::optional<std::uint64_t> seed;  // group base seed; derived from the config seed if unset
};

struct ExperimentConfig {
    std::vector<TrialSpec> trials;
    CoverMode mode = CoverMode::Exact;
    int subset_cap = kExactSubsetCap;
    int cover_cap = kExactCoverCap;
    double tolerance = kDefaultTolerance;
    std::uint64_t seed = 0;
    std::string output_jsonl;  // empty = do not write a file
    std::string output_csv;    // empty = do not write a file
};

/// Parses the experiment config schema:
///   {"seed":1,"mode":"exact","tolerance":1e-9,
///    "output_jsonl":"reports.jsonl","output_csv":"summary.csv",
///    "trials":[{"count":100,
///               "generator":{"family":"uniform_cube","n":12,"d":2,"norm":"l2"},
///               "radii":{"mode":"nn_fraction","beta":0.9}}]}
/// Unknown families, modes, or malformed fields raise invalid_argument.
ExperimentConfig parse_config(const nlohmann::json& j);

/// CSV row per trial: family,n,d,seed,rbar,diam,ddim_subset,ddim_ambient,
/// bound_theorem1,n_over_bound,verdict. `n` is the size of the verified
/// subset (equal to the generated size unless extraction shrank it).
struct TrialRow {
    std::string family;
    int d = 0;  // 0 for matrix families
    std::uint64_t gen_seed = 0;
    std::uint64_t radius_seed = 0;
    bool extracted = false;
    BoundReport report;
};

struct LinkStats {
    int passes = 0;
    int total = 0;
    double worst_slack = 0.0;  // minimum rhs - lhs observed
};

struct ExperimentResult {
    std::vector<TrialRow> rows;
    int pass_count = 0;
    int fail_count = 0;
    std::map<std::string, LinkStats> link_stats;
    double worst_theorem1_slack = 0.0;  // minimum bound - n over all trials
    bool ok = true;  // no fail verdict and links a-c held on every trial
    std::string jsonl;  // full JSON-lines text (also written to output_jsonl)
    std::string csv;    // full CSV text including header
};

/**
 * Runs every trial: generate instance and radii, extract a maximum (exact
 * when the point count fits the cap, greedy otherwise) R-separated subset
 * if the raw set is not separated, then run the full per-instance
 * pipeline. Trial seeds derive deterministically from the config seed, so
 * identical configs reproduce byte-identical jsonl/csv text.
 */
ExperimentResult run_experiment(const ExperimentConfig& config);

/// Human-readable aggregate: trial/pass counts, per-link pass-rate table,
/// and worst slacks.
std::string experiment_summary(const ExperimentResult& result);

}  // namespace nup
