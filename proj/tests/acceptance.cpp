// Acceptance gate: every numbered criterion below runs at the stated scale
// and prints exactly one PASS/FAIL line. The binary exits nonzero when any
// criterion fails, with indented diagnostics under the failing line.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "nup/bounds.hpp"
#include "nup/dimension.hpp"
#include "nup/experiment.hpp"
#include "nup/generators.hpp"
#include "nup/io.hpp"
#include "nup/packing.hpp"
#include "nup/rng.hpp"
#include "nup/spanning.hpp"

using namespace nup;

namespace {

class Criterion {
public:
    Criterion(int id, std::string title) : id_(id), title_(std::move(title)) {
        start_ = std::chrono::steady_clock::now();
    }

    void require(bool condition, const std::string& diagnostic) {
        if (!condition) failures_.push_back(diagnostic);
    }

    void info(const std::string& line) { notes_.push_back(line); }

    double seconds() const {
        const auto now = std::chrono::steady_clock::now();
        return std::chrono::duration<double>(now - start_).count();
    }

    /// Prints the one-line verdict (plus diagnostics when failing) and
    /// returns whether the criterion passed.
    bool finish(double time_limit_s = 0.0) {
        const double elapsed = seconds();
        if (time_limit_s > 0.0 && elapsed > time_limit_s) {
            char buf[128];
            std::snprintf(buf, sizeof(buf), "runtime %.1f s exceeded the %.0f s budget", elapsed,
                          time_limit_s);
            failures_.emplace_back(buf);
        }
        const bool pass = failures_.empty();
        char line[256];
        std::snprintf(line, sizeof(line), "%s  criterion %d: %s (%.2f s)",
                      pass ? "PASS" : "FAIL", id_, title_.c_str(), elapsed);
        std::cout << line << '\n';
        for (const std::string& note : notes_) std::cout << "      " << note << '\n';
        for (const std::string& failure : failures_) std::cout << "      ! " << failure << '\n';
        return pass;
    }

private:
    int id_;
    std::string title_;
    std::chrono::steady_clock::time_point start_;
    std::vector<std::string> failures_;
    std::vector<std::string> notes_;
};

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

MetricInstance equidistant(Index n) {
    GeneratorSpec spec;
    spec.family = Family::Equidistant;
    spec.n = n;
    return gen_instance(spec);
}

MetricInstance random_family_instance(Rng& rng, Index n) {
    GeneratorSpec spec;
    spec.seed = rng.integer(std::uint64_t{1} << 40);
    spec.n = n;
    if (rng.integer(4) == 3) {
        spec.family = Family::RandomMetric;
    } else {
        spec.family = Family::UniformCube;
        spec.d = 1 + static_cast<int>(rng.integer(3));
        const std::uint64_t norm_pick = rng.integer(3);
        spec.norm = norm_pick == 0 ? Norm::L1 : norm_pick == 1 ? Norm::L2 : Norm::Linf;
    }
    return gen_instance(spec);
}

RadiusAssignment random_mode_radii(Rng& rng, const MetricInstance& instance,
                                   const Subset& subset) {
    RadiusSpec spec;
    spec.seed = rng.integer(std::uint64_t{1} << 40);
    switch (rng.integer(4)) {
        case 0:
            spec.mode = RadiusMode::Constant;
            spec.r = 0.05 + 0.5 * rng.uniform();
            break;
        case 1:
            spec.mode = RadiusMode::UniformRange;
            spec.lo = 0.05;
            spec.hi = 0.05 + 0.6 * rng.uniform();
            break;
        case 2:
            spec.mode = RadiusMode::Pareto;
            spec.alpha = 1.5 + rng.uniform();
            spec.scale = 0.05;
            spec.cap = 0.8;
            break;
        default:
            spec.mode = RadiusMode::NnFraction;
            spec.beta = 0.3 + 0.65 * rng.uniform();
            break;
    }
    return gen_radii(instance, subset, spec);
}

/// 2^N enumeration oracle: lexicographically smallest maximum R-separated
/// subset, independent of the production solver.
Subset oracle_max_separated(const MetricInstance& instance, const Subset& subset,
                            const RadiusAssignment& radii) {
    const int n = static_cast<int>(subset.size());
    std::vector<std::uint64_t> conflict(static_cast<std::size_t>(n), 0);
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            const double rho = instance.distance(subset[static_cast<std::size_t>(a)],
                                                 subset[static_cast<std::size_t>(b)]);
            if (pair_conflicts(rho, radii.at(subset[static_cast<std::size_t>(a)]),
                               radii.at(subset[static_cast<std::size_t>(b)]))) {
                conflict[static_cast<std::size_t>(a)] |= std::uint64_t{1} << b;
                conflict[static_cast<std::size_t>(b)] |= std::uint64_t{1} << a;
            }
        }
    }
    Subset best;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        const int size = std::popcount(mask);
        if (size < static_cast<int>(best.size())) continue;
        bool independent = true;
        for (int a = 0; a < n && independent; ++a) {
            if ((mask >> a) & 1) independent = (conflict[static_cast<std::size_t>(a)] & mask) == 0;
        }
        if (!independent) continue;
        Subset ids;
        for (int a = 0; a < n; ++a) {
            if ((mask >> a) & 1) ids.push_back(subset[static_cast<std::size_t>(a)]);
        }
        if (ids.size() > best.size() ||
            (ids.size() == best.size() &&
             std::lexicographical_compare(ids.begin(), ids.end(), best.begin(), best.end()))) {
            best = std::move(ids);
        }
    }
    return best;
}

/// Points rejection-sampled inside the unit ball of the given norm.
MetricInstance unit_ball_instance(Rng& rng, Index n, int d, Norm norm) {
    Eigen::MatrixXd points(n, d);
    for (Index i = 0; i < n;) {
        Eigen::RowVectorXd candidate(d);
        for (int c = 0; c < d; ++c) candidate(c) = rng.uniform(-1.0, 1.0);
        const double len = norm == Norm::L1     ? candidate.lpNorm<1>()
                           : norm == Norm::Linf ? candidate.lpNorm<Eigen::Infinity>()
                                                : candidate.norm();
        if (len > 1.0) continue;
        points.row(i) = candidate;
        bool duplicate = false;
        for (Index j = 0; j < i && !duplicate; ++j) {
            duplicate = (points.row(i) - points.row(j)).norm() == 0.0;
        }
        if (!duplicate) ++i;
    }
    return MetricInstance::from_coords(std::move(points), norm);
}

// ---------------------------------------------------------------------------

bool criterion_1(std::vector<MetricInstance>& equis_out) {
    Criterion c(1, "equidistant tightness of the classical bound");
    for (Index n : {2, 4, 8, 16}) {
        const MetricInstance equi = equidistant(n);
        const Subset all = equi.all_points();

        const Packing packing = packing_number(equi, all, 0.99);
        c.require(packing.count == n, "packing_number(equidistant " + std::to_string(n) +
                                          ", r=0.99) = " + std::to_string(packing.count));

        const double dd = ddim_upper(equi, all, CoverMode::Exact).upper;
        const double expected = std::log2(static_cast<double>(n));
        c.require(dd == expected, "ddim_upper(equidistant " + std::to_string(n) + ") = " +
                                      fmt(dd) + ", expected exactly " + fmt(expected));

        const double classical = classical_bound(1.0, 0.99, dd);
        c.require(classical >= static_cast<double>(n),
                  "classical bound " + fmt(classical) + " below n = " + std::to_string(n));
        const double ratio = classical / static_cast<double>(n);
        const double limit = std::pow(static_cast<double>(n), 0.02);
        c.require(ratio <= limit, "tightness ratio " + fmt(ratio) + " above n^0.02 = " +
                                      fmt(limit) + " at n = " + std::to_string(n));
        equis_out.push_back(equi);
    }
    return c.finish(5.0);
}

ExperimentConfig sweep_config() {
    ExperimentConfig config;
    config.seed = 20250823;
    config.mode = CoverMode::Exact;

    const std::vector<std::pair<Family, int>> families = {
        {Family::UniformCube, 1},
        {Family::UniformCube, 2},
        {Family::UniformCube, 3},
        {Family::RandomMetric, 0},
    };
    const std::vector<Index> sizes = {8, 12, 16};

    for (const auto& [family, d] : families) {
        for (Index n : sizes) {
            for (int mode = 0; mode < 3; ++mode) {
                TrialSpec trial;
                trial.generator.family = family;
                trial.generator.n = n;
                trial.generator.d = std::max(d, 1);
                trial.count = 28;
                switch (mode) {
                    case 0:
                        trial.radii.mode = RadiusMode::Constant;
                        trial.radii.r = family == Family::RandomMetric ? 0.35 : 0.2;
                        break;
                    case 1:
                        trial.radii.mode = RadiusMode::NnFraction;
                        trial.radii.beta = 0.9;
                        break;
                    default:
                        trial.radii.mode = RadiusMode::UniformRange;
                        trial.radii.lo = 0.05;
                        trial.radii.hi = 0.35;
                        break;
                }
                config.trials.push_back(trial);
            }
        }
    }
    return config;
}

bool criterion_2(ExperimentResult& sweep_out) {
    Criterion c(2, "average-radius bound holds on a 1008-trial exact sweep");
    sweep_out = run_experiment(sweep_config());
    c.require(sweep_out.rows.size() >= 1000,
              "sweep ran only " + std::to_string(sweep_out.rows.size()) + " trials");
    c.require(sweep_out.fail_count == 0,
              std::to_string(sweep_out.fail_count) + " trials failed the bound");
    c.require(sweep_out.pass_count == static_cast<int>(sweep_out.rows.size()),
              "pass count mismatch");
    c.require(sweep_out.worst_theorem1_slack >= -1e-9,
              "worst slack " + fmt(sweep_out.worst_theorem1_slack) + " below -1e-9");
    c.info("trials: " + std::to_string(sweep_out.rows.size()) +
           ", worst slack (bound - n): " + fmt(sweep_out.worst_theorem1_slack));
    return c.finish(120.0);
}

bool criterion_3(const ExperimentResult& sweep) {
    Criterion c(3, "proof-chain links: a-c asserted, d-e on safe families");

    for (const std::string name : {"a", "b", "c"}) {
        const auto it = sweep.link_stats.find(name);
        if (it == sweep.link_stats.end()) {
            c.require(false, "link " + name + " never evaluated");
            continue;
        }
        c.require(it->second.passes == it->second.total,
                  "link " + name + ": " + std::to_string(it->second.passes) + "/" +
                      std::to_string(it->second.total));
    }

    std::ostringstream table;
    table << "link pass rates over the sweep:";
    for (const auto& [name, stats] : sweep.link_stats) {
        table << "  " << name << " " << stats.passes << "/" << stats.total;
    }
    c.info(table.str());

    // analytically safe families for the MST-length-dependent links
    struct Safe {
        std::string label;
        MetricInstance instance;
        RadiusAssignment radii;
    };
    std::vector<Safe> safe;
    for (Index n : {4, 8, 16}) {
        const MetricInstance equi = equidistant(n);
        safe.push_back({"equidistant n=" + std::to_string(n), equi,
                        RadiusAssignment::uniform(equi.all_points(), 0.99)});
    }
    for (int k : {4, 8, 16}) {
        GeneratorSpec spec;
        spec.family = Family::Grid;
        spec.d = 1;
        spec.k = k;
        const MetricInstance path = gen_instance(spec);
        RadiusSpec rspec;
        rspec.mode = RadiusMode::NnFraction;
        rspec.beta = 0.9;
        safe.push_back({"path k=" + std::to_string(k), path,
                        gen_radii(path, path.all_points(), rspec)});
    }
    for (int k : {2, 3, 4}) {
        GeneratorSpec spec;
        spec.family = Family::Grid;
        spec.d = 2;
        spec.k = k;
        const MetricInstance grid = gen_instance(spec);
        RadiusSpec rspec;
        rspec.mode = RadiusMode::NnFraction;
        rspec.beta = 0.9;
        safe.push_back({"grid k=" + std::to_string(k), grid,
                        gen_radii(grid, grid.all_points(), rspec)});
    }

    for (const Safe& entry : safe) {
        const ProofChain chain =
            proof_chain_check(entry.instance, entry.instance.all_points(), entry.radii);
        c.require(chain.asserted_hold, entry.label + ": an asserted link failed");
        bool d_seen = false;
        bool e_seen = false;
        for (const ChainLink& link : chain.links) {
            if (link.name == "d") {
                d_seen = true;
                c.require(link.holds, entry.label + ": link d " + fmt(link.lhs) + " > " +
                                          fmt(link.rhs));
            }
            if (link.name == "e") {
                e_seen = true;
                c.require(link.holds, entry.label + ": link e " + fmt(link.lhs) + " > " +
                                          fmt(link.rhs));
            }
        }
        c.require(d_seen && e_seen, entry.label + ": links d/e not evaluated");
    }
    return c.finish();
}

bool criterion_4() {
    Criterion c(4, "exact solver matches 2^N enumeration on 200 instances");
    Rng rng(404);
    for (int trial = 0; trial < 200; ++trial) {
        const Index n = 4 + static_cast<Index>(rng.integer(12));  // 4..15
        const MetricInstance instance = random_family_instance(rng, n);
        const Subset all = instance.all_points();
        const RadiusAssignment radii = random_mode_radii(rng, instance, all);

        const Subset oracle = oracle_max_separated(instance, all, radii);
        const Subset solver = max_separated_subset_exact(instance, all, radii);
        if (solver != oracle) {
            c.require(false, "trial " + std::to_string(trial) + ": solver size " +
                                 std::to_string(solver.size()) + " vs oracle " +
                                 std::to_string(oracle.size()));
            continue;
        }
        c.require(is_R_separated(instance, solver, radii),
                  "trial " + std::to_string(trial) + ": witness not separated");
    }
    return c.finish(60.0);
}

bool criterion_5() {
    Criterion c(5, "uniform packing equals the non-uniform solver under R == r");
    Rng rng(505);
    for (int trial = 0; trial < 200; ++trial) {
        const Index n = 4 + static_cast<Index>(rng.integer(11));  // 4..14
        const MetricInstance instance = random_family_instance(rng, n);
        const Subset all = instance.all_points();
        const double diam = diameter(instance, all);
        const double r = diam * (0.05 + 0.9 * rng.uniform());

        const Packing packing = packing_number(instance, all, r);
        const Subset nonuniform =
            max_separated_subset_exact(instance, all, RadiusAssignment::uniform(all, r));
        const Subset oracle =
            oracle_max_separated(instance, all, RadiusAssignment::uniform(all, r));

        c.require(packing.count == static_cast<Index>(nonuniform.size()),
                  "trial " + std::to_string(trial) + ": packing " +
                      std::to_string(packing.count) + " vs solver " +
                      std::to_string(nonuniform.size()));
        c.require(packing.witness == nonuniform,
                  "trial " + std::to_string(trial) + ": witnesses differ");
        c.require(packing.count == static_cast<Index>(oracle.size()),
                  "trial " + std::to_string(trial) + ": oracle disagrees");
        c.require(is_uniform_separated(instance, packing.witness, r),
                  "trial " + std::to_string(trial) + ": witness not r-separated");
    }
    return c.finish();
}

bool criterion_6() {
    Criterion c(6, "volumetric pipeline on 504 unit-ball subsets");
    Rng rng(606);
    int ran = 0;
    for (int d : {1, 2, 3}) {
        for (Norm norm : {Norm::L2, Norm::Linf}) {
            for (int trial = 0; trial < 84; ++trial, ++ran) {
                const Index n = 4 + static_cast<Index>(rng.integer(9));  // 4..12
                const MetricInstance instance = unit_ball_instance(rng, n, d, norm);
                const Subset all = instance.all_points();
                RadiusSpec rspec;
                rspec.mode = RadiusMode::NnFraction;
                rspec.beta = 0.9;
                rspec.seed = rng.integer(std::uint64_t{1} << 40);
                const RadiusAssignment radii = gen_radii(instance, all, rspec);

                const std::string label = "d=" + std::to_string(d) + " " + to_string(norm) +
                                          " trial " + std::to_string(trial);
                if (!is_R_separated(instance, all, radii)) {
                    c.require(false, label + ": nn_fraction subset not separated");
                    continue;
                }
                const BoundReport report = analyze_instance(instance, all, radii);
                if (!report.volumetric_checks) {
                    c.require(false, label + ": volumetric checks missing");
                    continue;
                }
                const VolumetricChecks& v = *report.volumetric_checks;
                c.require(v.sum_holds, label + ": sum R^d = " + fmt(v.sum_power) + " > " +
                                           fmt(v.limit));
                c.require(v.jensen.holds, label + ": jensen " + fmt(v.jensen.lhs) + " > " +
                                              fmt(v.jensen.rhs));
                c.require(v.cardinality_holds, label + ": n = " + std::to_string(report.n) +
                                                   " above (4/rbar)^d = " + fmt(v.bound));
                c.require(v.disjoint_holds, label + ": half-radius balls not disjoint");
            }
        }
    }
    c.info("trials: " + std::to_string(ran) + " across d in {1,2,3} x {l2, linf}");
    return c.finish();
}

bool criterion_7() {
    Criterion c(7, "two MST algorithms agree on 100 instances up to N = 200");
    Rng rng(707);
    for (int trial = 0; trial < 100; ++trial) {
        GeneratorSpec spec;
        spec.seed = rng.integer(std::uint64_t{1} << 40);
        if (trial % 2 == 0) {
            spec.family = Family::UniformCube;
            spec.n = 20 + static_cast<Index>(rng.integer(181));  // 20..200
            spec.d = 1 + static_cast<int>(rng.integer(3));
        } else {
            spec.family = Family::RandomMetric;
            spec.n = 10 + static_cast<Index>(rng.integer(71));  // 10..80
        }
        const MetricInstance instance = gen_instance(spec);
        const Subset all = instance.all_points();
        const double kruskal = minimum_spanning_tree(instance, all).total_length;
        const double prim = mst_total_length_prim(instance, all);
        c.require(std::abs(kruskal - prim) <= 1e-12 * std::max(1.0, std::abs(kruskal)),
                  "trial " + std::to_string(trial) + " (n=" + std::to_string(spec.n) +
                      "): kruskal " + fmt(kruskal) + " vs prim " + fmt(prim));
    }
    return c.finish();
}

bool criterion_8(const ExperimentResult& sweep, const std::vector<MetricInstance>& equis) {
    Criterion c(8, "dimension estimates are mutually consistent");

    // lower <= exact upper across the shared sweep and the tightness family
    int lower_checked = 0;
    for (const TrialRow& row : sweep.rows) {
        if (!row.report.ddim_subset_lower) continue;
        ++lower_checked;
        c.require(*row.report.ddim_subset_lower <= row.report.ddim_subset_upper + 1e-9,
                  "sweep row: lower " + fmt(*row.report.ddim_subset_lower) + " above upper " +
                      fmt(row.report.ddim_subset_upper));
    }
    c.require(lower_checked >= 1000, "only " + std::to_string(lower_checked) +
                                         " sweep rows carried a lower estimate");
    for (const MetricInstance& equi : equis) {
        const Subset all = equi.all_points();
        const double lower = ddim_lower(equi, all);
        const double upper = ddim_upper(equi, all, CoverMode::Exact).upper;
        c.require(lower <= upper + 1e-9, "equidistant n=" + std::to_string(equi.size()) +
                                             ": lower " + fmt(lower) + " above upper " +
                                             fmt(upper));
    }

    // greedy mode never reports less than exact mode
    Rng rng(808);
    for (int trial = 0; trial < 150; ++trial) {
        const Index n = 3 + static_cast<Index>(rng.integer(10));  // 3..12
        const MetricInstance instance = random_family_instance(rng, n);
        const Subset all = instance.all_points();
        const double exact = ddim_upper(instance, all, CoverMode::Exact).upper;
        const double greedy = ddim_upper(instance, all, CoverMode::Greedy).upper;
        c.require(greedy >= exact - 1e-12, "trial " + std::to_string(trial) + ": greedy " +
                                               fmt(greedy) + " below exact " + fmt(exact));
    }

    // subset dimension never exceeds twice the ambient dimension
    double max_ratio = 0.0;
    for (std::uint64_t seed : {1u, 2u, 3u, 4u}) {
        GeneratorSpec spec;
        spec.seed = 880000 + seed;
        spec.n = 14;
        if (seed == 4) {
            spec.family = Family::RandomMetric;
        } else {
            spec.family = Family::UniformCube;
            spec.d = static_cast<int>(seed);  // 1, 2, 3
        }
        const MetricInstance instance = gen_instance(spec);
        const RatioReport report = subset_dimension_ratio_check(instance, 50, 8800 + seed);
        max_ratio = std::max(max_ratio, report.max_ratio);
        for (const RatioFinding& finding : report.findings) {
            std::ostringstream os;
            os << "ratio finding on " << to_string(spec.family) << ": subset {";
            for (Index id : finding.subset) os << ' ' << id;
            os << " } ddim " << fmt(finding.ddim_subset) << " vs ambient "
               << fmt(finding.ddim_ambient) << " (ratio " << fmt(finding.ratio) << ")";
            c.require(false, os.str());
        }
    }
    c.info("max subset/ambient dimension ratio over 200 samples: " + fmt(max_ratio));
    c.require(max_ratio <= 2.0 + 1e-9, "max ratio " + fmt(max_ratio) + " above 2");
    return c.finish();
}

bool criterion_9() {
    Criterion c(9, "experiment outputs are byte-identical across reruns");
    const std::filesystem::path dir =
        std::filesystem::temp_directory_path() / "nup_acceptance_determinism";
    std::filesystem::create_directories(dir);

    ExperimentConfig config;
    config.seed = 909;
    for (int g = 0; g < 2; ++g) {
        TrialSpec cube;
        cube.generator.family = Family::UniformCube;
        cube.generator.n = 9;
        cube.generator.d = g + 1;
        cube.radii.mode = g == 0 ? RadiusMode::NnFraction : RadiusMode::UniformRange;
        cube.count = 6;
        config.trials.push_back(cube);
    }
    TrialSpec metric;
    metric.generator.family = Family::RandomMetric;
    metric.generator.n = 10;
    metric.radii.mode = RadiusMode::Pareto;
    metric.count = 6;
    config.trials.push_back(metric);

    auto read = [](const std::filesystem::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream os;
        os << in.rdbuf();
        return os.str();
    };

    config.output_jsonl = (dir / "a.jsonl").string();
    config.output_csv = (dir / "a.csv").string();
    const ExperimentResult first = run_experiment(config);
    config.output_jsonl = (dir / "b.jsonl").string();
    config.output_csv = (dir / "b.csv").string();
    const ExperimentResult second = run_experiment(config);

    c.require(!first.jsonl.empty(), "first run produced no report lines");
    c.require(read(dir / "a.jsonl") == read(dir / "b.jsonl"), "jsonl files differ across reruns");
    c.require(read(dir / "a.csv") == read(dir / "b.csv"), "csv files differ across reruns");
    c.require(first.jsonl == second.jsonl, "in-memory jsonl differs across reruns");
    c.require(first.csv == second.csv, "in-memory csv differs across reruns");
    c.require(read(dir / "a.jsonl") == first.jsonl, "written jsonl differs from returned text");

    std::filesystem::remove_all(dir);
    return c.finish();
}

}  // namespace

int main() {
    bool all_pass = true;

    std::vector<MetricInstance> equis;
    all_pass &= criterion_1(equis);

    ExperimentResult sweep;
    all_pass &= criterion_2(sweep);
    all_pass &= criterion_3(sweep);
    all_pass &= criterion_4();
    all_pass &= criterion_5();
    all_pass &= criterion_6();
    all_pass &= criterion_7();
    all_pass &= criterion_8(sweep, equis);
    all_pass &= criterion_9();

    std::cout << (all_pass ? "all criteria passed" : "SOME CRITERIA FAILED") << '\n';
    return all_pass ? 0 : 1;
}
