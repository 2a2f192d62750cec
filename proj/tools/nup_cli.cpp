// Command-line surface for the non-uniform packing toolkit.
//
// Subcommands: gen, pack, ddim, mst, verify, experiment. Exit codes:
// 0 success, 1 usage or input errors, 2 a verified inequality failed.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "nup/bounds.hpp"
#include "nup/dimension.hpp"
#include "nup/experiment.hpp"
#include "nup/generators.hpp"
#include "nup/io.hpp"
#include "nup/packing.hpp"
#include "nup/spanning.hpp"

namespace {

using nlohmann::json;

void emit(const std::string& text, const std::string& output_path) {
    if (output_path.empty()) {
        std::cout << text;
    } else {
        nup::write_text(output_path, text);
    }
}

void emit_json(const json& j, const std::string& output_path) {
    emit(j.dump(2) + "\n", output_path);
}

/// Radii from the instance file, or a uniform fallback when --r was given.
nup::RadiusAssignment require_radii(const nup::InstanceFile& file, const nup::Subset& subset,
                                    std::optional<double> uniform_r) {
    if (uniform_r) return nup::RadiusAssignment::uniform(subset, *uniform_r);
    if (file.radii) return *file.radii;
    throw std::invalid_argument("instance has no \"radii\"; pass --r for a uniform radius");
}

struct GenArgs {
    std::string family = "uniform_cube";
    nup::Index n = 8;
    int d = 2;
    std::string norm = "l2";
    int k = 2;
    std::uint64_t seed = 0;
    std::string radius_mode;  // empty = no radii
    double r = 0.1;
    double lo = 0.05;
    double hi = 0.2;
    double beta = 0.9;
    double alpha = 2.0;
    double scale = 0.05;
    double cap = 1.0;
    std::uint64_t radius_seed = 0;
    bool radius_seed_set = false;
    std::string output;
};

int run_gen(const GenArgs& args) {
    nup::GeneratorSpec gspec;
    gspec.family = nup::family_from_string(args.family);
    gspec.n = args.n;
    gspec.d = args.d;
    gspec.norm = nup::norm_from_string(args.norm);
    gspec.k = args.k;
    gspec.seed = args.seed;

    const nup::MetricInstance instance = nup::gen_instance(gspec);

    std::optional<nup::RadiusAssignment> radii;
    if (!args.radius_mode.empty()) {
        nup::RadiusSpec rspec;
        rspec.mode = nup::radius_mode_from_string(args.radius_mode);
        rspec.r = args.r;
        rspec.lo = args.lo;
        rspec.hi = args.hi;
        rspec.beta = args.beta;
        rspec.alpha = args.alpha;
        rspec.scale = args.scale;
        rspec.cap = args.cap;
        rspec.seed = args.radius_seed_set ? args.radius_seed : args.seed + 1;
        radii = nup::gen_radii(instance, instance.all_points(), rspec);
    }

    emit_json(nup::instance_to_json(instance, radii), args.output);
    return 0;
}

int run_pack(const std::string& input, const std::string& mode, std::optional<double> uniform_r,
             double tolerance, const std::string& output) {
    const nup::InstanceFile file = nup::load_instance(input, tolerance);
    const nup::Subset all = file.instance.all_points();
    const nup::RadiusAssignment radii = require_radii(file, all, uniform_r);

    nup::Subset witness;
    if (mode == "exact") {
        witness = nup::max_separated_subset_exact(file.instance, all, radii);
    } else if (mode == "greedy") {
        witness = nup::max_separated_subset_greedy(file.instance, all, radii);
    } else {
        throw std::invalid_argument("--mode must be exact or greedy");
    }

    json j;
    j["mode"] = mode;
    j["count"] = witness.size();
    j["witness"] = witness;
    j["separated"] = nup::is_R_separated(file.instance, witness, radii);
    emit_json(j, output);
    return 0;
}

int run_ddim(const std::string& input, const std::string& mode, double tolerance,
             const std::string& output) {
    const nup::InstanceFile file = nup::load_instance(input, tolerance);
    const nup::Subset all = file.instance.all_points();
    const nup::CoverMode cover_mode = nup::cover_mode_from_string(mode);

    const nup::DimensionEstimate estimate = nup::ddim_upper(file.instance, all, cover_mode);

    json j;
    j["mode"] = nup::to_string(estimate.mode);
    j["upper"] = estimate.upper;
    j["worst_ball"] = {{"center", estimate.worst_ball.center},
                       {"radius", estimate.worst_ball.radius},
                       {"cover_size", estimate.worst_ball.cover_size}};
    if (cover_mode == nup::CoverMode::Exact &&
        static_cast<int>(all.size()) <= nup::kExactSubsetCap) {
        j["lower"] = nup::ddim_lower(file.instance, all);
    } else {
        j["lower"] = nullptr;
    }
    emit_json(j, output);
    return 0;
}

int run_mst(const std::string& input, std::optional<double> uniform_r, double tolerance,
            const std::string& output) {
    const nup::InstanceFile file = nup::load_instance(input, tolerance);
    const nup::Subset all = file.instance.all_points();

    const nup::SpanningTree tree = nup::minimum_spanning_tree(file.instance, all);

    json j;
    json edges = json::array();
    for (const nup::TreeEdge& e : tree.edges) edges.push_back({e.u, e.v, e.length});
    j["edges"] = std::move(edges);
    j["total_length"] = tree.total_length;
    j["prim_total_length"] = nup::mst_total_length_prim(file.instance, all);

    if (file.radii || uniform_r) {
        const nup::RadiusAssignment radii = require_radii(file, all, uniform_r);
        const nup::Index root = nup::root_min_radius(tree, radii);
        const nup::EdgeAssignment assignment = nup::assign_edges(tree, root);
        j["root"] = root;
        json by_vertex = json::object();
        for (const auto& [vertex, assigned] : assignment.by_vertex) {
            by_vertex[std::to_string(vertex)] = assigned.edge_index;
        }
        j["assignment"] = std::move(by_vertex);

        const nup::RadiusEdgeCheck check = nup::radius_edge_check(assignment, radii);
        j["radius_edge_check"] = {{"holds", check.holds},
                                  {"violations", check.violations.size()}};
    }

    if (all.size() >= 2) {
        const nup::DimensionEstimate estimate =
            nup::ddim_upper(file.instance, all, nup::CoverMode::Greedy);
        if (estimate.upper > 0.0) {
            const nup::TalwarCheck talwar =
                nup::talwar_check(file.instance, all, estimate.upper, tolerance);
            j["talwar"] = {{"lhs", talwar.lhs},
                           {"rhs", talwar.rhs},
                           {"holds", talwar.holds},
                           {"ddim", estimate.upper}};
        }
    }

    emit_json(j, output);
    return 0;
}

int run_verify(const std::string& input, const std::string& mode, std::optional<double> uniform_r,
               double tolerance, int cover_cap, int subset_cap, const std::string& output) {
    const nup::InstanceFile file = nup::load_instance(input, tolerance);
    const nup::Subset all = file.instance.all_points();
    const nup::RadiusAssignment radii = require_radii(file, all, uniform_r);

    nup::Subset subset = all;
    bool extracted = false;
    if (!nup::is_R_separated(file.instance, all, radii)) {
        extracted = true;
        subset = static_cast<int>(all.size()) <= subset_cap
                     ? nup::max_separated_subset_exact(file.instance, all, radii, subset_cap)
                     : nup::max_separated_subset_greedy(file.instance, all, radii);
    }

    nup::VerifyOptions options;
    options.mode = nup::cover_mode_from_string(mode);
    options.cover_cap = cover_cap;
    options.subset_cap = subset_cap;
    options.tolerance = tolerance;

    const nup::BoundReport report = nup::analyze_instance(file.instance, subset, radii, options);

    json j = nup::report_to_json(report);
    j["extracted"] = extracted;
    j["original_n"] = all.size();
    emit_json(j, output);

    bool chain_ok = true;
    for (const nup::ChainLink& link : report.chain) {
        if (!link.holds && (link.name == "a" || link.name == "b" || link.name == "c")) {
            chain_ok = false;
        }
    }
    if (report.verdict == "fail" || !chain_ok) {
        std::cerr << j.dump(2) << '\n';
        return 2;
    }
    return 0;
}

int run_experiment_cmd(const std::string& input, std::optional<std::uint64_t> seed,
                       const std::string& mode, std::optional<double> tolerance,
                       const std::string& output_jsonl, const std::string& output_csv) {
    nup::ExperimentConfig config = nup::parse_config(nup::load_json(input));
    if (seed) config.seed = *seed;
    if (!mode.empty()) config.mode = nup::cover_mode_from_string(mode);
    if (tolerance) config.tolerance = *tolerance;
    if (!output_jsonl.empty()) config.output_jsonl = output_jsonl;
    if (!output_csv.empty()) config.output_csv = output_csv;

    const nup::ExperimentResult result = nup::run_experiment(config);
    std::cout << nup::experiment_summary(result);
    return result.ok ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"non-uniform packing toolkit"};
    app.require_subcommand(1);

    // gen
    GenArgs gen_args;
    CLI::App* gen = app.add_subcommand("gen", "generate an instance (optionally with radii)");
    gen->add_option("--family", gen_args.family,
                    "uniform_cube | equidistant | grid | random_metric");
    gen->add_option("--n", gen_args.n, "point count (cube, equidistant, random_metric)");
    gen->add_option("--d", gen_args.d, "dimension (cube, grid)");
    gen->add_option("--norm", gen_args.norm, "l1 | l2 | linf");
    gen->add_option("--k", gen_args.k, "grid side length");
    gen->add_option("--seed", gen_args.seed, "generator seed");
    gen->add_option("--radius-mode", gen_args.radius_mode,
                    "constant | uniform_range | nn_fraction | pareto");
    gen->add_option("--r", gen_args.r, "constant radius");
    gen->add_option("--lo", gen_args.lo, "uniform_range lower bound");
    gen->add_option("--hi", gen_args.hi, "uniform_range upper bound");
    gen->add_option("--beta", gen_args.beta, "nn_fraction factor in (0,1)");
    gen->add_option("--alpha", gen_args.alpha, "pareto shape");
    gen->add_option("--scale", gen_args.scale, "pareto scale");
    gen->add_option("--cap", gen_args.cap, "pareto cap");
    CLI::Option* rs = gen->add_option("--radius-seed", gen_args.radius_seed,
                                      "radius seed (default: seed + 1)");
    gen->add_option("--output", gen_args.output, "output path (default: stdout)");

    // shared flags
    std::string input;
    std::string mode = "exact";
    std::string output;
    double tolerance = nup::kDefaultTolerance;
    std::optional<double> uniform_r;
    int cover_cap = nup::kExactCoverCap;
    int subset_cap = nup::kExactSubsetCap;

    CLI::App* pack = app.add_subcommand("pack", "maximum R-separated subset");
    pack->add_option("--input", input, "instance JSON path")->required();
    pack->add_option("--mode", mode, "exact | greedy");
    pack->add_option("--r", uniform_r, "uniform radius overriding instance radii");
    pack->add_option("--tolerance", tolerance, "metric validation tolerance");
    pack->add_option("--output", output, "output path (default: stdout)");

    CLI::App* ddim = app.add_subcommand("ddim", "doubling dimension estimate");
    ddim->add_option("--input", input, "instance JSON path")->required();
    ddim->add_option("--mode", mode, "exact | greedy");
    ddim->add_option("--tolerance", tolerance, "metric validation tolerance");
    ddim->add_option("--output", output, "output path (default: stdout)");

    CLI::App* mst = app.add_subcommand("mst", "minimum spanning tree with edge assignment");
    mst->add_option("--input", input, "instance JSON path")->required();
    mst->add_option("--r", uniform_r, "uniform radius overriding instance radii");
    mst->add_option("--tolerance", tolerance, "metric validation tolerance");
    mst->add_option("--output", output, "output path (default: stdout)");

    CLI::App* verify = app.add_subcommand("verify", "full bound verification on one instance");
    verify->add_option("--input", input, "instance JSON path")->required();
    verify->add_option("--mode", mode, "exact | greedy dimension estimation");
    verify->add_option("--r", uniform_r, "uniform radius overriding instance radii");
    verify->add_option("--tolerance", tolerance, "comparison tolerance");
    verify->add_option("--cover-cap", cover_cap, "exact set-cover size cap");
    verify->add_option("--subset-cap", subset_cap, "exact solver size cap");
    verify->add_option("--output", output, "report path (default: stdout)");

    std::optional<std::uint64_t> exp_seed;
    std::string exp_mode;
    std::optional<double> exp_tolerance;
    std::string exp_jsonl;
    std::string exp_csv;
    CLI::App* experiment = app.add_subcommand("experiment", "batch run from a config file");
    experiment->add_option("--input", input, "config JSON path")->required();
    experiment->add_option("--seed", exp_seed, "override config seed");
    experiment->add_option("--mode", exp_mode, "override config mode (exact | greedy)");
    experiment->add_option("--tolerance", exp_tolerance, "override config tolerance");
    experiment->add_option("--output-jsonl", exp_jsonl, "override config output_jsonl");
    experiment->add_option("--output-csv", exp_csv, "override config output_csv");

    try {
        app.parse(argc, argv);
        if (gen->parsed()) {
            gen_args.radius_seed_set = rs->count() > 0;
            return run_gen(gen_args);
        }
        if (pack->parsed()) return run_pack(input, mode, uniform_r, tolerance, output);
        if (ddim->parsed()) return run_ddim(input, mode, tolerance, output);
        if (mst->parsed()) return run_mst(input, uniform_r, tolerance, output);
        if (verify->parsed()) {
            return run_verify(input, mode, uniform_r, tolerance, cover_cap, subset_cap, output);
        }
        if (experiment->parsed()) {
            return run_experiment_cmd(input, exp_seed, exp_mode, exp_tolerance, exp_jsonl,
                                      exp_csv);
        }
    } catch (const CLI::ParseError& e) {
        // collapse CLI11's assorted parse-error codes onto the documented
        // contract: 0 for --help, 1 for any usage error
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
