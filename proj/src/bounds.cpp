#include "nup/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "nup/packing.hpp"

namespace nup {

namespace {

std::string describe_instance(const MetricInstance& instance) {
    std::ostringstream os;
    if (instance.is_coords()) {
        os << "coords(n=" << instance.size() << ",d=" << instance.dim() << ","
           << to_string(instance.norm()) << ")";
    } else {
        os << "matrix(n=" << instance.size() << ")";
    }
    return os.str();
}

ChainLink make_link(std::string name, double lhs, double rhs, double tolerance) {
    ChainLink link;
    link.name = std::move(name);
    link.lhs = lhs;
    link.rhs = rhs;
    link.slack = rhs - lhs;
    link.holds = lhs <= rhs + tolerance;
    return link;
}

double min_radius(const RadiusAssignment& radii, const Subset& subset) {
    double best = radii.at(subset.front());
    for (Index id : subset) best = std::min(best, radii.at(id));
    return best;
}

}  // namespace

double mean_radius(const RadiusAssignment& radii, const Subset& subset) {
    if (subset.empty()) throw std::invalid_argument("mean radius of an empty subset");
    double sum = 0.0;
    for (Index id : subset) sum += radii.at(id);
    return sum / static_cast<double>(subset.size());
}

double theorem1_bound(double diam, double rbar, double ddim_exp) {
    if (!(rbar > 0.0)) throw std::invalid_argument("rbar must be positive");
    if (!(diam > 0.0)) throw std::invalid_argument("diameter must be positive");
    if (ddim_exp < 0.0) throw std::invalid_argument("dimension exponent must be nonnegative");
    if (ddim_exp == 0.0) return 1.0;
    return std::pow(5.0 * diam / rbar, ddim_exp);
}

double classical_bound(double diam, double r, double ddim_exp) {
    if (!(r > 0.0)) throw std::invalid_argument("r must be positive");
    if (!(diam > 0.0)) throw std::invalid_argument("diameter must be positive");
    if (ddim_exp < 0.0) throw std::invalid_argument("dimension exponent must be nonnegative");
    if (ddim_exp == 0.0) return 1.0;
    return std::pow(2.0 * diam / r, ddim_exp);
}

double volumetric_bound(double rbar, int d) {
    if (!(rbar > 0.0)) throw std::invalid_argument("rbar must be positive");
    if (d < 1) throw std::invalid_argument("dimension must be a positive integer");
    return std::pow(4.0 / rbar, static_cast<double>(d));
}

JensenCheck jensen_check(const RadiusAssignment& radii, int d) {
    if (radii.empty()) throw std::invalid_argument("jensen check needs a nonempty assignment");
    if (d < 1) throw std::invalid_argument("dimension must be a positive integer");

    double sum = 0.0;
    double sum_pow = 0.0;
    for (const auto& [id, r] : radii.entries()) {
        sum += r;
        sum_pow += std::pow(r, static_cast<double>(d));
    }
    const double count = static_cast<double>(radii.size());

    JensenCheck check;
    check.lhs = std::pow(sum / count, static_cast<double>(d));
    check.rhs = sum_pow / count;
    check.holds = check.lhs <= check.rhs + 1e-12 * std::max(1.0, check.rhs);
    return check;
}

bool volumetric_applicable(const MetricInstance& instance, const Subset& subset) {
    if (!instance.is_coords()) return false;
    for (Index id : subset) {
        if (instance.norm_from_origin(id) > 1.0 + kConflictSlack) return false;
    }
    return true;
}

DisjointBallsCheck disjoint_balls_check(const MetricInstance& instance, const Subset& subset,
                                        const RadiusAssignment& radii) {
    check_subset(instance, subset);
    if (!instance.is_coords()) {
        throw std::invalid_argument("disjoint balls check needs a coordinate instance");
    }
    for (Index id : subset) {
        if (instance.norm_from_origin(id) > 1.0 + kConflictSlack) {
            throw std::invalid_argument("point " + std::to_string(id) +
                                        " lies outside the unit ball");
        }
    }

    DisjointBallsCheck check;
    using Violation = DisjointBallsCheck::Violation;
    for (std::size_t a = 0; a < subset.size(); ++a) {
        const double ra = radii.at(subset[a]);
        const double containment = instance.norm_from_origin(subset[a]) + ra / 2.0;
        if (containment > 2.0 + kConflictSlack) {
            check.holds = false;
            check.violations.push_back(
                {Violation::Kind::Containment, subset[a], -1, containment, 2.0});
        }
        for (std::size_t b = a + 1; b < subset.size(); ++b) {
            const double rho = instance.distance(subset[a], subset[b]);
            const double sum_half = (ra + radii.at(subset[b])) / 2.0;
            if (!(rho > sum_half - kConflictSlack)) {
                check.holds = false;
                check.violations.push_back(
                    {Violation::Kind::Overlap, subset[a], subset[b], rho, sum_half});
            }
        }
    }
    return check;
}

ProofChain proof_chain_check(const MetricInstance& instance, const Subset& subset,
                             const RadiusAssignment& radii, int cover_cap, double tolerance) {
    check_subset(instance, subset);
    if (subset.size() < 2) throw std::invalid_argument("proof chain needs at least two points");
    if (!is_R_separated(instance, subset, radii)) {
        throw std::invalid_argument("proof chain needs an R-separated subset");
    }

    const Normalized normalized = normalize(instance, subset);
    const Index n = static_cast<Index>(subset.size());
    const double count = static_cast<double>(n);

    RadiusAssignment local_radii;
    for (std::size_t p = 0; p < subset.size(); ++p) {
        local_radii.set(static_cast<Index>(p), radii.at(subset[p]) / normalized.scale);
    }
    const Subset local = normalized.instance.all_points();

    ProofChain chain;
    chain.n = n;
    chain.scale = normalized.scale;
    chain.rbar = mean_radius(local_radii, local);

    const SpanningTree tree = minimum_spanning_tree(normalized.instance, local);
    chain.mst_length = tree.total_length;
    const Index root = root_min_radius(tree, local_radii);
    const EdgeAssignment assignment = assign_edges(tree, root);

    chain.links.push_back(make_link("a", local_radii.at(root), 1.0, tolerance));

    // worst vertex of the per-edge inequality R(a) <= l(e(a))
    double worst_gap = -std::numeric_limits<double>::infinity();
    double worst_lhs = 0.0;
    double worst_rhs = 0.0;
    for (const auto& [vertex, assigned] : assignment.by_vertex) {
        const double gap = local_radii.at(vertex) - assigned.length;
        if (gap > worst_gap) {
            worst_gap = gap;
            worst_lhs = local_radii.at(vertex);
            worst_rhs = assigned.length;
        }
    }
    chain.links.push_back(make_link("b", worst_lhs, worst_rhs, tolerance));

    chain.links.push_back(make_link("c", count * chain.rbar, chain.mst_length + 1.0, tolerance));

    try {
        const double dd_subset = ddim_upper(normalized.instance, local, CoverMode::Exact, cover_cap).upper;
        const double dd_ambient =
            ddim_upper(instance, instance.all_points(), CoverMode::Exact, cover_cap).upper;
        const double dd = std::min(dd_subset, dd_ambient);
        chain.dd = dd;
        const double pow_term = std::pow(count, -1.0 / dd);
        chain.links.push_back(make_link("d", chain.rbar, 4.0 * pow_term + 1.0 / count, tolerance));
        chain.links.push_back(make_link("e", chain.rbar, 5.0 * pow_term, tolerance));
        chain.links.push_back(make_link("f", count, std::pow(5.0 / chain.rbar, dd), tolerance));
    } catch (const CapExceededError&) {
        // dimension-dependent links are omitted beyond the exact cap
    }

    chain.asserted_hold = chain.links[0].holds && chain.links[1].holds && chain.links[2].holds;
    return chain;
}

BoundReport verify_theorem1(const MetricInstance& instance, const Subset& subset,
                            const RadiusAssignment& radii, const VerifyOptions& options) {
    check_subset(instance, subset);
    if (subset.empty()) throw std::invalid_argument("cannot verify an empty subset");
    if (!is_R_separated(instance, subset, radii)) {
        throw std::invalid_argument("subset is not R-separated; extract a separated subset first");
    }

    BoundReport report;
    report.instance_desc = describe_instance(instance);
    report.n = static_cast<Index>(subset.size());
    report.witness = subset;
    report.mode = options.mode;
    if (options.mode == CoverMode::Greedy) {
        report.note = "weakened check: greedy dimension upper bounds";
    }

    const bool volumetric_ok = volumetric_applicable(instance, subset);

    if (subset.size() == 1) {
        report.diam = 0.0;
        report.rbar = radii.at(subset.front());
        report.ddim_subset_upper = 0.0;
        report.ddim_subset_lower = 0.0;
        report.ddim_ambient_upper =
            ddim_upper(instance, instance.all_points(), options.mode, options.cover_cap).upper;
        report.theorem1 = 1.0;
        report.slack = 0.0;
        report.verdict = "pass";
        if (volumetric_ok) {
            report.volumetric = volumetric_bound(report.rbar, static_cast<int>(instance.dim()));
        }
        return report;
    }

    report.diam = diameter(instance, subset);
    report.rbar = mean_radius(radii, subset);
    report.ddim_subset_upper = ddim_upper(instance, subset, options.mode, options.cover_cap).upper;
    report.ddim_ambient_upper =
        ddim_upper(instance, instance.all_points(), options.mode, options.cover_cap).upper;

    const double dd = std::min(report.ddim_subset_upper, report.ddim_ambient_upper);
    report.theorem1 = theorem1_bound(report.diam, report.rbar, dd);
    report.slack = report.theorem1 - static_cast<double>(report.n);
    report.verdict = static_cast<double>(report.n) <= report.theorem1 + options.tolerance
                         ? "pass"
                         : "fail";

    report.classical = classical_bound(report.diam, min_radius(radii, subset), dd);
    if (volumetric_ok) {
        report.volumetric = volumetric_bound(report.rbar, static_cast<int>(instance.dim()));
    }

    if (report.n <= options.subset_cap) {
        try {
            report.ddim_subset_lower = ddim_lower(instance, subset, options.subset_cap);
            report.theorem1_at_lower =
                theorem1_bound(report.diam, report.rbar, *report.ddim_subset_lower);
        } catch (const CapExceededError&) {
        }
    }
    return report;
}

BoundReport analyze_instance(const MetricInstance& instance, const Subset& subset,
                             const RadiusAssignment& radii, const VerifyOptions& options) {
    BoundReport report = verify_theorem1(instance, subset, radii, options);

    if (subset.size() >= 2) {
        ProofChain chain =
            proof_chain_check(instance, subset, radii, options.cover_cap, options.tolerance);
        report.chain = chain.links;

        MstSummary mst;
        mst.tree = minimum_spanning_tree(instance, subset);
        mst.assignment = assign_edges(mst.tree, root_min_radius(mst.tree, radii));
        report.mst = std::move(mst);
    }

    if (volumetric_applicable(instance, subset)) {
        const int d = static_cast<int>(instance.dim());
        VolumetricChecks checks;
        checks.dim = d;
        checks.limit = std::pow(4.0, static_cast<double>(d));
        checks.sum_power = 0.0;
        for (Index id : subset) {
            checks.sum_power += std::pow(radii.at(id), static_cast<double>(d));
        }
        checks.sum_holds = checks.sum_power <= checks.limit + options.tolerance;
        checks.jensen = jensen_check(radii.restricted(subset), d);
        checks.bound = volumetric_bound(report.rbar, d);
        checks.cardinality_holds =
            static_cast<double>(report.n) <= checks.bound + options.tolerance;
        checks.disjoint_holds = disjoint_balls_check(instance, subset, radii).holds;
        checks.holds = checks.sum_holds && checks.jensen.holds && checks.cardinality_holds &&
                       checks.disjoint_holds;
        report.volumetric_checks = checks;
    }
    return report;
}

}  // namespace nup
