#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nup/common.hpp"
#include "nup/dimension.hpp"
#include "nup/metric.hpp"
#include "nup/spanning.hpp"

namespace nup {

/// Mean separation radius over a subset.
double mean_radius(const RadiusAssignment& radii, const Subset& subset);

/// (5 diam / rbar)^ddim_exp, the average-radius packing bound.
double theorem1_bound(double diam, double rbar, double ddim_exp);

/// (2 diam / r)^ddim_exp, the classical uniform packing bound.
double classical_bound(double diam, double r, double ddim_exp);

/// (4 / rbar)^d, the volumetric bound for subsets of a d-dimensional
/// normed unit ball.
double volumetric_bound(double rbar, int d);

struct JensenCheck {
    double lhs = 0.0;  // rbar^d
    double rhs = 0.0;  // mean of R(a)^d
    bool holds = true;
};

/// rbar^d <= mean R^d. Holds for every input by convexity; a failure
/// signals a numeric bug rather than an interesting instance.
JensenCheck jensen_check(const RadiusAssignment& radii, int d);

struct DisjointBallsCheck {
    struct Violation {
        enum class Kind { Overlap, Containment };
        Kind kind;
        Index a;
        Index b;  // -1 for containment violations
        double lhs;
        double rhs;
    };

    bool holds = true;
    std::vector<Violation> violations;
};

/**
 * For a coordinate subset of the unit ball: the half-radius balls
 * B(a, R(a)/2) must be pairwise disjoint (rho(a,a') > (R(a)+R(a'))/2) and
 * contained in the ball of norm radius 2 (|a| + R(a)/2 <= 2). Both hold
 * whenever the subset is R-separated. Throws if the instance is not in
 * coordinate form or some point lies outside the unit ball.
 */
DisjointBallsCheck disjoint_balls_check(const MetricInstance& instance, const Subset& subset,
                                        const RadiusAssignment& radii);

struct ChainLink {
    std::string name;  // "a" .. "f"
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds = true;
    double slack = 0.0;  // rhs - lhs
};

/**
 * The proof chain behind the average-radius bound, evaluated on a
 * normalized (unit diameter) copy of the subset with co-scaled radii:
 *
 *   (a) R(t) <= 1 at the minimal-radius root t
 *   (b) R(a) <= l(e(a)) for every non-root vertex (worst pair reported)
 *   (c) N rbar <= l(E) + 1
 *   (d) rbar <= 4 N^(-1/dd) + 1/N        [needs the MST length bound]
 *   (e) rbar <  5 N^(-1/dd)
 *   (f) N    <  (5, rbar)-bound, i.e. (5/rbar)^dd
 *
 * with dd = min of the exact dimension estimates of subset and ambient
 * space. Links (a)-(c) hold for every R-separated subset; (d)-(f) are
 * reported and depend on the MST length lemma. When exact dimension
 * estimation exceeds its cap, links (d)-(f) are omitted.
 */
struct ProofChain {
    Index n = 0;
    double scale = 1.0;       // original subset diameter
    double rbar = 0.0;        // normalized mean radius
    double mst_length = 0.0;  // normalized MST total
    std::optional<double> dd;
    std::vector<ChainLink> links;
    bool asserted_hold = true;  // links (a), (b), (c)
};

ProofChain proof_chain_check(const MetricInstance& instance, const Subset& subset,
                             const RadiusAssignment& radii, int cover_cap = kExactCoverCap,
                             double tolerance = kDefaultTolerance);

struct VolumetricChecks {
    int dim = 0;
    double sum_power = 0.0;  // sum of R(a)^d
    double limit = 0.0;      // 4^d
    bool sum_holds = true;
    JensenCheck jensen;
    double bound = 0.0;  // (4/rbar)^d
    bool cardinality_holds = true;
    bool disjoint_holds = true;
    bool holds = true;
};

struct MstSummary {
    SpanningTree tree;
    EdgeAssignment assignment;
};

/// Everything a single verification run produces; serialized to JSON with
/// stable field names by report_to_json.
struct BoundReport {
    std::string instance_desc;
    Index n = 0;
    double diam = 0.0;
    double rbar = 0.0;

    double ddim_subset_upper = 0.0;
    std::optional<double> ddim_subset_lower;
    double ddim_ambient_upper = 0.0;
    CoverMode mode = CoverMode::Exact;

    double theorem1 = 1.0;
    std::optional<double> classical;
    std::optional<double> volumetric;
    std::optional<double> theorem1_at_lower;  // informational, via ddim_lower

    double slack = 0.0;  // theorem1 - n
    std::string verdict = "na";
    Subset witness;

    std::vector<ChainLink> chain;
    std::optional<MstSummary> mst;
    std::optional<VolumetricChecks> volumetric_checks;
    std::string note;
};

struct VerifyOptions {
    CoverMode mode = CoverMode::Exact;
    int cover_cap = kExactCoverCap;
    int subset_cap = kExactSubsetCap;
    double tolerance = kDefaultTolerance;
};

/**
 * Verifies |A| <= (5 diam(A) / rbar)^min(ddim(A), ddim(ambient)) for a
 * verified R-separated subset. Upper dimension estimates keep the check
 * sound because the base exceeds 1. Throws if the subset is not
 * R-separated; singletons pass trivially.
 */
BoundReport verify_theorem1(const MetricInstance& instance, const Subset& subset,
                            const RadiusAssignment& radii, const VerifyOptions& options = {});

/// verify_theorem1 plus the proof chain, MST summary and volumetric checks
/// where applicable: the full per-instance pipeline.
BoundReport analyze_instance(const MetricInstance& instance, const Subset& subset,
                             const RadiusAssignment& radii, const VerifyOptions& options = {});

/// True iff the instance has coordinates and every subset point lies in
/// the unit ball of its norm, the setting the volumetric bound needs.
bool volumetric_applicable(const MetricInstance& instance, const Subset& subset);

}  // namespace nup
