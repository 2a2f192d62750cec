#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nup/common.hpp"
#include "nup/metric.hpp"

namespace nup {

enum class CoverMode { Exact, Greedy };

std::string to_string(CoverMode mode);
CoverMode cover_mode_from_string(const std::string& name);

struct WorstBall {
    Index center = -1;
    double radius = 0.0;
    Index cover_size = 1;
};

struct DimensionEstimate {
    double upper = 0.0;               // log2 of the worst minimal halving cover
    std::optional<double> lower;      // packing-based lower bound, when computed
    WorstBall worst_ball;
    CoverMode mode = CoverMode::Exact;
};

/**
 * Radii sufficient to probe every scale of the submetric: the minimal
 * halving-cover size as a function of r is piecewise constant and only
 * changes where r or r/2 crosses a pairwise distance, so the set
 * B = {d, 2d : d distinct pairwise distance} together with midpoints of
 * consecutive B values hits every piece.
 */
std::vector<double> critical_radii(const MetricInstance& instance, const Subset& subset);

struct HalvingCover {
    Index count;
    Subset centers;
};

/**
 * Minimal (exact mode) or greedy family of r/2-balls centered at subset
 * points that covers ball(center, r) within the subset. Exact mode throws
 * CapExceededError when the ball holds more than `exact_cap` points.
 */
HalvingCover min_halving_cover(const MetricInstance& instance, const Subset& subset, Index center,
                               double r, CoverMode mode, int exact_cap = kExactCoverCap);

/**
 * Doubling dimension of the submetric from above: log2 of the largest
 * minimal halving cover over all subset centers and critical radii.
 * Exact mode is the true value under the subset-centered convention;
 * greedy mode upper-bounds it. Singletons have dimension 0.
 */
DimensionEstimate ddim_upper(const MetricInstance& instance, const Subset& subset, CoverMode mode,
                             int exact_cap = kExactCoverCap);

/**
 * Packing-based lower bound: max over critical radii r < 2 diam of
 * log2 M(r-) / log2(2 diam / r), evaluated just below each radius so sets
 * with pairs at exactly r still count. Never exceeds the exact upper
 * estimate.
 */
double ddim_lower(const MetricInstance& instance, const Subset& subset,
                  int exact_cap = kExactSubsetCap);

struct RatioFinding {
    Subset subset;
    double ddim_subset = 0.0;
    double ddim_ambient = 0.0;
    double ratio = 0.0;
};

struct RatioReport {
    int trials = 0;
    double max_ratio = 0.0;
    Subset worst_subset;
    double ddim_ambient = 0.0;
    bool within_factor_two = true;
    std::vector<RatioFinding> findings;  // trials with ratio > 2, for inspection
};

/// Samples random subsets and compares their exact dimension against the
/// ambient instance's; ratios above 2 are collected as findings.
RatioReport subset_dimension_ratio_check(const MetricInstance& instance, int trials,
                                         std::uint64_t seed);

}  // namespace nup
