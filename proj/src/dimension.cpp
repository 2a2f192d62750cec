#include "nup/dimension.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <unordered_map>

#include "nup/packing.hpp"
#include "nup/rng.hpp"

namespace nup {

namespace {

constexpr double kRadiusNudge = 1e-9;  // relative shift below a critical radius

/// Exact minimum set cover by branch and bound over bitmask universes.
/// Candidates are pre-reduced to maximal masks; the lower bound counts
/// uncovered elements no candidate can cover together.
class CoverSolver {
public:
    CoverSolver(std::vector<std::uint32_t> masks, std::vector<Index> centers)
        : masks_(std::move(masks)), centers_(std::move(centers)) {
        universe_ = 0;
        for (std::uint32_t m : masks_) universe_ |= m;
        covered_with_.assign(32, 0);
        for (std::uint32_t rest = universe_; rest != 0; rest &= rest - 1) {
            const int e = std::countr_zero(rest);
            for (std::size_t s = 0; s < masks_.size(); ++s) {
                if (masks_[s] & (std::uint32_t{1} << e)) covered_with_[e] |= masks_[s];
            }
        }
    }

    std::vector<int> greedy() const {
        std::vector<int> chosen;
        std::uint32_t uncovered = universe_;
        while (uncovered != 0) {
            int best = -1;
            int best_gain = 0;
            for (std::size_t s = 0; s < masks_.size(); ++s) {
                const int gain = std::popcount(masks_[s] & uncovered);
                if (gain > best_gain) {
                    best_gain = gain;
                    best = static_cast<int>(s);
                }
            }
            chosen.push_back(best);
            uncovered &= ~masks_[static_cast<std::size_t>(best)];
        }
        return chosen;
    }

    std::vector<int> exact() {
        best_choice_ = greedy();
        best_ = static_cast<int>(best_choice_.size());
        std::vector<int> chosen;
        search(universe_, chosen);
        std::sort(best_choice_.begin(), best_choice_.end());
        return best_choice_;
    }

    Index center_of(int candidate) const { return centers_[static_cast<std::size_t>(candidate)]; }

private:
    int lower_bound(std::uint32_t uncovered) const {
        int count = 0;
        while (uncovered != 0) {
            const int e = std::countr_zero(uncovered);
            ++count;
            uncovered &= ~covered_with_[e];
        }
        return count;
    }

    void search(std::uint32_t uncovered, std::vector<int>& chosen) {
        if (uncovered == 0) {
            if (static_cast<int>(chosen.size()) < best_) {
                best_ = static_cast<int>(chosen.size());
                best_choice_ = chosen;
            }
            return;
        }
        if (static_cast<int>(chosen.size()) + lower_bound(uncovered) >= best_) return;

        // branch on the uncovered element with the fewest candidates
        int pick = -1;
        int pick_options = std::numeric_limits<int>::max();
        for (std::uint32_t rest = uncovered; rest != 0; rest &= rest - 1) {
            const int e = std::countr_zero(rest);
            int options = 0;
            for (std::uint32_t m : masks_) {
                if (m & (std::uint32_t{1} << e)) ++options;
            }
            if (options < pick_options) {
                pick_options = options;
                pick = e;
            }
        }
        for (std::size_t s = 0; s < masks_.size(); ++s) {
            if (!(masks_[s] & (std::uint32_t{1} << pick))) continue;
            chosen.push_back(static_cast<int>(s));
            search(uncovered & ~masks_[s], chosen);
            chosen.pop_back();
        }
    }

    std::vector<std::uint32_t> masks_;
    std::vector<Index> centers_;
    std::vector<std::uint32_t> covered_with_;
    std::uint32_t universe_ = 0;
    int best_ = 0;
    std::vector<int> best_choice_;
};

struct CoverProblem {
    std::vector<std::uint32_t> masks;
    std::vector<Index> centers;
    std::size_t ball_size = 0;
};

CoverProblem build_cover_problem(const MetricInstance& instance, const Subset& subset,
                                 Index center, double r) {
    // universe: subset points inside the closed r-ball, indexed by position
    std::vector<Index> ball;
    for (Index id : subset) {
        if (instance.distance(center, id) <= r) ball.push_back(id);
    }

    CoverProblem problem;
    problem.ball_size = ball.size();
    if (ball.size() > 32) return problem;  // caller enforces the exact cap

    const double half = r / 2.0;
    for (Index c : subset) {
        std::uint32_t mask = 0;
        for (std::size_t e = 0; e < ball.size(); ++e) {
            if (instance.distance(c, ball[e]) <= half) mask |= std::uint32_t{1} << e;
        }
        if (mask == 0) continue;
        problem.masks.push_back(mask);
        problem.centers.push_back(c);
    }

    // dominated candidates never improve a cover; keep maximal masks only,
    // preferring the smallest center id among equals
    std::vector<std::uint32_t> kept_masks;
    std::vector<Index> kept_centers;
    for (std::size_t i = 0; i < problem.masks.size(); ++i) {
        bool dominated = false;
        for (std::size_t j = 0; j < problem.masks.size() && !dominated; ++j) {
            if (i == j) continue;
            const bool subset_of = (problem.masks[i] & ~problem.masks[j]) == 0;
            if (!subset_of) continue;
            if (problem.masks[i] != problem.masks[j] || j < i) dominated = true;
        }
        if (!dominated) {
            kept_masks.push_back(problem.masks[i]);
            kept_centers.push_back(problem.centers[i]);
        }
    }
    problem.masks = std::move(kept_masks);
    problem.centers = std::move(kept_centers);
    return problem;
}

}  // namespace

std::string to_string(CoverMode mode) { return mode == CoverMode::Exact ? "exact" : "greedy"; }

CoverMode cover_mode_from_string(const std::string& name) {
    if (name == "exact") return CoverMode::Exact;
    if (name == "greedy") return CoverMode::Greedy;
    throw std::invalid_argument("unknown mode: " + name + " (expected exact or greedy)");
}

std::vector<double> critical_radii(const MetricInstance& instance, const Subset& subset) {
    check_subset(instance, subset);
    if (subset.size() < 2) throw std::invalid_argument("critical radii need at least two points");

    std::vector<double> breakpoints;
    for (std::size_t a = 0; a < subset.size(); ++a) {
        for (std::size_t b = a + 1; b < subset.size(); ++b) {
            const double d = instance.distance(subset[a], subset[b]);
            breakpoints.push_back(d);
            breakpoints.push_back(2.0 * d);
        }
    }
    std::sort(breakpoints.begin(), breakpoints.end());
    breakpoints.erase(std::unique(breakpoints.begin(), breakpoints.end()), breakpoints.end());

    std::vector<double> radii(breakpoints);
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        radii.push_back(0.5 * (breakpoints[i] + breakpoints[i + 1]));
    }
    std::sort(radii.begin(), radii.end());
    radii.erase(std::unique(radii.begin(), radii.end()), radii.end());
    return radii;
}

HalvingCover min_halving_cover(const MetricInstance& instance, const Subset& subset, Index center,
                               double r, CoverMode mode, int exact_cap) {
    check_subset(instance, subset);
    if (!std::binary_search(subset.begin(), subset.end(), center)) {
        throw std::invalid_argument("cover center must be a subset point");
    }
    if (!(r > 0.0)) throw std::invalid_argument("cover radius must be positive");

    CoverProblem problem = build_cover_problem(instance, subset, center, r);
    if (mode == CoverMode::Exact &&
        problem.ball_size > static_cast<std::size_t>(std::min(exact_cap, 32))) {
        throw CapExceededError("exact cover cap exceeded: ball has " +
                               std::to_string(problem.ball_size) + " points > " +
                               std::to_string(std::min(exact_cap, 32)));
    }
    if (mode == CoverMode::Greedy && problem.ball_size > 32) {
        throw CapExceededError("greedy cover supports balls up to 32 points, got " +
                               std::to_string(problem.ball_size));
    }

    CoverSolver solver(std::move(problem.masks), std::move(problem.centers));
    const std::vector<int> chosen = mode == CoverMode::Exact ? solver.exact() : solver.greedy();

    HalvingCover cover;
    cover.count = static_cast<Index>(chosen.size());
    for (int c : chosen) cover.centers.push_back(solver.center_of(c));
    std::sort(cover.centers.begin(), cover.centers.end());
    return cover;
}

DimensionEstimate ddim_upper(const MetricInstance& instance, const Subset& subset, CoverMode mode,
                             int exact_cap) {
    check_subset(instance, subset);
    if (subset.empty()) throw std::invalid_argument("dimension of an empty subset");

    DimensionEstimate estimate;
    estimate.mode = mode;
    if (subset.size() == 1) {
        estimate.worst_ball = {subset.front(), 0.0, 1};
        return estimate;
    }

    const std::vector<double> radii = critical_radii(instance, subset);

    // many (center, r) pairs share a ball; covers repeat with (ball, r)
    std::unordered_map<std::uint64_t, Index> memo;
    const bool memoizable = subset.size() <= 64;

    Index worst = 1;
    WorstBall worst_ball{subset.front(), radii.front(), 1};
    for (Index center : subset) {
        for (std::size_t ri = 0; ri < radii.size(); ++ri) {
            const double r = radii[ri];
            std::uint64_t key = 0;
            if (memoizable) {
                std::uint64_t mask = 0;
                for (std::size_t p = 0; p < subset.size(); ++p) {
                    if (instance.distance(center, subset[p]) <= r) mask |= std::uint64_t{1} << p;
                }
                // mix the radius index into the ball mask
                key = mask * 1000003ULL + static_cast<std::uint64_t>(ri);
                auto it = memo.find(key);
                if (it != memo.end()) {
                    if (it->second > worst) {
                        worst = it->second;
                        worst_ball = {center, r, worst};
                    }
                    continue;
                }
            }
            const HalvingCover cover = min_halving_cover(instance, subset, center, r, mode, exact_cap);
            if (memoizable) memo.emplace(key, cover.count);
            if (cover.count > worst) {
                worst = cover.count;
                worst_ball = {center, r, cover.count};
            }
        }
    }
    estimate.upper = std::log2(static_cast<double>(worst));
    estimate.worst_ball = worst_ball;
    return estimate;
}

double ddim_lower(const MetricInstance& instance, const Subset& subset, int exact_cap) {
    check_subset(instance, subset);
    if (subset.size() < 2) throw std::invalid_argument("ddim_lower needs at least two points");

    const double diam = diameter(instance, subset);
    double best = 0.0;
    for (double r : critical_radii(instance, subset)) {
        if (!(r < 2.0 * diam)) continue;
        const double r_eval = r * (1.0 - kRadiusNudge);
        const Packing packing = packing_number(instance, subset, r_eval, exact_cap);
        if (packing.count <= 1) continue;
        const double denom = std::log2(2.0 * diam / r_eval);
        if (!(denom > 0.0)) continue;
        best = std::max(best, std::log2(static_cast<double>(packing.count)) / denom);
    }
    return best;
}

RatioReport subset_dimension_ratio_check(const MetricInstance& instance, int trials,
                                         std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("ratio check needs at least one trial");
    const Subset everything = instance.all_points();
    const double ambient = ddim_upper(instance, everything, CoverMode::Exact).upper;

    RatioReport report;
    report.trials = trials;
    report.ddim_ambient = ambient;

    Rng rng(seed);
    std::vector<Index> pool(everything);
    for (int t = 0; t < trials; ++t) {
        const std::size_t size = 1 + static_cast<std::size_t>(rng.integer(
                                         static_cast<std::uint64_t>(instance.size())));
        // partial Fisher-Yates, then sort the prefix
        for (std::size_t i = 0; i < size; ++i) {
            const std::size_t j = i + static_cast<std::size_t>(
                                          rng.integer(static_cast<std::uint64_t>(pool.size() - i)));
            std::swap(pool[i], pool[j]);
        }
        Subset sample(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(size));
        std::sort(sample.begin(), sample.end());

        const double dd_subset = ddim_upper(instance, sample, CoverMode::Exact).upper;
        const double ratio = size == 1 || ambient == 0.0 ? 0.0 : dd_subset / ambient;
        if (ratio > report.max_ratio) {
            report.max_ratio = ratio;
            report.worst_subset = sample;
        }
        if (ratio > 2.0 + kDefaultTolerance) {
            report.within_factor_two = false;
            report.findings.push_back({sample, dd_subset, ambient, ratio});
        }
    }
    return report;
}

}  // namespace nup
