#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <vector>

namespace nup {

using Index = Eigen::Index;

/// Sorted sequence of distinct point indices into one instance.
using Subset = std::vector<Index>;

/// Default tolerance for all inequality verdicts and metric validation.
inline constexpr double kDefaultTolerance = 1e-9;

/// Slack applied toward "conflict" when comparing a distance against a
/// separation radius, so that roundoff never produces an infeasible subset.
inline constexpr double kConflictSlack = 1e-12;

/// Largest subset size the exact independent-set solver accepts.
inline constexpr int kExactSubsetCap = 64;

/// Largest ball size the exact set-cover solver accepts.
inline constexpr int kExactCoverCap = 24;

/// Thrown when an exact-mode operation is asked to exceed its size cap.
class CapExceededError : public std::runtime_error {
public:
    explicit CapExceededError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace nup
