#pragma once

#include <Eigen/Dense>

#include <map>
#include <string>
#include <vector>

#include "nup/common.hpp"

namespace nup {

enum class Norm { L1, L2, Linf };

std::string to_string(Norm norm);
Norm norm_from_string(const std::string& name);

/**
 * Per-point separation radii over a declared subset of points.
 *
 * Every radius is strictly positive; lookups outside the declared domain
 * throw. Entries iterate in ascending point order, which keeps every
 * consumer deterministic.
 */
class RadiusAssignment {
public:
    RadiusAssignment() = default;

    /// Inserts or overwrites the radius of `id`. Throws if `radius <= 0`.
    void set(Index id, double radius);

    /// Radius of `id`; throws std::out_of_range if `id` has no radius.
    double at(Index id) const;

    bool contains(Index id) const { return radii_.count(id) > 0; }
    std::size_t size() const { return radii_.size(); }
    bool empty() const { return radii_.empty(); }

    const std::map<Index, double>& entries() const { return radii_; }

    /// Domain of the assignment as a sorted subset.
    Subset domain() const;

    /// Same radii restricted to `subset`; every member must have a radius.
    RadiusAssignment restricted(const Subset& subset) const;

    /// Every radius multiplied by `factor` (> 0).
    RadiusAssignment scaled(double factor) const;

    static RadiusAssignment uniform(const Subset& subset, double r);

private:
    std::map<Index, double> radii_;
};

/// One failed metric axiom, with the offending indices and both sides of
/// the violated relation.
struct MetricViolation {
    enum class Axiom { Symmetry, ZeroDiagonal, Positivity, Triangle };

    Axiom axiom;
    Index i = -1;
    Index j = -1;
    Index k = -1;  // only meaningful for triangle violations
    double lhs = 0.0;
    double rhs = 0.0;

    std::string describe() const;
};

/**
 * Checks symmetry, zero diagonal, strict off-diagonal positivity and all
 * N^3 triangle inequalities of a candidate distance matrix. Comparisons use
 * `tolerance` relative to the largest entry (absolute on unit-scale input).
 * Returns the empty vector iff the matrix is a valid metric.
 */
std::vector<MetricViolation> validate_metric(const Eigen::MatrixXd& matrix,
                                             double tolerance = kDefaultTolerance);

/**
 * A finite metric space: either N points with coordinates under an Lp norm,
 * or an explicit N x N distance matrix. Instances are immutable after
 * construction and all operations on them are pure, so concurrent use is
 * safe.
 *
 * Matrix instances are validated on construction; coordinate instances keep
 * their points and evaluate distances lazily per pairwise query.
 */
class MetricInstance {
public:
    /// Builds a coordinate instance. `points` is N x d, one row per point.
    /// All points must be pairwise distinct.
    static MetricInstance from_coords(Eigen::MatrixXd points, Norm norm);

    /// Builds a matrix instance. Throws std::invalid_argument listing the
    /// first violations if `dist` is not a valid metric within `tolerance`.
    static MetricInstance from_matrix(Eigen::MatrixXd dist,
                                      double tolerance = kDefaultTolerance);

    Index size() const { return size_; }
    bool is_coords() const { return is_coords_; }

    /// Coordinate dimension; zero for matrix instances.
    Index dim() const { return is_coords_ ? points_.cols() : 0; }

    /// Norm of a coordinate instance; throws for matrix instances.
    Norm norm() const;

    /// rho(i, j). Symmetric, zero iff i == j. Throws on invalid indices.
    double distance(Index i, Index j) const;

    /// Norm distance of point `i` from the coordinate origin.
    double norm_from_origin(Index i) const;

    const Eigen::MatrixXd& coords() const;

    /// Materializes the full pairwise distance matrix.
    Eigen::MatrixXd distance_matrix() const;

    /// {0, 1, ..., N-1}.
    Subset all_points() const;

private:
    MetricInstance() = default;

    bool is_coords_ = false;
    Index size_ = 0;
    Norm norm_ = Norm::L2;
    Eigen::MatrixXd points_;  // coords variant: N x d
    Eigen::MatrixXd dist_;    // matrix variant: N x N
};

/// Throws std::invalid_argument unless `subset` is sorted, duplicate-free
/// and within range of `instance`.
void check_subset(const MetricInstance& instance, const Subset& subset);

double distance(const MetricInstance& instance, Index i, Index j);

/// Max pairwise distance within `subset`; 0 for singletons. Throws on an
/// empty subset.
double diameter(const MetricInstance& instance, const Subset& subset);

/// All points of the instance at distance <= r from `center`.
Subset closed_ball(const MetricInstance& instance, Index center, double r);

struct Normalized {
    MetricInstance instance;  // matrix variant over the subset, diameter 1
    double scale;             // the diameter the distances were divided by
};

/// Restricts the instance to `subset` (reindexed by position) and divides
/// all distances by diam(subset). Throws if the subset has fewer than two
/// points. Callers co-scale any radii by `scale` themselves.
Normalized normalize(const MetricInstance& instance, const Subset& subset);

}  // namespace nup
