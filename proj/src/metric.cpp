#include "nup/metric.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace nup {

std::string to_string(Norm norm) {
    switch (norm) {
        case Norm::L1: return "l1";
        case Norm::L2: return "l2";
        case Norm::Linf: return "linf";
    }
    return "l2";
}

Norm norm_from_string(const std::string& name) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == "l1") return Norm::L1;
    if (lower == "l2") return Norm::L2;
    if (lower == "linf" || lower == "loo" || lower == "lmax") return Norm::Linf;
    throw std::invalid_argument("unknown norm: " + name);
}

void RadiusAssignment::set(Index id, double radius) {
    if (!(radius > 0.0)) {
        throw std::invalid_argument("radius must be strictly positive, got " +
                                    std::to_string(radius) + " for point " + std::to_string(id));
    }
    radii_[id] = radius;
}

double RadiusAssignment::at(Index id) const {
    auto it = radii_.find(id);
    if (it == radii_.end()) {
        throw std::out_of_range("no radius assigned to point " + std::to_string(id));
    }
    return it->second;
}

Subset RadiusAssignment::domain() const {
    Subset out;
    out.reserve(radii_.size());
    for (const auto& [id, r] : radii_) out.push_back(id);
    return out;
}

RadiusAssignment RadiusAssignment::restricted(const Subset& subset) const {
    RadiusAssignment out;
    for (Index id : subset) out.set(id, at(id));
    return out;
}

RadiusAssignment RadiusAssignment::scaled(double factor) const {
    if (!(factor > 0.0)) throw std::invalid_argument("scale factor must be positive");
    RadiusAssignment out;
    for (const auto& [id, r] : radii_) out.set(id, r * factor);
    return out;
}

RadiusAssignment RadiusAssignment::uniform(const Subset& subset, double r) {
    RadiusAssignment out;
    for (Index id : subset) out.set(id, r);
    return out;
}

std::string MetricViolation::describe() const {
    std::ostringstream os;
    switch (axiom) {
        case Axiom::Symmetry:
            os << "symmetry: m[" << i << "][" << j << "] = " << lhs << " != m[" << j << "]["
               << i << "] = " << rhs;
            break;
        case Axiom::ZeroDiagonal:
            os << "zero diagonal: m[" << i << "][" << i << "] = " << lhs;
            break;
        case Axiom::Positivity:
            os << "positivity: m[" << i << "][" << j << "] = " << lhs << " <= 0";
            break;
        case Axiom::Triangle:
            os << "triangle: m[" << i << "][" << k << "] = " << lhs << " > m[" << i << "]["
               << j << "] + m[" << j << "][" << k << "] = " << rhs;
            break;
    }
    return os.str();
}

std::vector<MetricViolation> validate_metric(const Eigen::MatrixXd& matrix, double tolerance) {
    if (matrix.rows() != matrix.cols()) {
        throw std::invalid_argument("distance matrix must be square");
    }
    const Index n = matrix.rows();
    const double scale = n > 0 ? std::max(1.0, matrix.cwiseAbs().maxCoeff()) : 1.0;
    const double eps = tolerance * scale;

    std::vector<MetricViolation> violations;
    for (Index i = 0; i < n; ++i) {
        if (std::abs(matrix(i, i)) > eps) {
            violations.push_back({MetricViolation::Axiom::ZeroDiagonal, i, i, -1, matrix(i, i), 0.0});
        }
        for (Index j = i + 1; j < n; ++j) {
            if (std::abs(matrix(i, j) - matrix(j, i)) > eps) {
                violations.push_back(
                    {MetricViolation::Axiom::Symmetry, i, j, -1, matrix(i, j), matrix(j, i)});
            }
            if (!(matrix(i, j) > eps)) {
                violations.push_back(
                    {MetricViolation::Axiom::Positivity, i, j, -1, matrix(i, j), 0.0});
            }
        }
    }
    // One canonical orientation (i < k) per triangle; the mirrored check is
    // redundant once symmetry has been verified above.
    for (Index i = 0; i < n; ++i) {
        for (Index k = i + 1; k < n; ++k) {
            for (Index j = 0; j < n; ++j) {
                if (j == i || j == k) continue;
                const double direct = matrix(i, k);
                const double via = matrix(i, j) + matrix(j, k);
                if (direct > via + eps) {
                    violations.push_back({MetricViolation::Axiom::Triangle, i, j, k, direct, via});
                }
            }
        }
    }
    return violations;
}

MetricInstance MetricInstance::from_coords(Eigen::MatrixXd points, Norm norm) {
    if (points.rows() < 1) throw std::invalid_argument("instance needs at least one point");
    if (points.cols() < 1) throw std::invalid_argument("coordinate dimension must be >= 1");

    MetricInstance inst;
    inst.is_coords_ = true;
    inst.size_ = points.rows();
    inst.norm_ = norm;
    inst.points_ = std::move(points);

    for (Index i = 0; i < inst.size_; ++i) {
        for (Index j = i + 1; j < inst.size_; ++j) {
            if (!(inst.distance(i, j) > 0.0)) {
                throw std::invalid_argument("coincident points " + std::to_string(i) + " and " +
                                            std::to_string(j));
            }
        }
    }
    return inst;
}

MetricInstance MetricInstance::from_matrix(Eigen::MatrixXd dist, double tolerance) {
    if (dist.rows() < 1) throw std::invalid_argument("instance needs at least one point");
    auto violations = validate_metric(dist, tolerance);
    if (!violations.empty()) {
        std::ostringstream os;
        os << "invalid metric (" << violations.size() << " violations):";
        const std::size_t shown = std::min<std::size_t>(violations.size(), 5);
        for (std::size_t v = 0; v < shown; ++v) os << "\n  " << violations[v].describe();
        throw std::invalid_argument(os.str());
    }

    MetricInstance inst;
    inst.is_coords_ = false;
    inst.size_ = dist.rows();
    inst.dist_ = std::move(dist);
    return inst;
}

Norm MetricInstance::norm() const {
    if (!is_coords_) throw std::invalid_argument("matrix instance has no norm");
    return norm_;
}

double MetricInstance::distance(Index i, Index j) const {
    if (i < 0 || i >= size_ || j < 0 || j >= size_) {
        throw std::out_of_range("point index out of range: (" + std::to_string(i) + ", " +
                                std::to_string(j) + ") with N = " + std::to_string(size_));
    }
    if (i == j) return 0.0;
    if (!is_coords_) return dist_(i, j);

    const auto diff = points_.row(i) - points_.row(j);
    switch (norm_) {
        case Norm::L1: return diff.lpNorm<1>();
        case Norm::L2: return diff.norm();
        case Norm::Linf: return diff.lpNorm<Eigen::Infinity>();
    }
    return diff.norm();
}

double MetricInstance::norm_from_origin(Index i) const {
    if (!is_coords_) throw std::invalid_argument("matrix instance has no coordinates");
    if (i < 0 || i >= size_) throw std::out_of_range("point index out of range");
    switch (norm_) {
        case Norm::L1: return points_.row(i).lpNorm<1>();
        case Norm::L2: return points_.row(i).norm();
        case Norm::Linf: return points_.row(i).lpNorm<Eigen::Infinity>();
    }
    return points_.row(i).norm();
}

const Eigen::MatrixXd& MetricInstance::coords() const {
    if (!is_coords_) throw std::invalid_argument("matrix instance has no coordinates");
    return points_;
}

Eigen::MatrixXd MetricInstance::distance_matrix() const {
    if (!is_coords_) return dist_;
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(size_, size_);
    for (Index i = 0; i < size_; ++i) {
        for (Index j = i + 1; j < size_; ++j) {
            out(i, j) = out(j, i) = distance(i, j);
        }
    }
    return out;
}

Subset MetricInstance::all_points() const {
    Subset out(static_cast<std::size_t>(size_));
    for (Index i = 0; i < size_; ++i) out[static_cast<std::size_t>(i)] = i;
    return out;
}

void check_subset(const MetricInstance& instance, const Subset& subset) {
    Index prev = -1;
    for (Index id : subset) {
        if (id < 0 || id >= instance.size()) {
            throw std::invalid_argument("subset index out of range: " + std::to_string(id));
        }
        if (id <= prev) {
            throw std::invalid_argument("subset must be sorted and duplicate-free");
        }
        prev = id;
    }
}

double distance(const MetricInstance& instance, Index i, Index j) {
    return instance.distance(i, j);
}

double diameter(const MetricInstance& instance, const Subset& subset) {
    if (subset.empty()) throw std::invalid_argument("diameter of an empty subset");
    check_subset(instance, subset);
    double best = 0.0;
    for (std::size_t a = 0; a < subset.size(); ++a) {
        for (std::size_t b = a + 1; b < subset.size(); ++b) {
            best = std::max(best, instance.distance(subset[a], subset[b]));
        }
    }
    return best;
}

Subset closed_ball(const MetricInstance& instance, Index center, double r) {
    if (center < 0 || center >= instance.size()) {
        throw std::out_of_range("ball center out of range");
    }
    if (r < 0.0) throw std::invalid_argument("ball radius must be nonnegative");
    Subset out;
    for (Index i = 0; i < instance.size(); ++i) {
        if (instance.distance(center, i) <= r) out.push_back(i);
    }
    return out;
}

Normalized normalize(const MetricInstance& instance, const Subset& subset) {
    check_subset(instance, subset);
    if (subset.size() < 2) {
        throw std::invalid_argument("normalization needs a subset with at least two points");
    }
    const double diam = diameter(instance, subset);
    if (!(diam > 0.0)) throw std::invalid_argument("cannot normalize a zero-diameter subset");

    const Index n = static_cast<Index>(subset.size());
    Eigen::MatrixXd scaled = Eigen::MatrixXd::Zero(n, n);
    for (Index a = 0; a < n; ++a) {
        for (Index b = a + 1; b < n; ++b) {
            const double d = instance.distance(subset[static_cast<std::size_t>(a)],
                                               subset[static_cast<std::size_t>(b)]) /
                             diam;
            scaled(a, b) = scaled(b, a) = d;
        }
    }
    return {MetricInstance::from_matrix(std::move(scaled)), diam};
}

}  // namespace nup
