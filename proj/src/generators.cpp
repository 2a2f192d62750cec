#include "nup/generators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "nup/rng.hpp"

namespace nup {

namespace {

MetricInstance gen_uniform_cube(const GeneratorSpec& spec) {
    if (spec.n < 1) throw std::invalid_argument("uniform_cube needs n >= 1");
    if (spec.d < 1) throw std::invalid_argument("uniform_cube needs d >= 1");

    Rng rng(spec.seed);
    Eigen::MatrixXd points(spec.n, spec.d);
    for (Index i = 0; i < spec.n; ++i) {
        while (true) {
            for (int c = 0; c < spec.d; ++c) points(i, c) = rng.uniform();
            bool duplicate = false;
            for (Index j = 0; j < i && !duplicate; ++j) {
                duplicate = (points.row(i) - points.row(j)).norm() == 0.0;
            }
            if (!duplicate) break;  // exact collisions are essentially impossible
        }
    }
    return MetricInstance::from_coords(std::move(points), spec.norm);
}

MetricInstance gen_equidistant(const GeneratorSpec& spec) {
    if (spec.n < 1) throw std::invalid_argument("equidistant needs n >= 1");
    Eigen::MatrixXd dist = Eigen::MatrixXd::Ones(spec.n, spec.n);
    dist.diagonal().setZero();
    return MetricInstance::from_matrix(std::move(dist));
}

MetricInstance gen_grid(const GeneratorSpec& spec) {
    if (spec.k < 1) throw std::invalid_argument("grid needs side length k >= 1");
    if (spec.d < 1) throw std::invalid_argument("grid needs d >= 1");

    Index n = 1;
    for (int c = 0; c < spec.d; ++c) {
        n *= spec.k;
        if (n > 1'000'000) throw std::invalid_argument("grid too large");
    }
    Eigen::MatrixXd points(n, spec.d);
    for (Index i = 0; i < n; ++i) {
        Index rest = i;
        for (int c = 0; c < spec.d; ++c) {
            points(i, c) = static_cast<double>(rest % spec.k);
            rest /= spec.k;
        }
    }
    return MetricInstance::from_coords(std::move(points), spec.norm);
}

MetricInstance gen_random_metric(const GeneratorSpec& spec) {
    if (spec.n < 1) throw std::invalid_argument("random_metric needs n >= 1");

    Rng rng(spec.seed);
    const Index n = spec.n;
    Eigen::MatrixXd dist = Eigen::MatrixXd::Zero(n, n);
    for (Index i = 0; i < n; ++i) {
        for (Index j = i + 1; j < n; ++j) {
            dist(i, j) = dist(j, i) = 0.1 + 0.9 * rng.uniform();
        }
    }

    // Floyd-Warshall closure: shortest paths over positive weights are a
    // metric, and stay strictly positive off the diagonal
    for (Index k = 0; k < n; ++k) {
        for (Index i = 0; i < n; ++i) {
            for (Index j = 0; j < n; ++j) {
                dist(i, j) = std::min(dist(i, j), dist(i, k) + dist(k, j));
            }
        }
    }
    return MetricInstance::from_matrix(std::move(dist));
}

}  // namespace

std::string to_string(Family family) {
    switch (family) {
        case Family::UniformCube: return "uniform_cube";
        case Family::Equidistant: return "equidistant";
        case Family::Grid: return "grid";
        case Family::RandomMetric: return "random_metric";
    }
    return "uniform_cube";
}

Family family_from_string(const std::string& name) {
    if (name == "uniform_cube") return Family::UniformCube;
    if (name == "equidistant") return Family::Equidistant;
    if (name == "grid") return Family::Grid;
    if (name == "random_metric") return Family::RandomMetric;
    throw std::invalid_argument("unknown generator family: " + name);
}

std::string to_string(RadiusMode mode) {
    switch (mode) {
        case RadiusMode::Constant: return "constant";
        case RadiusMode::UniformRange: return "uniform_range";
        case RadiusMode::NnFraction: return "nn_fraction";
        case RadiusMode::Pareto: return "pareto";
    }
    return "constant";
}

RadiusMode radius_mode_from_string(const std::string& name) {
    if (name == "constant") return RadiusMode::Constant;
    if (name == "uniform_range") return RadiusMode::UniformRange;
    if (name == "nn_fraction") return RadiusMode::NnFraction;
    if (name == "pareto") return RadiusMode::Pareto;
    throw std::invalid_argument("unknown radius mode: " + name);
}

MetricInstance gen_instance(const GeneratorSpec& spec) {
    switch (spec.family) {
        case Family::UniformCube: return gen_uniform_cube(spec);
        case Family::Equidistant: return gen_equidistant(spec);
        case Family::Grid: return gen_grid(spec);
        case Family::RandomMetric: return gen_random_metric(spec);
    }
    throw std::invalid_argument("unknown generator family");
}

RadiusAssignment gen_radii(const MetricInstance& instance, const Subset& subset,
                           const RadiusSpec& spec) {
    check_subset(instance, subset);
    if (subset.empty()) throw std::invalid_argument("cannot assign radii to an empty subset");

    RadiusAssignment radii;
    Rng rng(spec.seed);
    switch (spec.mode) {
        case RadiusMode::Constant:
            if (!(spec.r > 0.0)) throw std::invalid_argument("constant radius must be positive");
            for (Index id : subset) radii.set(id, spec.r);
            break;
        case RadiusMode::UniformRange:
            if (!(spec.lo > 0.0) || !(spec.hi >= spec.lo)) {
                throw std::invalid_argument("uniform_range needs 0 < lo <= hi");
            }
            for (Index id : subset) radii.set(id, rng.uniform(spec.lo, spec.hi));
            break;
        case RadiusMode::NnFraction: {
            if (!(spec.beta > 0.0 && spec.beta < 1.0)) {
                throw std::invalid_argument("nn_fraction needs beta in (0, 1)");
            }
            if (subset.size() < 2) {
                throw std::invalid_argument("nn_fraction needs at least two points");
            }
            for (Index id : subset) {
                double nearest = std::numeric_limits<double>::infinity();
                for (Index other : subset) {
                    if (other != id) nearest = std::min(nearest, instance.distance(id, other));
                }
                radii.set(id, spec.beta * nearest);
            }
            break;
        }
        case RadiusMode::Pareto: {
            if (!(spec.alpha > 0.0) || !(spec.scale > 0.0) || !(spec.cap >= spec.scale)) {
                throw std::invalid_argument("pareto needs alpha > 0, scale > 0, cap >= scale");
            }
            for (Index id : subset) {
                const double u = 1.0 - rng.uniform();  // in (0, 1]
                radii.set(id, std::min(spec.cap, spec.scale * std::pow(u, -1.0 / spec.alpha)));
            }
            break;
        }
    }
    return radii;
}

}  // namespace nup
