#pragma once

#include <cstdint>
#include <string>

#include "nup/common.hpp"
#include "nup/metric.hpp"

namespace nup {

enum class Family { UniformCube, Equidistant, Grid, RandomMetric };

std::string to_string(Family family);
Family family_from_string(const std::string& name);

/// Seeded instance recipe. Identical specs reproduce identical instances.
struct GeneratorSpec {
    Family family = Family::UniformCube;
    Index n = 8;           // uniform_cube, equidistant, random_metric
    int d = 1;             // uniform_cube, grid
    Norm norm = Norm::L2;  // coordinate families
    int k = 2;             // grid side length
    std::uint64_t seed = 0;
};

/// uniform_cube: n i.i.d. points in [0,1]^d. equidistant: all off-diagonal
/// distances 1. grid: k^d lattice with unit spacing. random_metric: random
/// symmetric weights repaired into a metric by shortest-path closure.
MetricInstance gen_instance(const GeneratorSpec& spec);

enum class RadiusMode { Constant, UniformRange, NnFraction, Pareto };

std::string to_string(RadiusMode mode);
RadiusMode radius_mode_from_string(const std::string& name);

struct RadiusSpec {
    RadiusMode mode = RadiusMode::NnFraction;
    double r = 0.1;      // constant
    double lo = 0.05;    // uniform_range
    double hi = 0.2;     // uniform_range
    double beta = 0.9;   // nn_fraction, in (0, 1)
    double alpha = 2.0;  // pareto shape
    double scale = 0.05; // pareto scale
    double cap = 1.0;    // pareto cap
    std::uint64_t seed = 0;
};

/// Draws one radius per subset point. nn_fraction sets R(a) to beta times
/// the distance from a to its nearest subset neighbor, which makes the
/// whole subset R-separated by construction; the other modes ignore the
/// geometry and generally need subset extraction afterwards.
RadiusAssignment gen_radii(const MetricInstance& instance, const Subset& subset,
                           const RadiusSpec& spec);

}  // namespace nup
