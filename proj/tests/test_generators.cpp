#include <doctest.h>

#include <cmath>

#include "nup/generators.hpp"
#include "nup/io.hpp"
#include "nup/packing.hpp"

using namespace nup;

TEST_SUITE("generators") {

TEST_CASE("family and mode round trips") {
    for (Family family : {Family::UniformCube, Family::Equidistant, Family::Grid,
                          Family::RandomMetric}) {
        CHECK(family_from_string(to_string(family)) == family);
    }
    CHECK_THROWS_AS((void)family_from_string("clusters"), std::invalid_argument);

    for (RadiusMode mode : {RadiusMode::Constant, RadiusMode::UniformRange,
                            RadiusMode::NnFraction, RadiusMode::Pareto}) {
        CHECK(radius_mode_from_string(to_string(mode)) == mode);
    }
    CHECK_THROWS_AS((void)radius_mode_from_string("gaussian"), std::invalid_argument);
}

TEST_CASE("uniform cube") {
    GeneratorSpec spec;
    spec.family = Family::UniformCube;
    spec.n = 20;
    spec.d = 3;
    spec.seed = 5;
    const MetricInstance inst = gen_instance(spec);
    CHECK(inst.size() == 20);
    CHECK(inst.dim() == 3);
    for (Index i = 0; i < inst.size(); ++i) {
        for (Index c = 0; c < 3; ++c) {
            CHECK(inst.coords()(i, c) >= 0.0);
            CHECK(inst.coords()(i, c) < 1.0);
        }
    }

    spec.n = 0;
    CHECK_THROWS_AS((void)gen_instance(spec), std::invalid_argument);
    spec.n = 5;
    spec.d = 0;
    CHECK_THROWS_AS((void)gen_instance(spec), std::invalid_argument);
}

TEST_CASE("generation is deterministic in the seed") {
    GeneratorSpec spec;
    spec.family = Family::UniformCube;
    spec.n = 10;
    spec.d = 2;
    spec.seed = 77;
    const std::string first = instance_to_json(gen_instance(spec)).dump();
    const std::string second = instance_to_json(gen_instance(spec)).dump();
    CHECK(first == second);

    spec.seed = 78;
    CHECK(instance_to_json(gen_instance(spec)).dump() != first);
}

TEST_CASE("equidistant") {
    GeneratorSpec spec;
    spec.family = Family::Equidistant;
    spec.n = 4;
    const MetricInstance inst = gen_instance(spec);
    CHECK(validate_metric(inst.distance_matrix()).empty());
    CHECK(diameter(inst, inst.all_points()) == doctest::Approx(1.0));
    CHECK(inst.distance(0, 3) == doctest::Approx(1.0));
}

TEST_CASE("grid") {
    GeneratorSpec spec;
    spec.family = Family::Grid;
    spec.k = 3;
    spec.d = 2;
    const MetricInstance inst = gen_instance(spec);
    CHECK(inst.size() == 9);
    CHECK(inst.dim() == 2);
    CHECK(inst.distance(0, 1) == doctest::Approx(1.0));        // unit spacing
    CHECK(inst.distance(0, 8) == doctest::Approx(2.0 * std::sqrt(2.0)));

    spec.k = 200;
    spec.d = 4;  // 1.6e9 points: rejected
    CHECK_THROWS_AS((void)gen_instance(spec), std::invalid_argument);
}

TEST_CASE("random metric passes validation") {
    GeneratorSpec spec;
    spec.family = Family::RandomMetric;
    spec.n = 12;
    spec.seed = 99;
    const MetricInstance inst = gen_instance(spec);
    CHECK(inst.size() == 12);
    CHECK(validate_metric(inst.distance_matrix()).empty());
}

TEST_CASE("constant radii") {
    GeneratorSpec gspec;
    gspec.family = Family::Equidistant;
    gspec.n = 5;
    const MetricInstance equi = gen_instance(gspec);
    const Subset all = equi.all_points();

    RadiusSpec rspec;
    rspec.mode = RadiusMode::Constant;
    rspec.r = 0.99;
    const RadiusAssignment radii = gen_radii(equi, all, rspec);
    for (Index id : all) CHECK(radii.at(id) == 0.99);
    CHECK(is_R_separated(equi, all, radii));

    rspec.r = 0.0;
    CHECK_THROWS_AS((void)gen_radii(equi, all, rspec), std::invalid_argument);
}

TEST_CASE("uniform range radii") {
    GeneratorSpec gspec;
    gspec.family = Family::UniformCube;
    gspec.n = 30;
    gspec.d = 2;
    gspec.seed = 4;
    const MetricInstance inst = gen_instance(gspec);
    const Subset all = inst.all_points();

    RadiusSpec rspec;
    rspec.mode = RadiusMode::UniformRange;
    rspec.lo = 0.1;
    rspec.hi = 0.2;
    rspec.seed = 9;
    const RadiusAssignment radii = gen_radii(inst, all, rspec);
    for (Index id : all) {
        CHECK(radii.at(id) >= 0.1);
        CHECK(radii.at(id) < 0.2);
    }

    rspec.lo = 0.0;
    CHECK_THROWS_AS((void)gen_radii(inst, all, rspec), std::invalid_argument);
    rspec.lo = 0.3;  // above hi
    CHECK_THROWS_AS((void)gen_radii(inst, all, rspec), std::invalid_argument);
}

TEST_CASE("nn_fraction radii separate the full subset by construction") {
    for (std::uint64_t seed : {1, 2, 3, 4, 5}) {
        GeneratorSpec gspec;
        gspec.family = Family::UniformCube;
        gspec.n = 15;
        gspec.d = 2;
        gspec.seed = seed;
        const MetricInstance inst = gen_instance(gspec);
        const Subset all = inst.all_points();

        RadiusSpec rspec;
        rspec.mode = RadiusMode::NnFraction;
        rspec.beta = 0.9;
        const RadiusAssignment radii = gen_radii(inst, all, rspec);
        CHECK(is_R_separated(inst, all, radii));
    }
}

TEST_CASE("nn_fraction parameter validation") {
    const MetricInstance pair = gen_instance([] {
        GeneratorSpec spec;
        spec.family = Family::Equidistant;
        spec.n = 2;
        return spec;
    }());

    RadiusSpec rspec;
    rspec.mode = RadiusMode::NnFraction;
    rspec.beta = 1.0;
    CHECK_THROWS_AS((void)gen_radii(pair, pair.all_points(), rspec), std::invalid_argument);
    rspec.beta = 0.0;
    CHECK_THROWS_AS((void)gen_radii(pair, pair.all_points(), rspec), std::invalid_argument);
    rspec.beta = 0.5;
    CHECK_THROWS_AS((void)gen_radii(pair, {0}, rspec), std::invalid_argument);
    CHECK_NOTHROW((void)gen_radii(pair, pair.all_points(), rspec));
}

TEST_CASE("pareto radii respect scale and cap") {
    GeneratorSpec gspec;
    gspec.family = Family::UniformCube;
    gspec.n = 100;
    gspec.d = 1;
    gspec.seed = 12;
    const MetricInstance inst = gen_instance(gspec);
    const Subset all = inst.all_points();

    RadiusSpec rspec;
    rspec.mode = RadiusMode::Pareto;
    rspec.alpha = 2.0;
    rspec.scale = 0.05;
    rspec.cap = 0.3;
    rspec.seed = 21;
    const RadiusAssignment radii = gen_radii(inst, all, rspec);
    for (Index id : all) {
        CHECK(radii.at(id) >= 0.05);
        CHECK(radii.at(id) <= 0.3);
    }

    rspec.cap = 0.01;  // below scale
    CHECK_THROWS_AS((void)gen_radii(inst, all, rspec), std::invalid_argument);
}

TEST_CASE("radius generation is deterministic in the seed") {
    GeneratorSpec gspec;
    gspec.family = Family::UniformCube;
    gspec.n = 10;
    gspec.d = 2;
    gspec.seed = 3;
    const MetricInstance inst = gen_instance(gspec);
    const Subset all = inst.all_points();

    RadiusSpec rspec;
    rspec.mode = RadiusMode::UniformRange;
    rspec.lo = 0.05;
    rspec.hi = 0.4;
    rspec.seed = 1234;
    const RadiusAssignment first = gen_radii(inst, all, rspec);
    const RadiusAssignment second = gen_radii(inst, all, rspec);
    for (Index id : all) CHECK(first.at(id) == second.at(id));
}

}  // TEST_SUITE
