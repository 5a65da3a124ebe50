#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "waveqed/model.hpp"

using namespace waveqed;

TEST_CASE("validate accepts the reference parameter points") {
    ModelParams p;
    p.xi = 1.0;
    p.g0 = 0.2;
    p.delta = 0.0;
    p.nc = 1;
    CHECK_NOTHROW(validate(p));

    p.nc = 2;
    p.d = 12;
    CHECK_NOTHROW(validate(p));
}

TEST_CASE("validate rejects invariant violations") {
    ModelParams p;
    p.nc = 2;
    p.d = 3;
    CHECK_THROWS_AS(validate(p), std::invalid_argument);  // odd separation

    p.d = 0;
    CHECK_THROWS_AS(validate(p), std::invalid_argument);

    p.d = -4;
    CHECK_THROWS_AS(validate(p), std::invalid_argument);

    p = ModelParams{};
    p.nc = 3;
    CHECK_THROWS_AS(validate(p), std::invalid_argument);

    p = ModelParams{};
    p.xi = 0.0;
    CHECK_THROWS_AS(validate(p), std::invalid_argument);

    p = ModelParams{};
    p.g0 = -0.2;
    CHECK_THROWS_AS(validate(p), std::invalid_argument);
}

TEST_CASE("validation is idempotent and normalizes the unused separation") {
    ModelParams p;
    p.nc = 1;
    p.d = 8;  // irrelevant for a single coupling point
    const ModelParams v1 = validate(p);
    CHECK(v1.d == 0);
    const ModelParams v2 = validate(v1);
    CHECK(v2.d == v1.d);
    CHECK(v2.nc == v1.nc);
    CHECK(v2.g0 == v1.g0);
}

TEST_CASE("per-leg coupling follows the coupling-point count") {
    ModelParams p;
    p.g0 = 0.2;
    p.nc = 2;
    p.d = 2;
    CHECK(validate(p).per_leg_coupling() == doctest::Approx(0.1));
    p.nc = 1;
    CHECK(validate(p).per_leg_coupling() == doctest::Approx(0.2));
}

TEST_CASE("grid validation enforces the no-reflection bound") {
    ModelParams p = validate(ModelParams{});
    SimulationGrid g{100.0, 1001, 400};
    CHECK_NOTHROW(validate(g, p));

    g.t_max = 200.0;  // 2 xi t = 400 reaches the boundary
    CHECK_THROWS_AS(validate(g, p), std::invalid_argument);

    g = SimulationGrid{10.0, 1, 400};
    CHECK_THROWS_AS(validate(g, p), std::invalid_argument);
}
