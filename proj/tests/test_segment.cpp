#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hhphi/segment.hpp"
#include "support.hpp"

using namespace hhphi;
using testsupport::TestRng;

namespace {
const double pi = std::numbers::pi;
}

TEST_CASE("point_at") {
    CHECK(std::abs(PhiSegment(0, 1, 0).point_at(0.5) - Complex{0.5, 0.0}) <= 1e-15);
    CHECK(std::abs(PhiSegment(0, 1, pi / 2).point_at(1.0) - Complex{0.0, 1.0}) <= 1e-15);
    // (a=1, b=3, phi=pi/4) at t=1/2: 1 + sqrt(2)/2 (1+i)
    Complex expected{1.0 + std::sqrt(2.0) / 2.0, std::sqrt(2.0) / 2.0};
    CHECK(std::abs(PhiSegment(1, 3, pi / 4).point_at(0.5) - expected) <= 1e-12);
    CHECK(PhiSegment(0, 1, 0).point_at(0.0) == Complex{0.0, 0.0});
    CHECK(std::abs(PhiSegment(0, 1, 0).point_at(1.0) - Complex{1.0, 0.0}) <= 1e-15);
}

TEST_CASE("length_factor is the displacement modulus") {
    CHECK(PhiSegment(0, 1, 0).length_factor() == 1.0);
    CHECK(PhiSegment(0, 1, pi / 2).length_factor() == 1.0);
    CHECK(PhiSegment(2, 5, pi / 4).length_factor() == 3.0);
    TestRng rng(11);
    for (int i = 0; i < 50; ++i) {
        PhiSegment s(rng.uniform(-3, 0), rng.uniform(0.5, 4), rng.uniform(0, pi));
        CHECK(testsupport::close(std::abs(s.displacement()), s.length_factor(), 1e-12));
    }
}

TEST_CASE("midpoint_point") {
    CHECK(std::abs(PhiSegment(0, 1, 0).midpoint_point() - Complex{0.5, 0.0}) <= 1e-15);
    CHECK(std::abs(PhiSegment(0, 2, pi / 2).midpoint_point() - Complex{0.0, 1.0}) <= 1e-15);
    Complex expected{1.25, 0.4330127018922193};
    CHECK(std::abs(PhiSegment(1, 2, pi / 3).midpoint_point() - expected) <= 1e-12);
}

TEST_CASE("point_at is affine in t") {
    TestRng rng(12);
    for (int i = 0; i < 200; ++i) {
        double a = rng.uniform(-2, 2);
        PhiSegment s(a, a + rng.uniform(0.1, 3), rng.uniform(0, pi / 2));
        double t1 = rng.uniform01(), t2 = rng.uniform01(), lam = rng.uniform01();
        Complex mixed = s.point_at(lam * t1 + (1 - lam) * t2);
        Complex combo = lam * s.point_at(t1) + (1 - lam) * s.point_at(t2);
        CHECK(std::abs(mixed - combo) <= 1e-14 * (1.0 + std::abs(mixed)));
    }
}

TEST_CASE("phi = 0 paths are exactly real") {
    TestRng rng(13);
    for (int i = 0; i < 50; ++i) {
        double a = rng.uniform(-2, 2);
        PhiSegment s(a, a + rng.uniform(0.1, 3), 0.0);
        CHECK(s.point_at(rng.uniform01()).imag() == 0.0);
    }
}

TEST_CASE("segment validation") {
    CHECK_THROWS_AS(PhiSegment(1, 1, 0), std::invalid_argument);
    CHECK_THROWS_AS(PhiSegment(2, 1, 0), std::invalid_argument);
    CHECK_THROWS_AS(PhiSegment(0, 1, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(PhiSegment(0, 1, pi + 0.1), std::invalid_argument);
    CHECK_THROWS_AS(PhiSegment(0, 1, 0).point_at(-0.01), std::out_of_range);
    CHECK_THROWS_AS(PhiSegment(0, 1, 0).point_at(1.01), std::out_of_range);
    CHECK(PhiSegment(0, 1, pi / 2).in_theorem_range());
    CHECK(!PhiSegment(0, 1, 2.0).in_theorem_range());
    CHECK(!PhiSegment(0, 1, pi).in_theorem_range());
}

TEST_CASE("uniform grids") {
    SegmentGrid g = SegmentGrid::uniform(PhiSegment(0, 1, 0), 5);
    CHECK(g.t_values.size() == 5);
    CHECK(g.t_values.front() == 0.0);
    CHECK(g.t_values.back() == 1.0);
    for (std::size_t i = 1; i < g.t_values.size(); ++i)
        CHECK(g.t_values[i] > g.t_values[i - 1]);
    CHECK_THROWS_AS(SegmentGrid::uniform(PhiSegment(0, 1, 0), 2), std::invalid_argument);
}
