#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hhphi/convexity.hpp"
#include "hhphi/corpus.hpp"
#include "support.hpp"

using namespace hhphi;
using testsupport::TestRng;

namespace {
const double pi = std::numbers::pi;

SegmentGrid grid_on(double a, double b, double phi, int n) {
    return SegmentGrid::uniform(PhiSegment(a, b, phi), n);
}
} // namespace

TEST_CASE("|f'| of x^2 is phi-convex on (0,1,0)") {
    Expr df = parse("x^2").differentiate();
    PhiSegment s(0, 1, 0);
    auto g = [&](double t) { return std::abs(df.eval(s.point_at(t))); };
    SegmentGrid grid = SegmentGrid::uniform(s, 1025);
    auto rep = check_membership(g, g(0.0), g(1.0), ClassKind::PhiConvex, grid, 1e-9, 1.0, "|f'|");
    CHECK(rep.certified());
    CHECK(rep.grid_n == 1025);
    CHECK(!rep.witness.has_value());

    // brute-force oracle over the same grid agrees on the worst violation
    double worst = -1e300;
    for (double t : grid.t_values) worst = std::max(worst, g(t) - ((1 - t) * g(0.0) + t * g(1.0)));
    CHECK(testsupport::close(rep.max_violation, worst, 1e-15));
}

TEST_CASE("an interior bump falsifies the quasi bound") {
    auto g = [](double t) { return t * (1 - t); };
    auto rep = check_membership(g, ClassKind::QuasiPhiConvex, grid_on(0, 1, 0, 1025));
    CHECK(rep.verdict == Verdict::Falsified);
    REQUIRE(rep.witness.has_value());
    CHECK(testsupport::close(rep.witness->violation, 0.25, 1e-12));
    CHECK(testsupport::close(rep.witness->lambda, 0.5, 1e-12));
    CHECK(rep.witness->t1 == 0.0);
    CHECK(rep.witness->t2 == 1.0);
}

TEST_CASE("-|x| is phi-convex along the phi = pi path from -1 toward 2") {
    Expr f = parse("-abs(x)");
    PhiSegment s(-1, 2, pi);
    auto g = [&](double t) { return require_real(f.eval(s.point_at(t)), "f"); };
    double at_u = g(0.0);
    double at_v = require_real(f.eval(Complex{2.0, 0.0}), "f(b)");
    CHECK(at_u == -1.0);
    CHECK(at_v == -2.0);
    auto rep =
        check_membership(g, at_u, at_v, ClassKind::PhiConvex, SegmentGrid::uniform(s, 1025));
    CHECK(rep.certified());
}

TEST_CASE("implication chain for exp on (0,1,0)") {
    auto rep = check_implication_chain(parse("exp(x)"), PhiSegment(0, 1, 0), 1025);
    CHECK(rep.log_report.certified());
    CHECK(rep.convex_report.certified());
    CHECK(rep.quasi_report.certified());
    CHECK(rep.bound_order_holds);
    CHECK(rep.implications_hold);
}

TEST_CASE("implication chain degenerates to equality on constants") {
    auto rep = check_implication_chain(parse("2.5"), PhiSegment(0, 1, pi / 4), 129);
    CHECK(rep.log_report.certified());
    CHECK(rep.convex_report.certified());
    CHECK(rep.quasi_report.certified());
    CHECK(rep.bound_order_holds);
    CHECK(std::fabs(rep.max_order_violation) <= 1e-12);
}

TEST_CASE("implication chain for x^2+1 keeps the bound ordering") {
    auto rep = check_implication_chain(parse("x^2+1"), PhiSegment(0, 1, 0), 513);
    CHECK(rep.convex_report.certified());
    CHECK(rep.bound_order_holds);
    CHECK(rep.implications_hold);  // whatever the log verdict, order must hold
}

TEST_CASE("implication chain rejects nonpositive f") {
    CHECK_THROWS_AS(check_implication_chain(parse("x"), PhiSegment(-1, 1, 0), 65),
                    PositivityError);
    CHECK_THROWS_AS(check_membership([](double) { return -1.0; }, ClassKind::LogPhiConvex,
                                     grid_on(0, 1, 0, 65)),
                    PositivityError);
}

TEST_CASE("falsified verdicts survive grid refinement") {
    auto g = [](double t) { return t * (1 - t); };
    // refining 9 -> 17 -> 33 keeps every node of the coarser grid
    for (int n : {9, 17, 33, 1025}) {
        auto rep = check_membership(g, ClassKind::QuasiPhiConvex, grid_on(0, 1, 0, n));
        CAPTURE(n);
        CHECK(rep.verdict == Verdict::Falsified);
        CHECK(rep.witness->violation >= 0.25 - 1e-12);
    }
}

TEST_CASE("convex-by-construction certifies at every grid size") {
    Expr f = parse("exp(x)");
    PhiSegment s(0, 1, 0);
    auto g = [&](double t) { return require_real(f.eval(s.point_at(t)), "f"); };
    for (int n : {3, 33, 1025, 4097}) {
        auto rep = check_membership(g, g(0.0), g(1.0), ClassKind::PhiConvex,
                                    SegmentGrid::uniform(s, n));
        CAPTURE(n);
        CHECK(rep.certified());
    }
}

TEST_CASE("am-gm ordering of the three bounds") {
    TestRng rng(21);
    for (int i = 0; i < 200; ++i) {
        double u = rng.uniform(0.01, 5), v = rng.uniform(0.01, 5), t = rng.uniform01();
        double geo = std::pow(u, 1 - t) * std::pow(v, t);
        double lin = (1 - t) * u + t * v;
        double mx = std::max(u, v);
        CHECK(geo <= lin + 1e-12 * (1 + lin));
        CHECK(lin <= mx + 1e-12 * (1 + mx));
    }
}

TEST_CASE("undefined derivative points are perturbed and recorded") {
    Expr df = parse("-abs(x)").differentiate();
    PhiSegment s(-1, 1, 0);  // the t = 0.5 node lands exactly on x = 0
    auto g = [&](double t) { return std::abs(df.eval(s.point_at(t))); };
    auto rep = check_membership(g, ClassKind::QuasiPhiConvex, SegmentGrid::uniform(s, 1025));
    CHECK(rep.perturbed_nodes >= 1);
    CHECK(rep.certified());  // |f'| = 1 everywhere else
}

TEST_CASE("huge power targets stay finite") {
    // |f'| of 2x+3 is the constant 2; naive 2^r would overflow for r ~ 1e6
    Expr df = parse("2*x+3").differentiate();
    PhiSegment s(0, 1, 0);
    auto g = [&](double t) { return std::abs(df.eval(s.point_at(t))); };
    auto rep = check_membership(g, 2.0, 2.0, ClassKind::PhiConvex, SegmentGrid::uniform(s, 129),
                                1e-9, 1.0e6, "|f'|^r");
    CHECK(rep.certified());
    CHECK(std::isfinite(rep.max_violation));
    CHECK(std::isfinite(rep.slack));
}

TEST_CASE("power-target verdicts match the direct computation at modest exponents") {
    // |f'| of x^2: is |2x|^2 = 4x^2 phi-convex on (0,1,0)? yes (convex)
    Expr df = parse("x^2").differentiate();
    PhiSegment s(0, 1, 0);
    auto g = [&](double t) { return std::abs(df.eval(s.point_at(t))); };
    SegmentGrid grid = SegmentGrid::uniform(s, 257);
    auto rep = check_membership(g, g(0.0), g(1.0), ClassKind::PhiConvex, grid, 1e-9, 2.0);
    CHECK(rep.certified());

    // |cos|^2 on a segment where cos dips: direct grid check against the
    // root-space gate
    Expr dsin = parse("sin(x)").differentiate();
    PhiSegment s2(0.2, 1.4, 0);
    auto g2 = [&](double t) { return std::abs(dsin.eval(s2.point_at(t))); };
    SegmentGrid grid2 = SegmentGrid::uniform(s2, 257);
    auto rep2 = check_membership(g2, g2(0.0), g2(1.0), ClassKind::PhiConvex, grid2, 1e-9, 2.0);
    bool direct_falsified = false;
    double u2 = g2(0.0) * g2(0.0), v2 = g2(1.0) * g2(1.0);
    for (double t : grid2.t_values) {
        double lhs = g2(t) * g2(t);
        if (lhs > (1 - t) * u2 + t * v2 + 1e-9 * (1 + std::max(u2, v2))) direct_falsified = true;
    }
    CHECK(rep2.certified() == !direct_falsified);
}

TEST_CASE("exhaustive pair mode") {
    // convex sample: certified over all pairs
    auto gc = [](double t) { return t * t; };
    auto repc = check_membership_pairs(gc, ClassKind::PhiConvex, grid_on(0, 1, 0, 17));
    CHECK(repc.certified());

    // bump: the pair (0, 1) still witnesses the quasi violation
    auto gb = [](double t) { return t * (1 - t); };
    auto repb = check_membership_pairs(gb, ClassKind::QuasiPhiConvex, grid_on(0, 1, 0, 17));
    CHECK(repb.verdict == Verdict::Falsified);
    REQUIRE(repb.witness.has_value());
    CHECK(repb.witness->violation >= 0.25 - 1e-12);

    // pair mode subsumes the single-path check (the (0, 1) pair is included),
    // so its worst violation can only be larger
    auto gs = [](double t) { return std::sin(3.5 * pi * t) - 2.0 * t; };
    auto single = check_membership(gs, ClassKind::PhiConvex, grid_on(0, 1, 0, 33));
    auto pairs = check_membership_pairs(gs, ClassKind::PhiConvex, grid_on(0, 1, 0, 33));
    CHECK(pairs.verdict == Verdict::Falsified);
    CHECK(pairs.witness->violation >= single.max_violation - 1e-12);
}
