#include "hhphi/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace hhphi {

namespace {

double require_p(double p) {
    if (!(p > 1.0)) throw std::invalid_argument("Holder exponent requires p > 1");
    return p;
}

double require_q(double q) {
    if (!(q >= 1.0)) throw std::invalid_argument("power-mean exponent requires q >= 1");
    return q;
}

double abs_deriv_at(const Expr& df, double x) { return std::abs(df.eval(Complex{x, 0.0})); }

// (c1 v1^r + c2 v2^r)^(1/r), factored through max(v1, v2) so huge conjugate
// exponents r = p/(p-1) near p = 1 cannot overflow v^r.
double power_sum_root(double c1, double v1, double c2, double v2, double r) {
    double m = std::max(v1, v2);
    if (m <= 0.0) return 0.0;
    double s = c1 * std::pow(v1 / m, r) + c2 * std::pow(v2 / m, r);
    return m * std::pow(s, 1.0 / r);
}

void endpoint_abs_derivs(const Expr& f, const PhiSegment& s, double& A, double& B) {
    Expr df = f.differentiate();
    A = abs_deriv_at(df, s.a());
    B = abs_deriv_at(df, s.b());
}

} // namespace

std::string_view to_string(Theorem t) {
    switch (t) {
        case Theorem::Chain2: return "chain2";
        case Theorem::TT2: return "tt2";
        case Theorem::TT3: return "tt3";
        case Theorem::TT4: return "tt4";
        case Theorem::TT5: return "tt5";
        case Theorem::TT6: return "tt6";
        case Theorem::Z: return "z";
        case Theorem::ZRelaxed: return "z_relaxed";
        case Theorem::QuasiTrapezoid: return "quasi_trap";
        case Theorem::QuasiTrapezoidHolder: return "quasi_trap_holder";
        case Theorem::QuasiMidpoint: return "quasi_mid";
        case Theorem::QuasiMidpointHolder: return "quasi_mid_holder";
    }
    return "?";
}

std::optional<Theorem> theorem_from_string(std::string_view name) {
    for (Theorem t : all_theorems())
        if (to_string(t) == name) return t;
    return std::nullopt;
}

const std::vector<Theorem>& all_theorems() {
    static const std::vector<Theorem> all = {
        Theorem::Chain2,         Theorem::TT2,
        Theorem::TT3,            Theorem::TT4,
        Theorem::TT5,            Theorem::TT6,
        Theorem::Z,              Theorem::ZRelaxed,
        Theorem::QuasiTrapezoid, Theorem::QuasiTrapezoidHolder,
        Theorem::QuasiMidpoint,  Theorem::QuasiMidpointHolder,
    };
    return all;
}

bool theorem_needs_p(Theorem t) {
    return t == Theorem::TT3 || t == Theorem::TT5 || t == Theorem::TT6 ||
           t == Theorem::QuasiTrapezoidHolder || t == Theorem::QuasiMidpointHolder;
}

bool theorem_needs_q(Theorem t) { return t == Theorem::Z || t == Theorem::ZRelaxed; }

double HolderParams::conjugate() const {
    double pv = require_p(p.value());
    return pv / (pv - 1.0);
}

std::string_view to_string(BoundStatus s) {
    switch (s) {
        case BoundStatus::Holds: return "holds";
        case BoundStatus::ViolatedWithHypothesis: return "violated_with_hypothesis";
        case BoundStatus::HypothesisFalsified: return "hypothesis_falsified";
        case BoundStatus::Degenerate: return "degenerate";
    }
    return "?";
}

double lhs_trapezoid(const Expr& f, const PhiSegment& s, double tol) {
    Complex mean = segment_mean(f, s, tol);
    Complex trap = 0.5 * (f.eval(s.point_at(0.0)) + f.eval(s.endpoint()));
    return std::abs(mean - trap);
}

double lhs_midpoint(const Expr& f, const PhiSegment& s, double tol) {
    Complex mean = segment_mean(f, s, tol);
    return std::abs(mean - f.eval(s.midpoint_point()));
}

double rhs_tt2(const Expr& f, const PhiSegment& s) {
    double A, B;
    endpoint_abs_derivs(f, s, A, B);
    return s.length_factor() / 8.0 * (A + B);
}

double rhs_tt3(const Expr& f, const PhiSegment& s, double p) {
    require_p(p);
    double A, B;
    endpoint_abs_derivs(f, s, A, B);
    double r = p / (p - 1.0);
    return s.length_factor() / (2.0 * std::pow(p + 1.0, 1.0 / p)) *
           power_sum_root(0.5, A, 0.5, B, r);
}

double rhs_tt4(const Expr& f, const PhiSegment& s) { return rhs_tt2(f, s); }

double rhs_tt5(const Expr& f, const PhiSegment& s, double p) {
    require_p(p);
    double A, B;
    endpoint_abs_derivs(f, s, A, B);
    double r = p / (p - 1.0);
    return s.length_factor() / 16.0 * std::pow(4.0 / (p + 1.0), 1.0 / p) *
           (power_sum_root(3.0, A, 1.0, B, r) + power_sum_root(1.0, A, 3.0, B, r));
}

double rhs_tt6(const Expr& f, const PhiSegment& s, double p) {
    require_p(p);
    double A, B;
    endpoint_abs_derivs(f, s, A, B);
    return s.length_factor() / 4.0 * std::pow(4.0 / (p + 1.0), 1.0 / p) * (A + B);
}

double rhs_tt6_tight(const Expr& f, const PhiSegment& s, double p) {
    require_p(p);
    double A, B;
    endpoint_abs_derivs(f, s, A, B);
    return s.length_factor() / 16.0 * (std::pow(3.0, (p - 1.0) / p) + 1.0) *
           std::pow(4.0 / (p + 1.0), 1.0 / p) * (A + B);
}

double rhs_z(const Expr& f, const PhiSegment& s, double q) {
    require_q(q);
    // q = 1 is the arithmetic mean; computing it directly keeps the identity
    // rhs_z(q=1) == rhs_tt2 exact instead of up to pow/sum rounding
    if (q == 1.0) return rhs_tt2(f, s);
    double A, B;
    endpoint_abs_derivs(f, s, A, B);
    return s.length_factor() / 8.0 *
           (power_sum_root(2.0 / 3.0, A, 1.0 / 3.0, B, q) +
            power_sum_root(1.0 / 3.0, A, 2.0 / 3.0, B, q));
}

double rhs_z_relaxed(const Expr& f, const PhiSegment& s, double q) {
    require_q(q);
    double A, B;
    endpoint_abs_derivs(f, s, A, B);
    return s.length_factor() / 8.0 * ((std::pow(2.0, 1.0 / q) + 1.0) / std::pow(3.0, 1.0 / q)) *
           (A + B);
}

double rhs_quasi(const Expr& f, const PhiSegment& s, QuasiKind) {
    double A, B;
    endpoint_abs_derivs(f, s, A, B);
    return s.length_factor() / 4.0 * std::max(A, B);
}

double rhs_quasi_holder(const Expr& f, const PhiSegment& s, double p, QuasiKind) {
    require_p(p);
    double A, B;
    endpoint_abs_derivs(f, s, A, B);
    // [max(A^r, B^r)]^{1/r} collapses to max(A, B)
    return s.length_factor() / (2.0 * std::pow(p + 1.0, 1.0 / p)) * std::max(A, B);
}

ChainReport check_hadamard_chain(const Expr& f, const PhiSegment& s, double tol, int grid_n) {
    ChainReport rep{};
    rep.midpoint_value = require_real(f.eval(s.midpoint_point()), "f at the midpoint");
    rep.mean_value = require_real(segment_mean(f, s, tol), "segment mean of f");
    double at_a = require_real(f.eval(s.point_at(0.0)), "f(a)");
    double at_endpoint = require_real(f.eval(s.endpoint()), "f at the endpoint");
    double at_b = require_real(f.eval(Complex{s.b(), 0.0}), "f(b)");
    rep.endpoint_trapezoid = 0.5 * (at_a + at_endpoint);
    rep.generator_trapezoid = 0.5 * (at_a + at_b);

    auto slack = [&](double v) { return 1e-9 * (1.0 + std::fabs(v)) + tol; };
    rep.link1 = rep.midpoint_value <= rep.mean_value + slack(rep.mean_value);
    rep.link2 = rep.mean_value <= rep.endpoint_trapezoid + slack(rep.endpoint_trapezoid);
    rep.link3 = rep.endpoint_trapezoid <= rep.generator_trapezoid + slack(rep.generator_trapezoid);
    rep.endpoint_below_generator = at_endpoint <= at_b + slack(at_b);

    rep.positive = at_a > 0.0 && at_b > 0.0 && at_endpoint > 0.0;
    SegmentGrid grid = SegmentGrid::uniform(s, grid_n);
    for (double t : grid.t_values) {
        double v = require_real(f.eval(s.point_at(t)), "f on the path");
        if (!(v > 0.0)) rep.positive = false;
    }
    return rep;
}

namespace {

struct LhsRhs {
    double lhs;
    double rhs;
    std::optional<double> aux;
    std::optional<ChainReport> chain;
    std::string note;
};

LhsRhs evaluate_sides(Theorem theorem, const Expr& f, const PhiSegment& s,
                      const HolderParams& params, double tol, int grid_n) {
    switch (theorem) {
        case Theorem::Chain2: {
            ChainReport chain = check_hadamard_chain(f, s, tol, grid_n);
            return {chain.midpoint_value, chain.generator_trapezoid, std::nullopt, chain, ""};
        }
        case Theorem::TT2:
            return {lhs_trapezoid(f, s, tol), rhs_tt2(f, s), std::nullopt, std::nullopt, ""};
        case Theorem::TT3:
            return {lhs_trapezoid(f, s, tol), rhs_tt3(f, s, params.p.value()), std::nullopt,
                    std::nullopt, ""};
        case Theorem::TT4:
            return {lhs_midpoint(f, s, tol), rhs_tt4(f, s), std::nullopt, std::nullopt, ""};
        case Theorem::TT5:
            return {lhs_midpoint(f, s, tol), rhs_tt5(f, s, params.p.value()), std::nullopt,
                    std::nullopt, ""};
        case Theorem::TT6:
            return {lhs_midpoint(f, s, tol), rhs_tt6(f, s, params.p.value()),
                    rhs_tt6_tight(f, s, params.p.value()), std::nullopt, ""};
        case Theorem::Z:
            return {lhs_midpoint(f, s, tol), rhs_z(f, s, params.q.value()), std::nullopt,
                    std::nullopt, ""};
        case Theorem::ZRelaxed:
            return {lhs_midpoint(f, s, tol), rhs_z_relaxed(f, s, params.q.value()), std::nullopt,
                    std::nullopt, ""};
        case Theorem::QuasiTrapezoid:
            return {lhs_trapezoid(f, s, tol), rhs_quasi(f, s, QuasiKind::Trapezoid), std::nullopt,
                    std::nullopt, ""};
        case Theorem::QuasiTrapezoidHolder:
            return {lhs_trapezoid(f, s, tol),
                    rhs_quasi_holder(f, s, params.p.value(), QuasiKind::Trapezoid), std::nullopt,
                    std::nullopt, ""};
        case Theorem::QuasiMidpoint:
            return {lhs_midpoint(f, s, tol), rhs_quasi(f, s, QuasiKind::Midpoint), std::nullopt,
                    std::nullopt, ""};
        case Theorem::QuasiMidpointHolder:
            return {lhs_midpoint(f, s, tol),
                    rhs_quasi_holder(f, s, params.p.value(), QuasiKind::Midpoint), std::nullopt,
                    std::nullopt,
                    "displayed form is midpoint-style while the identity it cites is the "
                    "trapezoid one; evaluated against the midpoint error term"};
    }
    throw std::logic_error("unreachable theorem id");
}

ConvexityReport run_hypothesis(Theorem theorem, const Expr& f, const Expr& df,
                               const PhiSegment& s, const HolderParams& params, int grid_n,
                               double gate_slack_rel) {
    SegmentGrid grid = SegmentGrid::uniform(s, grid_n);
    if (theorem == Theorem::Chain2) {
        auto g = [&f, &s](double t) { return require_real(f.eval(s.point_at(t)), "f on the path"); };
        double at_u = g(0.0);
        double at_v = require_real(f.eval(Complex{s.b(), 0.0}), "f at the generator");
        return check_membership(g, at_u, at_v, ClassKind::PhiConvex, grid, gate_slack_rel, 1.0,
                                "f");
    }

    auto g = [&df, &s](double t) { return std::abs(df.eval(s.point_at(t))); };
    double at_u = std::abs(df.eval(Complex{s.a(), 0.0}));
    double at_v = std::abs(df.eval(Complex{s.b(), 0.0}));

    double exponent = 1.0;
    std::string target = "|f'|";
    if (theorem_needs_p(theorem)) {
        exponent = params.conjugate();
        target = "|f'|^r, r=p/(p-1)";
    } else if (theorem_needs_q(theorem)) {
        exponent = require_q(params.q.value());
        target = "|f'|^q";
    }

    ClassKind kind = (theorem == Theorem::QuasiTrapezoid ||
                      theorem == Theorem::QuasiTrapezoidHolder ||
                      theorem == Theorem::QuasiMidpoint || theorem == Theorem::QuasiMidpointHolder)
                         ? ClassKind::QuasiPhiConvex
                         : ClassKind::PhiConvex;
    return check_membership(g, at_u, at_v, kind, grid, gate_slack_rel, exponent, target);
}

bool sample_positivity(const Expr& f, const PhiSegment& s, int grid_n) {
    SegmentGrid grid = SegmentGrid::uniform(s, std::min(grid_n, 129));
    try {
        for (double t : grid.t_values) {
            Complex v = f.eval(s.point_at(t));
            if (std::fabs(v.imag()) > 1e-9 * (1.0 + std::fabs(v.real()))) return false;
            if (!(v.real() > 0.0)) return false;
        }
        return true;
    } catch (const EvalError&) {
        return false;
    }
}

} // namespace

BoundResult evaluate(Theorem theorem, const Expr& f, const PhiSegment& s,
                     const HolderParams& params, double tol, int grid_n, double gate_slack_rel) {
    if (theorem_needs_p(theorem)) require_p(params.p.value_or(0.0));
    if (theorem_needs_q(theorem)) require_q(params.q.value_or(0.0));

    Expr df = f.differentiate();
    BoundResult out;
    out.theorem = theorem;
    out.hypothesis = run_hypothesis(theorem, f, df, s, params, grid_n, gate_slack_rel);

    LhsRhs sides = evaluate_sides(theorem, f, s, params, tol, grid_n);
    out.lhs = sides.lhs;
    out.rhs = sides.rhs;
    out.aux_rhs = sides.aux;
    out.chain = sides.chain;
    out.note = std::move(sides.note);
    out.margin = out.rhs - out.lhs;
    out.sharpness = out.rhs > 0.0 ? out.lhs / out.rhs : 0.0;
    out.slack = 1e-8 * (1.0 + out.rhs);
    out.positivity_ok = theorem == Theorem::Chain2 ? out.chain->positive
                                                   : sample_positivity(f, s, grid_n);
    out.phi_in_theorem_range = s.in_theorem_range();

    bool inequality_ok = theorem == Theorem::Chain2 ? out.chain->all_links()
                                                    : out.lhs <= out.rhs + out.slack;
    if (!out.hypothesis.certified()) {
        out.status = BoundStatus::HypothesisFalsified;
    } else if (out.rhs == 0.0 && std::fabs(out.lhs) <= out.slack && theorem != Theorem::Chain2) {
        out.status = BoundStatus::Degenerate;
    } else if (inequality_ok) {
        out.status = BoundStatus::Holds;
    } else {
        out.status = BoundStatus::ViolatedWithHypothesis;
    }

    for (double v : {out.lhs, out.rhs, out.margin, out.sharpness})
        if (!std::isfinite(v))
            throw EvalError(EvalErrorKind::Overflow, f.render(), "non-finite bound value");
    return out;
}

std::string explain(Theorem t) {
    switch (t) {
        case Theorem::Chain2:
            return "chain2: Hadamard chain for a phi-convex f > 0 on the segment "
                   "[a, a+e^{i*phi}(b-a)], 0 <= phi <= pi/2:\n"
                   "  f((2a+e^{i*phi}(b-a))/2) <= mean <= [f(a)+f(a+e^{i*phi}(b-a))]/2 <= "
                   "[f(a)+f(b)]/2\n"
                   "  where mean = 1/(e^{i*phi}(b-a)) * integral of f over the segment.\n"
                   "  The last link additionally needs f(a+e^{i*phi}(b-a)) <= f(b).";
        case Theorem::TT2:
            return "tt2: trapezoid bound, hypothesis: |f'| phi-convex on the segment.\n"
                   "  |mean - [f(a)+f(endpoint)]/2| <= (b-a)/8 (|f'(a)|+|f'(b)|)";
        case Theorem::TT3:
            return "tt3: trapezoid bound via Holder (p > 1, r = p/(p-1)), hypothesis: |f'|^r "
                   "phi-convex.\n"
                   "  |mean - [f(a)+f(endpoint)]/2| <= (b-a)/(2(p+1)^(1/p)) * "
                   "((|f'(a)|^r+|f'(b)|^r)/2)^(1/r)";
        case Theorem::TT4:
            return "tt4: midpoint bound, hypothesis: |f'| phi-convex on the segment.\n"
                   "  |mean - f(midpoint)| <= (b-a)/8 (|f'(a)|+|f'(b)|)";
        case Theorem::TT5:
            return "tt5: midpoint bound via Holder (p > 1, r = p/(p-1)), hypothesis: |f'|^r "
                   "phi-convex.\n"
                   "  |mean - f(midpoint)| <= (b-a)/16 (4/(p+1))^(1/p) * "
                   "[(3|f'(a)|^r+|f'(b)|^r)^(1/r) + (|f'(a)|^r+3|f'(b)|^r)^(1/r)]";
        case Theorem::TT6:
            return "tt6: relaxed midpoint bound (p > 1), hypothesis: |f'|^(p/(p-1)) phi-convex.\n"
                   "  |mean - f(midpoint)| <= (b-a)/4 (4/(p+1))^(1/p) (|f'(a)|+|f'(b)|)\n"
                   "  aux_rhs reports the tighter constant (b-a)/16 (3^((p-1)/p)+1) (4/(p+1))^(1/p) "
                   "(|f'(a)|+|f'(b)|).";
        case Theorem::Z:
            return "z: midpoint bound via the power mean (q >= 1), hypothesis: |f'|^q phi-convex.\n"
                   "  |mean - f(midpoint)| <= (b-a)/8 [((2|f'(a)|^q+|f'(b)|^q)/3)^(1/q) + "
                   "((|f'(a)|^q+2|f'(b)|^q)/3)^(1/q)]";
        case Theorem::ZRelaxed:
            return "z_relaxed: relaxation of z (q >= 1), hypothesis: |f'|^q phi-convex.\n"
                   "  |mean - f(midpoint)| <= (b-a)/8 ((2^(1/q)+1)/3^(1/q)) (|f'(a)|+|f'(b)|)";
        case Theorem::QuasiTrapezoid:
            return "quasi_trap: trapezoid bound, hypothesis: |f'| quasi-phi-convex.\n"
                   "  |mean - [f(a)+f(endpoint)]/2| <= (b-a)/4 max(|f'(a)|, |f'(b)|)";
        case Theorem::QuasiTrapezoidHolder:
            return "quasi_trap_holder: trapezoid bound via Holder (p > 1), hypothesis: "
                   "|f'|^(p/(p-1)) quasi-phi-convex.\n"
                   "  |mean - [f(a)+f(endpoint)]/2| <= (b-a)/(2(p+1)^(1/p)) * "
                   "[max(|f'(a)|^r, |f'(b)|^r)]^(1/r)  (= (b-a)/(2(p+1)^(1/p)) max(|f'(a)|,|f'(b)|))";
        case Theorem::QuasiMidpoint:
            return "quasi_mid: midpoint bound, hypothesis: |f'| quasi-phi-convex.\n"
                   "  |mean - f(midpoint)| <= (b-a)/4 max(|f'(a)|, |f'(b)|)";
        case Theorem::QuasiMidpointHolder:
            return "quasi_mid_holder: midpoint bound via Holder (p > 1), hypothesis: "
                   "|f'|^(p/(p-1)) quasi-phi-convex.\n"
                   "  |mean - f(midpoint)| <= (b-a)/(2(p+1)^(1/p)) max(|f'(a)|, |f'(b)|)\n"
                   "  (stated midpoint-style; the matching proof device is the trapezoid identity,"
                   " so results carry a note)";
    }
    throw std::invalid_argument("unknown theorem id");
}

} // namespace hhphi
