#include "hhphi/convexity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace hhphi {

namespace {

constexpr double kPerturb = 1e-9;

struct Sample {
    double value;
    bool perturbed;
};

Sample sample_at(const std::function<double(double)>& g, double t, double t_max) {
    try {
        return {g(t), false};
    } catch (const EvalError&) {
        double nudged = (t + kPerturb <= t_max) ? t + kPerturb : t - kPerturb;
        return {g(nudged), true};
    }
}

// ((1-t) u^e + t v^e)^(1/e) without forming u^e, v^e; M = max(u, v).
double convex_hull_root(double u, double v, double t, double e) {
    if (e == 1.0) return (1.0 - t) * u + t * v;
    double m = std::max(u, v);
    if (m <= 0.0) return 0.0;
    double s = (1.0 - t) * std::pow(u / m, e) + t * std::pow(v / m, e);
    return m * std::pow(s, 1.0 / e);
}

double geometric_bound(double u, double v, double t) {
    // u^(1-t) v^t, u, v > 0
    return std::exp((1.0 - t) * std::log(u) + t * std::log(v));
}

double bound_at(ClassKind kind, double u, double v, double t, double e) {
    switch (kind) {
        case ClassKind::PhiConvex:
            return convex_hull_root(u, v, t, e);
        case ClassKind::QuasiPhiConvex:
            return std::max(u, v);  // exponent-invariant for e >= 0
        case ClassKind::LogPhiConvex:
            return geometric_bound(u, v, t);  // likewise e-th root of the powered bound
    }
    throw std::logic_error("unreachable class kind");
}

void require_positive(double v, const char* what) {
    if (!(v > 0.0))
        throw PositivityError(std::string("log-phi-convexity needs strictly positive values; ") +
                              what + " = " + std::to_string(v));
}

} // namespace

std::string_view to_string(ClassKind k) {
    switch (k) {
        case ClassKind::PhiConvex: return "phi_convex";
        case ClassKind::QuasiPhiConvex: return "quasi_phi_convex";
        case ClassKind::LogPhiConvex: return "log_phi_convex";
    }
    return "?";
}

std::string_view to_string(Verdict v) {
    return v == Verdict::CertifiedOnGrid ? "certified_on_grid" : "falsified";
}

double require_real(Complex v, const char* what) {
    if (std::fabs(v.imag()) > 1e-9 * (1.0 + std::fabs(v.real())))
        throw NonRealError(std::string(what) + " is not real-valued (imag = " +
                           std::to_string(v.imag()) + ")");
    return v.real();
}

ConvexityReport check_membership(const std::function<double(double)>& g, double hull_u,
                                 double hull_v, ClassKind kind, const SegmentGrid& grid,
                                 double slack_rel, double exponent, std::string_view target) {
    if (!(exponent >= 1.0))
        throw std::invalid_argument("membership exponent must be >= 1");

    int perturbed = 0;
    std::vector<double> values(grid.t_values.size());
    for (std::size_t i = 0; i < grid.t_values.size(); ++i) {
        Sample s = sample_at(g, grid.t_values[i], 1.0);
        values[i] = s.value;
        if (s.perturbed) ++perturbed;
    }

    if (kind == ClassKind::LogPhiConvex) {
        require_positive(hull_u, "value at u");
        require_positive(hull_v, "value at generator v");
        for (double v : values) require_positive(v, "sampled value");
    }
    if (exponent != 1.0) {
        // power targets are moduli; a negative sample means the caller's
        // quantity is not of the promised shape
        for (double v : values)
            if (v < 0.0)
                throw std::invalid_argument("power-class membership needs nonnegative samples");
    }

    double scale = std::max(std::fabs(hull_u), std::fabs(hull_v));
    for (double v : values) scale = std::max(scale, std::fabs(v));
    const double slack = slack_rel * (1.0 + scale);

    double worst = -std::numeric_limits<double>::infinity();
    double worst_lambda = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        double t = grid.t_values[i];
        double violation = values[i] - bound_at(kind, hull_u, hull_v, t, exponent);
        if (violation > worst) {
            worst = violation;
            worst_lambda = t;
        }
    }

    ConvexityReport rep;
    rep.kind = kind;
    rep.target = std::string(target);
    rep.exponent = exponent;
    rep.grid_n = grid.n;
    rep.slack = slack;
    rep.max_violation = worst;
    rep.perturbed_nodes = perturbed;
    if (worst > slack) {
        rep.verdict = Verdict::Falsified;
        rep.witness = Witness{0.0, 1.0, worst_lambda, worst};
    } else {
        rep.verdict = Verdict::CertifiedOnGrid;
    }
    return rep;
}

ConvexityReport check_membership(const std::function<double(double)>& g, ClassKind kind,
                                 const SegmentGrid& grid, double slack_rel, double exponent,
                                 std::string_view target) {
    Sample u = sample_at(g, 0.0, 1.0);
    Sample v = sample_at(g, 1.0, 1.0);
    auto rep = check_membership(g, u.value, v.value, kind, grid, slack_rel, exponent, target);
    rep.perturbed_nodes += (u.perturbed ? 1 : 0) + (v.perturbed ? 1 : 0);
    return rep;
}

ConvexityReport check_membership_pairs(const std::function<double(double)>& g, ClassKind kind,
                                       const SegmentGrid& grid, double slack_rel, double exponent,
                                       std::string_view target) {
    if (!(exponent >= 1.0))
        throw std::invalid_argument("membership exponent must be >= 1");

    const auto& ts = grid.t_values;
    int perturbed = 0;
    std::vector<double> node_values(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i) {
        Sample s = sample_at(g, ts[i], 1.0);
        node_values[i] = s.value;
        if (s.perturbed) ++perturbed;
        if (kind == ClassKind::LogPhiConvex) require_positive(s.value, "sampled value");
    }

    double scale = 0.0;
    for (double v : node_values) scale = std::max(scale, std::fabs(v));
    const double slack = slack_rel * (1.0 + scale);

    double worst = -std::numeric_limits<double>::infinity();
    Witness worst_w{0, 0, 0, 0};
    for (std::size_t i = 0; i < ts.size(); ++i) {
        for (std::size_t j = i + 1; j < ts.size(); ++j) {
            for (double lambda : ts) {
                double tau = (1.0 - lambda) * ts[i] + lambda * ts[j];
                Sample s = sample_at(g, tau, 1.0);
                if (s.perturbed) ++perturbed;
                double violation =
                    s.value - bound_at(kind, node_values[i], node_values[j], lambda, exponent);
                if (violation > worst) {
                    worst = violation;
                    worst_w = Witness{ts[i], ts[j], lambda, violation};
                }
            }
        }
    }

    ConvexityReport rep;
    rep.kind = kind;
    rep.target = std::string(target);
    rep.exponent = exponent;
    rep.grid_n = grid.n;
    rep.slack = slack;
    rep.max_violation = worst;
    rep.perturbed_nodes = perturbed;
    if (worst > slack) {
        rep.verdict = Verdict::Falsified;
        rep.witness = worst_w;
    } else {
        rep.verdict = Verdict::CertifiedOnGrid;
    }
    return rep;
}

ImplicationChainReport check_implication_chain(const Expr& f, const PhiSegment& s, int grid_n,
                                               double slack_rel) {
    SegmentGrid grid = SegmentGrid::uniform(s, grid_n);
    auto g = [&](double t) { return require_real(f.eval(s.point_at(t)), "f on the path"); };
    const double at_u = g(0.0);
    const double at_v = require_real(f.eval(Complex{s.b(), 0.0}), "f at the generator");
    require_positive(at_u, "f(a)");
    require_positive(at_v, "f(b)");

    ImplicationChainReport rep{
        check_membership(g, at_u, at_v, ClassKind::LogPhiConvex, grid, slack_rel, 1.0, "f"),
        check_membership(g, at_u, at_v, ClassKind::PhiConvex, grid, slack_rel, 1.0, "f"),
        check_membership(g, at_u, at_v, ClassKind::QuasiPhiConvex, grid, slack_rel, 1.0, "f"),
        true,
        0.0,
        true,
    };

    double scale = std::max(std::fabs(at_u), std::fabs(at_v));
    const double slack = slack_rel * (1.0 + scale);
    for (double t : grid.t_values) {
        double geo = geometric_bound(at_u, at_v, t);
        double lin = (1.0 - t) * at_u + t * at_v;
        double mx = std::max(at_u, at_v);
        rep.max_order_violation =
            std::max({rep.max_order_violation, geo - lin, lin - mx});
        if (geo > lin + slack || lin > mx + slack) rep.bound_order_holds = false;
    }

    if (rep.log_report.certified() && !rep.convex_report.certified()) rep.implications_hold = false;
    if (rep.convex_report.certified() && !rep.quasi_report.certified()) rep.implications_hold = false;
    return rep;
}

} // namespace hhphi
