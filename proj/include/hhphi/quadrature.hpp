#pragma once

#include <functional>

#include "hhphi/expr.hpp"
#include "hhphi/segment.hpp"

namespace hhphi {

struct QuadResult {
    Complex value;
    double abs_error_estimate;
    int panels_used;
};

class QuadratureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Adaptive Gauss-Kronrod (7,15) over [lo, hi]. Bisects the worst panel
/// until the summed error estimate drops below tol; throws QuadratureError
/// once panel_budget panels have been evaluated without converging.
QuadResult integrate_adaptive(const std::function<Complex(double)>& g, double lo, double hi,
                              double tol, int panel_budget = 10000);

/// The contour integral over the segment: e^{i*phi}(b-a) * \int_0^1 f(point_at(t)) dt.
QuadResult integrate_segment(const Expr& f, const PhiSegment& s, double tol);

/// The normalized mean \int_0^1 f(point_at(t)) dt, i.e. integrate_segment
/// divided by the displacement.
Complex segment_mean(const Expr& f, const PhiSegment& s, double tol);

/// Residual |LHS - RHS| of the integration-by-parts identity
///   \int_0^1 (1-2t) f'(path(t)) dt
///     = -[f(a) + f(endpoint)] / d + (2 / d^2) * contour_integral(f),   d = e^{i*phi}(b-a).
double trapezoid_identity_residual(const Expr& f, const PhiSegment& s, double tol);

/// Residual of the midpoint counterpart:
///   \int_0^{1/2} t f'(path(t)) dt + \int_{1/2}^1 (t-1) f'(path(t)) dt
///     = f(midpoint) / d - (1 / d^2) * contour_integral(f).
double midpoint_identity_residual(const Expr& f, const PhiSegment& s, double tol);

} // namespace hhphi
