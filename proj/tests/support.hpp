#pragma once

// Shared helpers for the test suites. The quadrature and derivative oracles
// here are intentionally independent of the library's evaluation paths:
// adaptive Simpson instead of Gauss-Kronrod, central differences instead of
// the symbolic derivative.

#include <cmath>
#include <complex>
#include <functional>
#include <random>

#include "hhphi/expr.hpp"

namespace testsupport {

using hhphi::Complex;

inline bool close(double a, double b, double tol) { return std::fabs(a - b) <= tol; }

inline bool rel_close(double a, double b, double rel) {
    return std::fabs(a - b) <= rel * (1.0 + std::max(std::fabs(a), std::fabs(b)));
}

// test-local uniform doubles; fixed mapping so seeds reproduce everywhere
class TestRng {
public:
    explicit TestRng(std::uint64_t seed) : eng_(seed) {}
    double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
    std::size_t index(std::size_t n) { return static_cast<std::size_t>(eng_() % n); }

private:
    std::mt19937_64 eng_;
};

namespace detail {

inline Complex simpson_rule(double a, double b, Complex fa, Complex fm, Complex fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

inline Complex simpson_rec(const std::function<Complex(double)>& f, double a, double b,
                           Complex fa, Complex fm, Complex fb, Complex whole, double tol,
                           int depth) {
    double m = 0.5 * (a + b);
    Complex flm = f(0.5 * (a + m));
    Complex frm = f(0.5 * (m + b));
    Complex left = simpson_rule(a, m, fa, flm, fm);
    Complex right = simpson_rule(m, b, fm, frm, fb);
    Complex delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return simpson_rec(f, a, m, fa, flm, fm, left, tol / 2, depth - 1) +
           simpson_rec(f, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}

} // namespace detail

// adaptive Simpson over [a, b]; the reference route for phi = 0 reductions
inline Complex adaptive_simpson(const std::function<Complex(double)>& f, double a, double b,
                                double tol) {
    Complex fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    Complex whole = detail::simpson_rule(a, b, fa, fm, fb);
    return detail::simpson_rec(f, a, b, fa, fm, fb, whole, tol, 48);
}

// central finite difference of e at a real point
inline double central_diff(const hhphi::Expr& e, double x, double h = 1e-5) {
    Complex up = e.eval(Complex{x + h, 0.0});
    Complex dn = e.eval(Complex{x - h, 0.0});
    return (up.real() - dn.real()) / (2.0 * h);
}

} // namespace testsupport
