#pragma once

#include <vector>

#include "hhphi/expr.hpp"

namespace hhphi {

/// The rotated segment K = [a, a + e^{i*phi}(b-a)], parameterized by
/// t in [0,1] as point_at(t) = a + t e^{i*phi}(b-a). Requires a < b and
/// phi in [0, pi]; phi above pi/2 is representable but outside the range
/// the bounds are stated for (see in_theorem_range).
class PhiSegment {
public:
    PhiSegment(double a, double b, double phi);

    double a() const { return a_; }
    double b() const { return b_; }
    double phi() const { return phi_; }

    /// e^{i*phi}(b-a), the complex displacement from a to the far endpoint.
    Complex displacement() const;
    /// |e^{i*phi}(b-a)| = b-a; the modulus every bound prefactor reduces to.
    double length_factor() const { return b_ - a_; }

    /// Throws std::out_of_range unless 0 <= t <= 1.
    Complex point_at(double t) const;
    Complex endpoint() const { return point_at(1.0); }
    Complex midpoint_point() const { return point_at(0.5); }

    bool in_theorem_range() const;

private:
    double a_, b_, phi_;
};

/// Uniform t-grid over [0,1] including both endpoints; n >= 3 samples.
struct SegmentGrid {
    PhiSegment segment;
    int n;
    std::vector<double> t_values;

    static SegmentGrid uniform(const PhiSegment& s, int n);
};

} // namespace hhphi
