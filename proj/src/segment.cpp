#include "hhphi/segment.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace hhphi {

PhiSegment::PhiSegment(double a, double b, double phi) : a_(a), b_(b), phi_(phi) {
    if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(phi))
        throw std::invalid_argument("segment parameters must be finite");
    if (!(a < b))
        throw std::invalid_argument("segment requires a < b (got a=" + std::to_string(a) +
                                    ", b=" + std::to_string(b) + ")");
    if (phi < 0.0 || phi > std::numbers::pi)
        throw std::invalid_argument("phi must lie in [0, pi]");
}

Complex PhiSegment::displacement() const {
    return Complex{std::cos(phi_), std::sin(phi_)} * (b_ - a_);
}

Complex PhiSegment::point_at(double t) const {
    if (!(t >= 0.0 && t <= 1.0))
        throw std::out_of_range("path parameter t=" + std::to_string(t) + " outside [0,1]");
    if (phi_ == 0.0) return Complex{a_ + t * (b_ - a_), 0.0};
    return Complex{a_, 0.0} + t * displacement();
}

bool PhiSegment::in_theorem_range() const {
    return phi_ <= std::numbers::pi / 2 + 1e-15;
}

SegmentGrid SegmentGrid::uniform(const PhiSegment& s, int n) {
    if (n < 3) throw std::invalid_argument("grid needs at least 3 samples");
    std::vector<double> ts(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) ts[static_cast<std::size_t>(i)] = static_cast<double>(i) / (n - 1);
    ts.front() = 0.0;
    ts.back() = 1.0;
    return SegmentGrid{s, n, std::move(ts)};
}

} // namespace hhphi
