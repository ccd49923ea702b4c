#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "hhphi/convexity.hpp"
#include "hhphi/expr.hpp"
#include "hhphi/quadrature.hpp"
#include "hhphi/segment.hpp"

namespace hhphi {

/// The twelve evaluable inequality instances. The string forms (used by the
/// CLI and in reports) are: chain2, tt2, tt3, tt4, tt5, tt6, z, z_relaxed,
/// quasi_trap, quasi_trap_holder, quasi_mid, quasi_mid_holder.
enum class Theorem {
    Chain2,
    TT2,
    TT3,
    TT4,
    TT5,
    TT6,
    Z,
    ZRelaxed,
    QuasiTrapezoid,
    QuasiTrapezoidHolder,
    QuasiMidpoint,
    QuasiMidpointHolder,
};

std::string_view to_string(Theorem t);
std::optional<Theorem> theorem_from_string(std::string_view name);
const std::vector<Theorem>& all_theorems();

bool theorem_needs_p(Theorem t);
bool theorem_needs_q(Theorem t);

/// Holder exponent p > 1 (conjugate r = p/(p-1)) and power-mean exponent
/// q >= 1, each present only where the theorem needs it.
struct HolderParams {
    std::optional<double> p;
    std::optional<double> q;

    double conjugate() const;  // r = p/(p-1)
};

enum class BoundStatus { Holds, ViolatedWithHypothesis, HypothesisFalsified, Degenerate };
std::string_view to_string(BoundStatus s);

/// Four-value Hadamard chain f(mid) <= mean <= [f(a)+f(endpoint)]/2 <= [f(a)+f(b)]/2
/// evaluated on real-valued f (imag parts <= 1e-9 or NonRealError).
struct ChainReport {
    double midpoint_value;
    double mean_value;
    double endpoint_trapezoid;   // [f(a) + f(a + e^{i phi}(b-a))] / 2
    double generator_trapezoid;  // [f(a) + f(b)] / 2
    bool link1, link2, link3;
    bool endpoint_below_generator;  // f(endpoint) <= f(b), required by link3
    bool positive;                  // f > 0 at every sampled node

    bool all_links() const { return link1 && link2 && link3; }
};

struct BoundResult {
    Theorem theorem;
    double lhs;
    double rhs;
    double margin;     // rhs - lhs
    double sharpness;  // lhs / rhs, 0 when rhs = 0
    ConvexityReport hypothesis;
    BoundStatus status;
    double slack;                    // the Holds slack 1e-8 * (1 + rhs)
    bool positivity_ok;              // f real and > 0 at the sampled nodes
    bool phi_in_theorem_range;
    std::optional<double> aux_rhs;   // TT6: the proof-constant alternative
    std::optional<ChainReport> chain;
    std::string note;
};

// --- left-hand sides -------------------------------------------------------

/// |segment_mean(f) - [f(a) + f(endpoint)]/2| (complex modulus).
double lhs_trapezoid(const Expr& f, const PhiSegment& s, double tol);

/// |segment_mean(f) - f(midpoint_point)|.
double lhs_midpoint(const Expr& f, const PhiSegment& s, double tol);

// --- right-hand sides (A = |f'(a)|, B = |f'(b)| at the real points) --------

double rhs_tt2(const Expr& f, const PhiSegment& s);                    // (b-a)/8 (A + B)
double rhs_tt3(const Expr& f, const PhiSegment& s, double p);          // (b-a)/(2(p+1)^{1/p}) ((A^r+B^r)/2)^{1/r}
double rhs_tt4(const Expr& f, const PhiSegment& s);                    // same formula as tt2, gates the midpoint lhs
double rhs_tt5(const Expr& f, const PhiSegment& s, double p);          // (b-a)/16 (4/(p+1))^{1/p} [(3A^r+B^r)^{1/r} + (A^r+3B^r)^{1/r}]
double rhs_tt6(const Expr& f, const PhiSegment& s, double p);          // (b-a)/4 (4/(p+1))^{1/p} (A + B)
double rhs_tt6_tight(const Expr& f, const PhiSegment& s, double p);
double rhs_z(const Expr& f, const PhiSegment& s, double q);            // (b-a)/8 [((2A^q+B^q)/3)^{1/q} + ((A^q+2B^q)/3)^{1/q}]
double rhs_z_relaxed(const Expr& f, const PhiSegment& s, double q);    // (b-a)/8 (2^{1/q}+1)/3^{1/q} (A + B)

enum class QuasiKind { Trapezoid, Midpoint };

double rhs_quasi(const Expr& f, const PhiSegment& s, QuasiKind kind);  // (b-a)/4 max(A, B)
double rhs_quasi_holder(const Expr& f, const PhiSegment& s, double p, QuasiKind kind);

/// Evaluates the four-term chain; requires f real-valued along the path.
ChainReport check_hadamard_chain(const Expr& f, const PhiSegment& s, double tol, int grid_n);

/// Full pipeline for one theorem instance: runs the hypothesis membership
/// check the theorem needs, evaluates LHS and RHS, and classifies:
///   HypothesisFalsified  - class check failed (inequality still recorded)
///   Degenerate           - rhs = 0 and lhs within slack
///   ViolatedWithHypothesis - certified hypothesis but lhs > rhs + slack
///   Holds                - certified and lhs <= rhs + slack
BoundResult evaluate(Theorem theorem, const Expr& f, const PhiSegment& s,
                     const HolderParams& params, double tol, int grid_n,
                     double gate_slack_rel = 1e-9);

/// Human-readable description of a theorem id: hypothesis class, bounded
/// quantity, and the RHS formula in ASCII. Throws std::invalid_argument on
/// unknown ids (via theorem_from_string at the CLI boundary).
std::string explain(Theorem t);

} // namespace hhphi
