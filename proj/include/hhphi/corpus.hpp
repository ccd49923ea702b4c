#pragma once

#include <string>
#include <vector>

#include "hhphi/expr.hpp"

namespace hhphi {

/// One named test function with the segment ranges it is safe to sample on.
/// kink_points are real points where f' is undefined but f is continuous
/// (segments may cross them; endpoints are kept a margin away). pole_points
/// blow up f itself, so sampled footprints must avoid them entirely.
struct CorpusEntry {
    std::string id;
    std::string expr_text;
    std::string note;
    bool positive;  // f > 0 everywhere on its safe ranges
    bool smooth;    // infinitely differentiable on its safe ranges
    double a_min, a_max;
    double span_min, span_max;
    std::vector<double> kink_points;
    std::vector<double> pole_points;
    std::vector<double> phi_override;  // empty: use the sampler's phi scheme
    Expr expr;
    Expr derivative;
};

const std::vector<CorpusEntry>& builtin_corpus();

/// nullptr when the id is unknown.
const CorpusEntry* find_entry(std::string_view id);

} // namespace hhphi
