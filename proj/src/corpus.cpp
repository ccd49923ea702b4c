#include "hhphi/corpus.hpp"

#include <numbers>

namespace hhphi {

namespace {

CorpusEntry make(std::string id, std::string expr_text, std::string note, bool positive,
                 bool smooth, double a_min, double a_max, double span_min, double span_max,
                 std::vector<double> kinks = {}, std::vector<double> poles = {},
                 std::vector<double> phi_override = {}) {
    Expr e = parse(expr_text);
    Expr d = e.differentiate();
    return CorpusEntry{std::move(id), std::move(expr_text), std::move(note),
                       positive,      smooth,               a_min,
                       a_max,         span_min,             span_max,
                       std::move(kinks), std::move(poles),  std::move(phi_override),
                       std::move(e),  std::move(d)};
}

std::vector<CorpusEntry> build() {
    const double pi = std::numbers::pi;
    std::vector<CorpusEntry> c;
    c.push_back(make("square", "x^2", "|f'| = |2x|, convex on the real line", false, true,
                     -2.0, 2.0, 0.1, 3.0));
    c.push_back(make("square_plus_one", "x^2+1", "positive convex; exercises the chain and the "
                     "log-class checks", true, true, -2.0, 2.0, 0.1, 3.0));
    c.push_back(make("linear", "2*x+3", "trapezoid and midpoint errors vanish", false, true,
                     -2.0, 2.0, 0.1, 3.0));
    c.push_back(make("const", "2.5", "degenerate: every rhs is 0", true, true, -2.0, 2.0, 0.1,
                     3.0));
    c.push_back(make("cubic", "x^3", "|f'| = 3x^2; f itself has an inflection", false, true,
                     -2.0, 2.0, 0.1, 3.0));
    c.push_back(make("exp", "exp(x)", "positive, log-convex; all classes certify at phi=0",
                     true, true, -2.0, 2.0, 0.1, 3.0));
    c.push_back(make("sin", "sin(x)", "|f'| = |cos|; gates falsify on most segments", false,
                     true, -2.0, 2.0, 0.1, 3.0));
    c.push_back(make("neg_abs", "-abs(x)", "phi-convex for the sign-dependent angle map; "
                     "enumerated here with its two fixed values phi=0 and phi=pi",
                     false, false, -2.0, 2.0, 0.1, 3.0, {0.0}, {}, {0.0, pi}));
    c.push_back(make("softplus", "ln(1+exp(x))", "|f'| is a monotone sigmoid: quasi-convex but "
                     "not convex on ranges crossing 0", true, true, -2.0, 2.0, 0.1, 2.8));
    c.push_back(make("recip", "1/x", "pole at 0; safe ranges stay positive", false, true, 0.15,
                     2.0, 0.1, 3.0, {}, {0.0}));
    c.push_back(make("log", "ln(x)", "branch point at 0; safe ranges stay positive", false,
                     true, 0.15, 2.0, 0.1, 3.0, {}, {0.0}));
    c.push_back(make("gauss", "exp(-x^2)", "|f'| is bimodal; rich hypothesis-gap material",
                     true, true, -2.0, 2.0, 0.1, 3.0));
    c.push_back(make("sqrt_shift", "sqrt(x+2)", "derivative singularity at the branch point -2",
                     true, true, -1.5, 2.0, 0.1, 3.0, {}, {-2.0}));
    return c;
}

} // namespace

const std::vector<CorpusEntry>& builtin_corpus() {
    static const std::vector<CorpusEntry> corpus = build();
    return corpus;
}

const CorpusEntry* find_entry(std::string_view id) {
    for (const auto& e : builtin_corpus())
        if (e.id == id) return &e;
    return nullptr;
}

} // namespace hhphi
