// Acceptance suite: runs every stated criterion at its stated tolerance and
// prints one [PASS]/[FAIL] line per criterion. Exit code 0 iff all pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include "hhphi/bounds.hpp"
#include "hhphi/corpus.hpp"
#include "hhphi/quadrature.hpp"
#include "hhphi/report.hpp"
#include "hhphi/suite.hpp"
#include "support.hpp"

using namespace hhphi;
using testsupport::TestRng;

namespace {

const double pi = std::numbers::pi;
int g_failures = 0;

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

void report(int criterion, bool ok, const std::string& detail) {
    std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", criterion, detail.c_str());
    if (!ok) ++g_failures;
}

bool near(double value, double expected, double tol) { return std::fabs(value - expected) <= tol; }

bool rel10(double x, double y) {
    return std::fabs(x - y) <= 1e-10 * (1.0 + std::max(std::fabs(x), std::fabs(y)));
}

// ---- criterion 1: closed-form desk instance -------------------------------

void criterion1() {
    Stopwatch timer;
    Expr sq = parse("x^2");
    PhiSegment s(0, 1, 0);
    const double tol = 1e-8;
    bool ok = true;
    std::string bad;
    auto check = [&](const char* name, double value, double expected) {
        if (!near(value, expected, tol)) {
            ok = false;
            bad += std::string(" ") + name;
        }
    };
    check("lhs_trapezoid", lhs_trapezoid(sq, s, 1e-10), 1.0 / 6.0);
    check("rhs_tt2", rhs_tt2(sq, s), 0.25);
    check("lhs_midpoint", lhs_midpoint(sq, s, 1e-10), 1.0 / 12.0);
    check("rhs_tt3(p=2)", rhs_tt3(sq, s, 2.0), 0.4082482904638631);
    check("rhs_tt5(p=2)", rhs_tt5(sq, s, 2.0), 0.3943375672974064);
    check("rhs_tt6(p=2)", rhs_tt6(sq, s, 2.0), 0.5773502691896257);
    check("rhs_z(q=1)", rhs_z(sq, s, 1.0), 0.25);
    check("rhs_quasi", rhs_quasi(sq, s, QuasiKind::Trapezoid), 0.5);
    double elapsed = timer.seconds();
    if (elapsed >= 1.0) {
        ok = false;
        bad += " runtime";
    }
    report(1, ok,
           "closed-form instance f=x^2 on (0,1,0), eight values to 1e-8, " +
               std::to_string(elapsed) + " s" + (bad.empty() ? "" : " -- failed:" + bad));
}

// ---- criterion 2: Hadamard chain for exp ----------------------------------

void criterion2() {
    ChainReport chain = check_hadamard_chain(parse("exp(x)"), PhiSegment(0, 1, 0), 1e-10, 1025);
    bool values_ok = near(chain.midpoint_value, 1.648721, 1e-6) &&
                     near(chain.mean_value, 1.718282, 1e-6) &&
                     near(chain.endpoint_trapezoid, 1.859141, 1e-6) &&
                     near(chain.generator_trapezoid, 1.859141, 1e-6);
    BoundResult res =
        evaluate(Theorem::Chain2, parse("exp(x)"), PhiSegment(0, 1, 0), HolderParams{}, 1e-10, 1025);
    bool ok = values_ok && chain.all_links() && res.status == BoundStatus::Holds;
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "Hadamard chain for exp on (0,1,0): %.6f <= %.6f <= %.6f <= %.6f, links %s",
                  chain.midpoint_value, chain.mean_value, chain.endpoint_trapezoid,
                  chain.generator_trapezoid, chain.all_links() ? "hold" : "broken");
    report(2, ok, buf);
}

// ---- criterion 3: identity residuals --------------------------------------

void criterion3() {
    Stopwatch timer;
    TestRng rng(33033);
    bool ok = true;
    double worst = 0.0;
    int segments = 0;
    for (const auto& entry : builtin_corpus()) {
        if (!entry.smooth) continue;
        for (int i = 0; i < 50; ++i) {
            double a = rng.uniform(entry.a_min, entry.a_max);
            double span = rng.uniform(entry.span_min, entry.span_max);
            // half the draws pin phi > 0 explicitly
            double phi = (i % 2 == 0) ? rng.uniform(0.05, pi / 2) : rng.uniform(0.0, pi / 2);
            PhiSegment s(a, a + span, phi);
            double r4 = trapezoid_identity_residual(entry.expr, s, 1e-10);
            double r7 = midpoint_identity_residual(entry.expr, s, 1e-10);
            worst = std::max({worst, r4, r7});
            if (r4 > 1e-8 || r7 > 1e-8) ok = false;
            ++segments;
        }
    }
    double elapsed = timer.seconds();
    if (elapsed >= 30.0) ok = false;
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "identity residuals over %d smooth-corpus segments (phi > 0 included): worst "
                  "%.3g (limit 1e-8), %.1f s (limit 30)",
                  segments, worst, elapsed);
    report(3, ok, buf);
}

// ---- criterion 4: falsification sweep finds no violations ------------------

void criterion4() {
    Stopwatch timer;
    SuiteConfig cfg = default_config();
    cfg.count = 10000;
    cfg.seed = 424242;
    SuiteReport rep = falsify(cfg, FalsifyTarget::ViolateWithHypothesis);
    double elapsed = timer.seconds();
    bool ok = !rep.found_violation() && rep.results.empty() && rep.total_instances == 10000 &&
              elapsed < 300.0;
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "falsify violate-with-hypothesis, full corpus, %d draws: %d violations "
                  "(exit would be %d), %.1f s (limit 300)",
                  rep.total_instances, rep.violations, rep.found_violation() ? 2 : 0, elapsed);
    report(4, ok, buf);
}

// ---- criterion 5: phi = 0 reduction equivalence ----------------------------

void criterion5() {
    TestRng rng(55055);
    std::vector<const CorpusEntry*> smooth;
    for (const auto& e : builtin_corpus())
        if (e.smooth) smooth.push_back(&e);

    bool ok = true;
    int instances = 0;
    std::string first_bad;
    for (int i = 0; i < 100; ++i) {
        const CorpusEntry& entry = *smooth[i % smooth.size()];
        double a = rng.uniform(entry.a_min, entry.a_max);
        double b = a + rng.uniform(entry.span_min, entry.span_max);
        PhiSegment s(a, b, 0.0);
        const Expr& f = entry.expr;
        Expr df = f.differentiate();

        // independent classical route: adaptive Simpson + direct real arithmetic
        Complex integral = testsupport::adaptive_simpson(
            [&](double x) { return f.eval(Complex{x, 0.0}); }, a, b, 1e-13);
        double mean = integral.real() / (b - a);
        double fa = f.eval(Complex{a, 0.0}).real();
        double fb = f.eval(Complex{b, 0.0}).real();
        double fm = f.eval(Complex{0.5 * (a + b), 0.0}).real();
        double da = std::abs(df.eval(Complex{a, 0.0}));
        double db = std::abs(df.eval(Complex{b, 0.0}));

        double lhs_1h = std::fabs(0.5 * (fa + fb) - mean);
        double rhs_1h = (b - a) * (da + db) / 8.0;
        double lhs_h1 = std::fabs(mean - fm);
        double rhs_h1 = (b - a) / 4.0 * (da + db) / 2.0;
        double rhs_ion = (b - a) / 4.0 * std::max(da, db);

        double tt2_lhs = lhs_trapezoid(f, s, 1e-12);
        double tt2_rhs = rhs_tt2(f, s);
        double tt4_lhs = lhs_midpoint(f, s, 1e-12);
        double tt4_rhs = rhs_tt4(f, s);
        double quasi_lhs = lhs_trapezoid(f, s, 1e-12);
        double quasi_rhs = rhs_quasi(f, s, QuasiKind::Trapezoid);

        bool inst_ok = rel10(tt2_lhs, lhs_1h) && rel10(tt2_rhs, rhs_1h) &&
                       rel10(tt4_lhs, lhs_h1) && rel10(tt4_rhs, rhs_h1) &&
                       rel10(quasi_lhs, lhs_1h) && rel10(quasi_rhs, rhs_ion);
        if (!inst_ok && ok) {
            ok = false;
            first_bad = entry.id + " on [" + std::to_string(a) + ", " + std::to_string(b) + "]";
        }
        ++instances;
    }
    report(5, ok,
           "phi=0 reduction vs classical trapezoid/midpoint/quasi forms over " +
               std::to_string(instances) + " instances to 1e-10 relative" +
               (ok ? "" : " -- first failure: " + first_bad));
}

// ---- criterion 6: dominance relations --------------------------------------

void criterion6() {
    TestRng rng(66066);
    const auto& corpus = builtin_corpus();
    bool ok = true;
    int instances = 0;
    int exceptions = 0;
    while (instances < 10000) {
        const CorpusEntry& entry = corpus[rng.index(corpus.size())];
        double a = rng.uniform(entry.a_min, entry.a_max);
        double span = rng.uniform(entry.span_min, entry.span_max);
        double phi = entry.phi_override.empty()
                         ? rng.uniform(0.0, pi / 2)
                         : entry.phi_override[rng.index(entry.phi_override.size())];
        bool bad_endpoint = false;
        for (double k : entry.kink_points)
            if (std::fabs(a - k) < 1e-6 || std::fabs(a + span - k) < 1e-6) bad_endpoint = true;
        if (bad_endpoint) continue;
        PhiSegment s(a, a + span, phi);
        double p = rng.uniform(1.000001, 10.0);
        double q = rng.uniform(1.0, 10.0);
        ++instances;
        if (!(rhs_tt6(entry.expr, s, p) >= rhs_tt5(entry.expr, s, p))) ++exceptions;
        if (!(rhs_z_relaxed(entry.expr, s, q) >= rhs_z(entry.expr, s, q))) ++exceptions;
        if (rhs_z(entry.expr, s, 1.0) != rhs_tt2(entry.expr, s)) ++exceptions;
    }
    ok = exceptions == 0;
    report(6, ok,
           "dominance rhs_tt6 >= rhs_tt5, rhs_z_relaxed >= rhs_z, rhs_z(q=1) == rhs_tt2 over " +
               std::to_string(instances) + " instances: " + std::to_string(exceptions) +
               " exceptions");
}

// ---- criterion 7: derivative oracle -----------------------------------------

void criterion7() {
    TestRng rng(77077);
    bool ok = true;
    std::string bad;
    for (const auto& entry : builtin_corpus()) {
        Expr df = entry.expr.differentiate();
        int checked = 0;
        double worst = 0.0;
        while (checked < 100) {
            double x = rng.uniform(entry.a_min, entry.a_max + entry.span_max);
            bool safe = true;
            for (double k : entry.kink_points)
                if (std::fabs(x - k) < 1e-2) safe = false;
            for (double p : entry.pole_points)
                if (std::fabs(x - p) < 2e-1) safe = false;
            if (!safe) continue;
            ++checked;
            double sym = df.eval(Complex{x, 0.0}).real();
            double fd = testsupport::central_diff(entry.expr, x);
            double rel = std::fabs(sym - fd) / (1.0 + std::max(std::fabs(sym), std::fabs(fd)));
            worst = std::max(worst, rel);
        }
        if (worst > 1e-4) {
            ok = false;
            bad += " " + entry.id;
        }
    }
    report(7, ok,
           std::string("symbolic derivative vs central differences, 100 points per corpus "
                       "entry, 1e-4 relative") +
               (bad.empty() ? "" : " -- failed:" + bad));
}

// ---- criterion 8: determinism ----------------------------------------------

void criterion8() {
    SuiteConfig cfg = default_config();
    cfg.corpus_ids = {"square", "exp", "softplus", "neg_abs"};
    cfg.theorems = {Theorem::TT2, Theorem::TT5, Theorem::Z, Theorem::QuasiTrapezoid,
                    Theorem::Chain2};
    cfg.count = 5;
    cfg.seed = 99;
    cfg.grid_n = 257;
    std::string first = canonical_dump(report_to_json(run_suite(cfg)));
    std::string second = canonical_dump(report_to_json(run_suite(cfg)));
    bool ok = first == second && !first.empty();
    report(8, ok,
           "two suite runs with identical config and seed produce byte-identical canonical JSON (" +
               std::to_string(first.size()) + " bytes)");
}

} // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    if (g_failures == 0) {
        std::printf("acceptance: all 8 criteria passed\n");
        return 0;
    }
    std::printf("acceptance: %d criterion(s) FAILED\n", g_failures);
    return 1;
}
