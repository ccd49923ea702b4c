#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "hhphi/bounds.hpp"
#include "hhphi/report.hpp"
#include "hhphi/suite.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitViolation = 2;

nlohmann::json load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw hhphi::ConfigError("cannot open config file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw hhphi::ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
    }
    return j;
}

void write_or_print(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw hhphi::ConfigError("cannot write to '" + path + "'");
    out << text;
}

void emit_report(const hhphi::SuiteReport& report, const std::string& out_path,
                 const std::string& csv_path) {
    nlohmann::json j = hhphi::report_to_json(report);
    write_or_print(hhphi::canonical_dump(j), out_path);
    if (!csv_path.empty()) write_or_print(hhphi::csv_from_report(j), csv_path);
}

std::string pretty_bound(const hhphi::BoundResult& r) {
    std::ostringstream os;
    os.precision(12);
    os << "theorem:    " << hhphi::to_string(r.theorem) << "\n"
       << "status:     " << hhphi::to_string(r.status) << "\n"
       << "lhs:        " << r.lhs << "\n"
       << "rhs:        " << r.rhs << "\n"
       << "margin:     " << r.margin << "\n"
       << "sharpness:  " << r.sharpness << "\n"
       << "hypothesis: " << r.hypothesis.target << " " << hhphi::to_string(r.hypothesis.kind)
       << " -> " << hhphi::to_string(r.hypothesis.verdict) << " (max violation "
       << r.hypothesis.max_violation << ", slack " << r.hypothesis.slack << ")\n"
       << "positive:   " << (r.positivity_ok ? "yes" : "no") << "\n"
       << "phi range:  " << (r.phi_in_theorem_range ? "within [0, pi/2]" : "outside [0, pi/2]")
       << "\n";
    if (r.aux_rhs) os << "aux rhs:    " << *r.aux_rhs << "\n";
    if (r.chain) {
        os << "chain:      " << r.chain->midpoint_value << " <= " << r.chain->mean_value
           << " <= " << r.chain->endpoint_trapezoid << " <= " << r.chain->generator_trapezoid
           << "  links: " << r.chain->link1 << r.chain->link2 << r.chain->link3 << "\n";
    }
    if (!r.note.empty()) os << "note:       " << r.note << "\n";
    return os.str();
}

struct CheckOptions {
    std::string expr;
    double a = 0.0, b = 1.0, phi = 0.0;
    std::string theorem;
    std::optional<double> p, q;
    int grid = 1025;
    double tol = 1e-10;
    std::string format = "pretty";
};

int run_check(const CheckOptions& opt) {
    auto theorem = hhphi::theorem_from_string(opt.theorem);
    if (!theorem) {
        std::cerr << "unknown theorem id '" << opt.theorem << "'\n";
        return kExitUsage;
    }
    if (hhphi::theorem_needs_p(*theorem) && !opt.p) {
        std::cerr << "theorem " << opt.theorem << " requires --p\n";
        return kExitUsage;
    }
    if (hhphi::theorem_needs_q(*theorem) && !opt.q) {
        std::cerr << "theorem " << opt.theorem << " requires --q\n";
        return kExitUsage;
    }

    hhphi::Expr f = hhphi::parse(opt.expr);
    hhphi::PhiSegment seg(opt.a, opt.b, opt.phi);
    hhphi::HolderParams params{opt.p, opt.q};

    hhphi::BoundResult result =
        hhphi::evaluate(*theorem, f, seg, params, opt.tol, opt.grid);

    if (opt.format == "pretty") {
        std::cout << pretty_bound(result);
    } else {
        nlohmann::json row = hhphi::to_json(result);
        row["segment"] = hhphi::to_json(seg);
        row["expr"] = f.render();
        row["index"] = 0;
        row["corpus_id"] = "(inline)";
        row["p"] = opt.p ? nlohmann::json(*opt.p) : nlohmann::json(nullptr);
        row["q"] = opt.q ? nlohmann::json(*opt.q) : nlohmann::json(nullptr);
        if (opt.format == "json") {
            std::cout << hhphi::canonical_dump(row);
        } else {
            nlohmann::json report{{"results", nlohmann::json::array({row})}};
            std::cout << hhphi::csv_from_report(report);
        }
    }
    return result.status == hhphi::BoundStatus::ViolatedWithHypothesis ? kExitViolation : kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical verifier for trapezoid/midpoint error bounds of phi-convex and "
                 "quasi-phi-convex function classes on rotated segments"};
    app.require_subcommand(1);

    CheckOptions check;
    auto* cmd_check = app.add_subcommand("check", "evaluate one theorem instance");
    cmd_check->add_option("--expr", check.expr, "expression text, e.g. \"x^2\"")->required();
    cmd_check->add_option("--a", check.a, "left endpoint a")->required();
    cmd_check->add_option("--b", check.b, "generator point b (a < b)")->required();
    cmd_check->add_option("--phi", check.phi, "rotation angle in radians, [0, pi]")->required();
    cmd_check->add_option("--theorem", check.theorem, "theorem id (see `explain`)")->required();
    cmd_check->add_option("--p", check.p, "Holder exponent, p > 1");
    cmd_check->add_option("--q", check.q, "power-mean exponent, q >= 1");
    cmd_check->add_option("--grid", check.grid, "membership grid size (default 1025)");
    cmd_check->add_option("--tol", check.tol, "quadrature tolerance (default 1e-10)");
    cmd_check->add_option("--format", check.format, "json | csv | pretty")
        ->check(CLI::IsMember({"json", "csv", "pretty"}));

    std::string config_path, out_path, csv_path, target_name;
    auto* cmd_suite = app.add_subcommand("suite", "run a corpus/theorem sweep from a config");
    cmd_suite->add_option("--config", config_path, "JSON config path")->required();
    cmd_suite->add_option("--out", out_path, "write the JSON report here (default stdout)");
    cmd_suite->add_option("--csv", csv_path, "also write a CSV derived from the JSON report");

    auto* cmd_falsify =
        app.add_subcommand("falsify", "random search for violations or hypothesis gaps");
    cmd_falsify->add_option("--config", config_path, "JSON config path")->required();
    cmd_falsify->add_option("--target", target_name,
                            "violate-with-hypothesis | hypothesis-gap")->required();
    cmd_falsify->add_option("--out", out_path, "write the JSON report here (default stdout)");
    cmd_falsify->add_option("--csv", csv_path, "also write a CSV derived from the JSON report");

    std::string explain_id;
    auto* cmd_explain = app.add_subcommand("explain", "describe a theorem id");
    cmd_explain->add_option("id", explain_id, "theorem id, e.g. tt2")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (cmd_check->parsed()) return run_check(check);

        if (cmd_suite->parsed()) {
            hhphi::SuiteConfig cfg = hhphi::parse_config(load_config(config_path));
            hhphi::SuiteReport report = hhphi::run_suite(cfg);
            emit_report(report, out_path, csv_path);
            return report.found_violation() ? kExitViolation : kExitOk;
        }

        if (cmd_falsify->parsed()) {
            auto target = hhphi::falsify_target_from_string(target_name);
            if (!target) {
                std::cerr << "unknown falsify target '" << target_name << "'\n";
                return kExitUsage;
            }
            hhphi::SuiteConfig cfg = hhphi::parse_config(load_config(config_path));
            hhphi::SuiteReport report = hhphi::falsify(cfg, *target);
            emit_report(report, out_path, csv_path);
            return report.found_violation() ? kExitViolation : kExitOk;
        }

        if (cmd_explain->parsed()) {
            auto theorem = hhphi::theorem_from_string(explain_id);
            if (!theorem) {
                std::cerr << "unknown theorem id '" << explain_id << "'\n";
                return kExitUsage;
            }
            std::cout << hhphi::explain(*theorem) << "\n";
            return kExitOk;
        }
    } catch (const hhphi::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const hhphi::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid argument: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
