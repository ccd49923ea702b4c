#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hhphi/bounds.hpp"
#include "hhphi/corpus.hpp"

namespace hhphi {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SegmentSamplerConfig {
    double a_min = -2.0, a_max = 2.0;
    double span_min = 0.1, span_max = 3.0;
    std::vector<double> phi_values;       // exact reduction points; default {0, pi/6, pi/4, pi/3, pi/2}
    double phi_uniform_fraction = 0.5;    // probability of a uniform [0, pi/2] draw instead
};

struct ParamSamplerConfig {
    double p_min = 1.000001, p_max = 10.0;  // p > 1
    double q_min = 1.0, q_max = 10.0;       // q >= 1
};

struct SuiteConfig {
    std::vector<std::string> corpus_ids;              // resolved; never empty
    std::vector<Theorem> theorems;                    // may be empty (empty suite)
    int count = 10;                                   // instances per (entry, theorem)
    std::uint64_t seed = 0;
    double tol = 1e-10;
    int grid_n = 1025;
    double gate_slack = 1e-9;
    bool ignore_safe_ranges = false;                  // sample raw config ranges
    SegmentSamplerConfig segments;
    ParamSamplerConfig params;
};

/// Reads and validates the JSON config schema documented in the README.
/// Throws ConfigError with a field-level message on anything malformed.
SuiteConfig parse_config(const nlohmann::json& j);
SuiteConfig default_config();

struct InstanceRecord {
    int index;  // seed-order draw index
    std::string corpus_id;
    Theorem theorem;
    double a, b, phi;
    std::optional<double> p, q;
    std::optional<BoundResult> result;
    std::string error;  // structured failure note when result is absent

    std::string status_string() const;
};

enum class FalsifyTarget { ViolateWithHypothesis, HypothesisGap };
std::string_view to_string(FalsifyTarget t);
std::optional<FalsifyTarget> falsify_target_from_string(std::string_view name);

struct SuiteReport {
    nlohmann::json config_echo;
    std::optional<FalsifyTarget> target;  // set by falsify runs
    std::vector<InstanceRecord> results;  // run_suite: all; falsify: matches only
    std::map<std::string, int> status_counts;  // over every evaluated instance
    std::map<std::string, double> worst_sharpness;  // per theorem, max over Holds
    int total_instances = 0;
    int violations = 0;  // ViolatedWithHypothesis count over every instance

    bool found_violation() const { return violations > 0; }
};

/// Deterministic given config + seed. Per-instance failures (domain errors,
/// quadrature non-convergence, non-real chains) become structured records;
/// nothing aborts the suite.
SuiteReport run_suite(const SuiteConfig& config);

/// Random search for instances matching the target. Records every match;
/// the exit-code contract (0 none / 2 some ViolatedWithHypothesis) is
/// derived from found_violation().
SuiteReport falsify(const SuiteConfig& config, FalsifyTarget target);

nlohmann::json report_to_json(const SuiteReport& report);

} // namespace hhphi
