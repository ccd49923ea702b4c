#include "hhphi/suite.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "hhphi/report.hpp"

namespace hhphi {

namespace {

constexpr const char* kLibraryVersion = "0.1.0";
constexpr int kReportFormatVersion = 1;
constexpr double kEndpointMargin = 1e-6;  // distance of a, b from kink points
constexpr double kPoleMargin = 0.02;      // clearance of the real footprint from poles

// mt19937_64 with an explicit bits-to-double map, so draws are reproducible
// across standard libraries (uniform_real_distribution is not pinned down).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    std::size_t index(std::size_t n) { return static_cast<std::size_t>(eng_() % n); }

private:
    std::mt19937_64 eng_;
};

std::vector<double> default_phi_values() {
    const double pi = std::numbers::pi;
    return {0.0, pi / 6, pi / 4, pi / 3, pi / 2};
}

struct Ranges {
    double a_min, a_max, span_min, span_max;
};

Ranges effective_ranges(const CorpusEntry& entry, const SuiteConfig& cfg) {
    if (cfg.ignore_safe_ranges)
        return {cfg.segments.a_min, cfg.segments.a_max, cfg.segments.span_min,
                cfg.segments.span_max};
    Ranges r{std::max(cfg.segments.a_min, entry.a_min), std::min(cfg.segments.a_max, entry.a_max),
             std::max(cfg.segments.span_min, entry.span_min),
             std::min(cfg.segments.span_max, entry.span_max)};
    if (!(r.a_min <= r.a_max) || !(r.span_min <= r.span_max))
        throw ConfigError("segment ranges do not intersect the safe ranges of corpus entry '" +
                          entry.id + "'");
    return r;
}

bool clears_kinks(const CorpusEntry& entry, double a, double b) {
    for (double k : entry.kink_points)
        if (std::fabs(a - k) < kEndpointMargin || std::fabs(b - k) < kEndpointMargin) return false;
    return true;
}

bool clears_poles(const CorpusEntry& entry, double a, double span, double phi) {
    double reach = a + std::cos(phi) * span;
    double lo = std::min(a, reach) - kPoleMargin;
    double hi = std::max(a, reach) + kPoleMargin;
    for (double p : entry.pole_points) {
        if (p >= lo && p <= hi) return false;
        if (std::fabs(a - p) < kPoleMargin || std::fabs(a + span - p) < kPoleMargin) return false;
    }
    return true;
}

PhiSegment sample_segment(const CorpusEntry& entry, const SuiteConfig& cfg, Rng& rng) {
    Ranges r = effective_ranges(entry, cfg);
    for (int attempt = 0; attempt < 100; ++attempt) {
        double a = rng.uniform(r.a_min, r.a_max);
        double span = rng.uniform(r.span_min, r.span_max);
        double phi;
        if (!entry.phi_override.empty() && !cfg.ignore_safe_ranges) {
            phi = entry.phi_override[rng.index(entry.phi_override.size())];
        } else if (rng.uniform01() < cfg.segments.phi_uniform_fraction) {
            phi = rng.uniform(0.0, std::numbers::pi / 2);
        } else {
            phi = cfg.segments.phi_values[rng.index(cfg.segments.phi_values.size())];
        }
        if (!cfg.ignore_safe_ranges) {
            if (!clears_kinks(entry, a, a + span)) continue;
            if (!clears_poles(entry, a, span, phi)) continue;
        }
        return PhiSegment(a, a + span, phi);
    }
    throw ConfigError("could not sample a segment clear of the singular points of corpus entry '" +
                      entry.id + "'");
}

InstanceRecord evaluate_instance(int index, const CorpusEntry& entry, Theorem theorem,
                                 const SuiteConfig& cfg, Rng& rng) {
    InstanceRecord rec;
    rec.index = index;
    rec.corpus_id = entry.id;
    rec.theorem = theorem;

    PhiSegment seg = sample_segment(entry, cfg, rng);
    rec.a = seg.a();
    rec.b = seg.b();
    rec.phi = seg.phi();

    // both parameters are drawn every time so the stream stays aligned
    // across theorem subsets
    double p = rng.uniform(cfg.params.p_min, cfg.params.p_max);
    double q = rng.uniform(cfg.params.q_min, cfg.params.q_max);
    HolderParams params;
    if (theorem_needs_p(theorem)) {
        params.p = p;
        rec.p = p;
    }
    if (theorem_needs_q(theorem)) {
        params.q = q;
        rec.q = q;
    }

    try {
        rec.result = evaluate(theorem, entry.expr, seg, params, cfg.tol, cfg.grid_n,
                              cfg.gate_slack);
    } catch (const EvalError& e) {
        rec.error = std::string("domain_error: ") + e.what();
    } catch (const QuadratureError& e) {
        rec.error = std::string("quadrature_error: ") + e.what();
    } catch (const NonRealError& e) {
        rec.error = std::string("non_real: ") + e.what();
    } catch (const PositivityError& e) {
        rec.error = std::string("positivity_error: ") + e.what();
    }
    return rec;
}

void tally(SuiteReport& report, const InstanceRecord& rec) {
    ++report.total_instances;
    ++report.status_counts[rec.status_string()];
    if (rec.result) {
        if (rec.result->status == BoundStatus::ViolatedWithHypothesis) ++report.violations;
        if (rec.result->status == BoundStatus::Holds) {
            auto key = std::string(to_string(rec.theorem));
            auto it = report.worst_sharpness.find(key);
            if (it == report.worst_sharpness.end())
                report.worst_sharpness[key] = rec.result->sharpness;
            else
                it->second = std::max(it->second, rec.result->sharpness);
        }
    }
}

void sort_records(std::vector<InstanceRecord>& records) {
    std::sort(records.begin(), records.end(), [](const InstanceRecord& x, const InstanceRecord& y) {
        if (x.corpus_id != y.corpus_id) return x.corpus_id < y.corpus_id;
        auto tx = to_string(x.theorem), ty = to_string(y.theorem);
        if (tx != ty) return tx < ty;
        return x.index < y.index;
    });
}

nlohmann::json config_to_json(const SuiteConfig& cfg) {
    nlohmann::json theorems = nlohmann::json::array();
    for (Theorem t : cfg.theorems) theorems.push_back(std::string(to_string(t)));
    return {
        {"corpus", cfg.corpus_ids},
        {"theorems", theorems},
        {"count", cfg.count},
        {"seed", cfg.seed},
        {"tol", cfg.tol},
        {"grid_n", cfg.grid_n},
        {"gate_slack", cfg.gate_slack},
        {"ignore_safe_ranges", cfg.ignore_safe_ranges},
        {"segments",
         {{"a_range", {cfg.segments.a_min, cfg.segments.a_max}},
          {"span_range", {cfg.segments.span_min, cfg.segments.span_max}},
          {"phi_values", cfg.segments.phi_values},
          {"phi_uniform_fraction", cfg.segments.phi_uniform_fraction}}},
        {"params",
         {{"p_range", {cfg.params.p_min, cfg.params.p_max}},
          {"q_range", {cfg.params.q_min, cfg.params.q_max}}}},
    };
}

nlohmann::json record_to_json(const InstanceRecord& rec) {
    nlohmann::json j{
        {"index", rec.index},
        {"corpus_id", rec.corpus_id},
        {"theorem", std::string(to_string(rec.theorem))},
        {"segment", nlohmann::json{{"a", rec.a}, {"b", rec.b}, {"phi", rec.phi}}},
        {"status", rec.status_string()},
    };
    j["p"] = rec.p ? nlohmann::json(*rec.p) : nlohmann::json(nullptr);
    j["q"] = rec.q ? nlohmann::json(*rec.q) : nlohmann::json(nullptr);
    if (rec.result) {
        nlohmann::json bound = to_json(*rec.result);
        bound.erase("theorem");
        bound.erase("status");
        j.update(bound);
        j["error"] = nullptr;
    } else {
        j["error"] = rec.error;
    }
    return j;
}

std::pair<double, double> read_range(const nlohmann::json& j, const char* key, double lo_def,
                                     double hi_def) {
    if (!j.contains(key)) return {lo_def, hi_def};
    const auto& r = j.at(key);
    if (!r.is_array() || r.size() != 2 || !r[0].is_number() || !r[1].is_number())
        throw ConfigError(std::string(key) + " must be a [lo, hi] number pair");
    double lo = r[0].get<double>(), hi = r[1].get<double>();
    if (!(lo <= hi)) throw ConfigError(std::string(key) + " must satisfy lo <= hi");
    return {lo, hi};
}

} // namespace

std::string InstanceRecord::status_string() const {
    return result ? std::string(to_string(result->status)) : "error";
}

std::string_view to_string(FalsifyTarget t) {
    return t == FalsifyTarget::ViolateWithHypothesis ? "violate-with-hypothesis"
                                                     : "hypothesis-gap";
}

std::optional<FalsifyTarget> falsify_target_from_string(std::string_view name) {
    if (name == "violate-with-hypothesis") return FalsifyTarget::ViolateWithHypothesis;
    if (name == "hypothesis-gap") return FalsifyTarget::HypothesisGap;
    return std::nullopt;
}

SuiteConfig default_config() {
    SuiteConfig cfg;
    cfg.segments.phi_values = default_phi_values();
    for (const auto& e : builtin_corpus()) cfg.corpus_ids.push_back(e.id);
    cfg.theorems = all_theorems();
    return cfg;
}

SuiteConfig parse_config(const nlohmann::json& j) {
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    static const char* known[] = {"corpus",     "theorems",   "count",
                                  "seed",       "tol",        "grid_n",
                                  "gate_slack", "ignore_safe_ranges", "segments",
                                  "params"};
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : known) ok = ok || it.key() == k;
        if (!ok) throw ConfigError("unknown config field '" + it.key() + "'");
    }

    SuiteConfig cfg = default_config();

    if (j.contains("corpus") && j.at("corpus") != nlohmann::json("all")) {
        const auto& c = j.at("corpus");
        if (!c.is_array()) throw ConfigError("corpus must be \"all\" or a list of entry ids");
        cfg.corpus_ids.clear();
        for (const auto& id : c) {
            if (!id.is_string()) throw ConfigError("corpus entries must be strings");
            if (!find_entry(id.get<std::string>()))
                throw ConfigError("unknown corpus entry '" + id.get<std::string>() + "'");
            cfg.corpus_ids.push_back(id.get<std::string>());
        }
        if (cfg.corpus_ids.empty()) throw ConfigError("corpus list must not be empty");
    }

    if (j.contains("theorems") && j.at("theorems") != nlohmann::json("all")) {
        const auto& t = j.at("theorems");
        if (!t.is_array()) throw ConfigError("theorems must be \"all\" or a list of ids");
        cfg.theorems.clear();
        for (const auto& name : t) {
            if (!name.is_string()) throw ConfigError("theorem ids must be strings");
            auto th = theorem_from_string(name.get<std::string>());
            if (!th) throw ConfigError("unknown theorem id '" + name.get<std::string>() + "'");
            cfg.theorems.push_back(*th);
        }
    }

    if (j.contains("count")) {
        if (!j.at("count").is_number_integer() || j.at("count").get<long long>() < 0)
            throw ConfigError("count must be a nonnegative integer");
        cfg.count = j.at("count").get<int>();
    }
    if (j.contains("seed")) {
        if (!j.at("seed").is_number_unsigned() && !j.at("seed").is_number_integer())
            throw ConfigError("seed must be an integer");
        cfg.seed = j.at("seed").get<std::uint64_t>();
    }
    if (j.contains("tol")) {
        if (!j.at("tol").is_number() || !(j.at("tol").get<double>() > 0.0))
            throw ConfigError("tol must be a positive number");
        cfg.tol = j.at("tol").get<double>();
    }
    if (j.contains("grid_n")) {
        if (!j.at("grid_n").is_number_integer() || j.at("grid_n").get<int>() < 3)
            throw ConfigError("grid_n must be an integer >= 3");
        cfg.grid_n = j.at("grid_n").get<int>();
    }
    if (j.contains("gate_slack")) {
        if (!j.at("gate_slack").is_number() || !(j.at("gate_slack").get<double>() > 0.0))
            throw ConfigError("gate_slack must be a positive number");
        cfg.gate_slack = j.at("gate_slack").get<double>();
    }
    if (j.contains("ignore_safe_ranges")) {
        if (!j.at("ignore_safe_ranges").is_boolean())
            throw ConfigError("ignore_safe_ranges must be a boolean");
        cfg.ignore_safe_ranges = j.at("ignore_safe_ranges").get<bool>();
    }

    if (j.contains("segments")) {
        const auto& s = j.at("segments");
        if (!s.is_object()) throw ConfigError("segments must be an object");
        std::tie(cfg.segments.a_min, cfg.segments.a_max) =
            read_range(s, "a_range", cfg.segments.a_min, cfg.segments.a_max);
        std::tie(cfg.segments.span_min, cfg.segments.span_max) =
            read_range(s, "span_range", cfg.segments.span_min, cfg.segments.span_max);
        if (!(cfg.segments.span_min > 0.0)) throw ConfigError("span_range must be positive");
        if (s.contains("phi_values")) {
            const auto& pv = s.at("phi_values");
            if (!pv.is_array() || pv.empty()) throw ConfigError("phi_values must be a nonempty list");
            cfg.segments.phi_values.clear();
            for (const auto& v : pv) {
                if (!v.is_number()) throw ConfigError("phi_values must be numbers");
                double phi = v.get<double>();
                if (phi < 0.0 || phi > std::numbers::pi)
                    throw ConfigError("phi values must lie in [0, pi]");
                cfg.segments.phi_values.push_back(phi);
            }
        }
        if (s.contains("phi_uniform_fraction")) {
            double f = s.at("phi_uniform_fraction").get<double>();
            if (!(f >= 0.0 && f <= 1.0))
                throw ConfigError("phi_uniform_fraction must lie in [0, 1]");
            cfg.segments.phi_uniform_fraction = f;
        }
    }

    if (j.contains("params")) {
        const auto& p = j.at("params");
        if (!p.is_object()) throw ConfigError("params must be an object");
        std::tie(cfg.params.p_min, cfg.params.p_max) =
            read_range(p, "p_range", cfg.params.p_min, cfg.params.p_max);
        std::tie(cfg.params.q_min, cfg.params.q_max) =
            read_range(p, "q_range", cfg.params.q_min, cfg.params.q_max);
        if (!(cfg.params.p_min > 1.0)) throw ConfigError("p_range requires p > 1");
        if (!(cfg.params.q_min >= 1.0)) throw ConfigError("q_range requires q >= 1");
    }
    return cfg;
}

SuiteReport run_suite(const SuiteConfig& cfg) {
    Rng rng(cfg.seed);
    SuiteReport report;
    report.config_echo = config_to_json(cfg);

    int index = 0;
    for (const auto& id : cfg.corpus_ids) {
        const CorpusEntry& entry = *find_entry(id);
        for (Theorem theorem : cfg.theorems) {
            for (int k = 0; k < cfg.count; ++k) {
                InstanceRecord rec = evaluate_instance(index++, entry, theorem, cfg, rng);
                tally(report, rec);
                report.results.push_back(std::move(rec));
            }
        }
    }
    sort_records(report.results);
    return report;
}

SuiteReport falsify(const SuiteConfig& cfg, FalsifyTarget target) {
    Rng rng(cfg.seed);
    SuiteReport report;
    report.config_echo = config_to_json(cfg);
    report.target = target;

    if (cfg.theorems.empty() || cfg.count == 0) return report;

    for (int draw = 0; draw < cfg.count; ++draw) {
        const CorpusEntry& entry =
            *find_entry(cfg.corpus_ids[rng.index(cfg.corpus_ids.size())]);
        Theorem theorem = cfg.theorems[rng.index(cfg.theorems.size())];
        InstanceRecord rec = evaluate_instance(draw, entry, theorem, cfg, rng);
        tally(report, rec);

        bool matches = false;
        if (rec.result) {
            if (target == FalsifyTarget::ViolateWithHypothesis) {
                matches = rec.result->status == BoundStatus::ViolatedWithHypothesis;
            } else {
                bool inequality_ok = rec.result->chain
                                         ? rec.result->chain->all_links()
                                         : rec.result->lhs <= rec.result->rhs + rec.result->slack;
                matches = rec.result->status == BoundStatus::HypothesisFalsified && inequality_ok;
            }
        }
        if (matches) report.results.push_back(std::move(rec));
    }
    sort_records(report.results);
    return report;
}

nlohmann::json report_to_json(const SuiteReport& report) {
    nlohmann::json results = nlohmann::json::array();
    for (const auto& rec : report.results) results.push_back(record_to_json(rec));

    nlohmann::json j{
        {"config", report.config_echo},
        {"library_version", kLibraryVersion},
        {"format_version", kReportFormatVersion},
        {"results", std::move(results)},
        {"summary",
         {{"counts", report.status_counts},
          {"total", report.total_instances},
          {"violations", report.violations},
          {"worst_sharpness", report.worst_sharpness}}},
    };
    j["target"] = report.target ? nlohmann::json(std::string(to_string(*report.target)))
                                : nlohmann::json(nullptr);
    return j;
}

} // namespace hhphi
