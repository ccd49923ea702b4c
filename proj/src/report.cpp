#include "hhphi/report.hpp"

#include <array>
#include <cmath>
#include <cstdio>

namespace hhphi {

namespace {

std::string format_float(double v) {
    if (!std::isfinite(v)) throw std::invalid_argument("reports cannot carry non-finite numbers");
    std::array<char, 64> buf{};
    int n = std::snprintf(buf.data(), buf.size(), "%.17g", v);
    return std::string(buf.data(), static_cast<std::size_t>(n));
}

void dump_value(const nlohmann::json& j, std::string& out, int indent, int depth) {
    const std::string pad(static_cast<std::size_t>(indent * depth), ' ');
    const std::string pad_in(static_cast<std::size_t>(indent * (depth + 1)), ' ');
    switch (j.type()) {
        case nlohmann::json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += ",\n";
                first = false;
                out += pad_in;
                out += nlohmann::json(it.key()).dump();
                out += ": ";
                dump_value(it.value(), out, indent, depth + 1);
            }
            out += "\n" + pad + "}";
            return;
        }
        case nlohmann::json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            out += "[\n";
            bool first = true;
            for (const auto& v : j) {
                if (!first) out += ",\n";
                first = false;
                out += pad_in;
                dump_value(v, out, indent, depth + 1);
            }
            out += "\n" + pad + "]";
            return;
        }
        case nlohmann::json::value_t::number_float:
            out += format_float(j.get<double>());
            return;
        default:
            out += j.dump();
            return;
    }
}

std::string csv_number(const nlohmann::json& v) {
    if (v.is_null()) return "";
    if (v.is_number_float()) return format_float(v.get<double>());
    return v.dump();
}

} // namespace

std::string canonical_dump(const nlohmann::json& j, int indent) {
    std::string out;
    dump_value(j, out, indent, 0);
    out += '\n';
    return out;
}

nlohmann::json to_json(const PhiSegment& s) {
    return {{"a", s.a()}, {"b", s.b()}, {"phi", s.phi()}};
}

nlohmann::json to_json(const Witness& w) {
    return {{"t1", w.t1}, {"t2", w.t2}, {"lambda", w.lambda}, {"violation", w.violation}};
}

nlohmann::json to_json(const ConvexityReport& r) {
    nlohmann::json j{
        {"kind", std::string(to_string(r.kind))},
        {"target", r.target},
        {"exponent", r.exponent},
        {"verdict", std::string(to_string(r.verdict))},
        {"grid_n", r.grid_n},
        {"slack", r.slack},
        {"max_violation", r.max_violation},
        {"perturbed_nodes", r.perturbed_nodes},
    };
    j["witness"] = r.witness ? to_json(*r.witness) : nlohmann::json(nullptr);
    return j;
}

nlohmann::json to_json(const ChainReport& r) {
    return {
        {"midpoint_value", r.midpoint_value},
        {"mean_value", r.mean_value},
        {"endpoint_trapezoid", r.endpoint_trapezoid},
        {"generator_trapezoid", r.generator_trapezoid},
        {"link1", r.link1},
        {"link2", r.link2},
        {"link3", r.link3},
        {"endpoint_below_generator", r.endpoint_below_generator},
        {"positive", r.positive},
    };
}

nlohmann::json to_json(const BoundResult& r) {
    nlohmann::json j{
        {"theorem", std::string(to_string(r.theorem))},
        {"lhs", r.lhs},
        {"rhs", r.rhs},
        {"margin", r.margin},
        {"sharpness", r.sharpness},
        {"status", std::string(to_string(r.status))},
        {"slack", r.slack},
        {"positivity_ok", r.positivity_ok},
        {"phi_in_theorem_range", r.phi_in_theorem_range},
        {"hypothesis", to_json(r.hypothesis)},
    };
    j["aux_rhs"] = r.aux_rhs ? nlohmann::json(*r.aux_rhs) : nlohmann::json(nullptr);
    j["chain"] = r.chain ? to_json(*r.chain) : nlohmann::json(nullptr);
    j["note"] = r.note;
    return j;
}

std::string csv_from_report(const nlohmann::json& report) {
    std::string out = "index,corpus_id,theorem,a,b,phi,p,q,lhs,rhs,margin,sharpness,status\n";
    if (!report.contains("results")) return out;
    for (const auto& row : report.at("results")) {
        const auto& seg = row.at("segment");
        auto field = [&](const char* k) {
            return row.contains(k) ? csv_number(row.at(k)) : std::string();
        };
        out += csv_number(row.at("index")) + ',';
        out += row.at("corpus_id").get<std::string>() + ',';
        out += row.at("theorem").get<std::string>() + ',';
        out += csv_number(seg.at("a")) + ',';
        out += csv_number(seg.at("b")) + ',';
        out += csv_number(seg.at("phi")) + ',';
        out += field("p") + ',';
        out += field("q") + ',';
        out += field("lhs") + ',';
        out += field("rhs") + ',';
        out += field("margin") + ',';
        out += field("sharpness") + ',';
        out += row.at("status").get<std::string>() + '\n';
    }
    return out;
}

} // namespace hhphi
