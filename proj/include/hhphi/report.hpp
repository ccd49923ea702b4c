#pragma once

#include <string>

#include <json.hpp>

#include "hhphi/bounds.hpp"
#include "hhphi/convexity.hpp"
#include "hhphi/segment.hpp"

namespace hhphi {

/// Canonical serialization: keys sorted (nlohmann's default object order),
/// every floating-point number rendered with 17 significant digits, so equal
/// documents are byte-identical and doubles round-trip exactly.
std::string canonical_dump(const nlohmann::json& j, int indent = 2);

nlohmann::json to_json(const PhiSegment& s);
nlohmann::json to_json(const Witness& w);
nlohmann::json to_json(const ConvexityReport& r);
nlohmann::json to_json(const ChainReport& r);
nlohmann::json to_json(const BoundResult& r);

/// One CSV row per entry of report["results"], derived from the JSON
/// document (never recomputed from live objects). Columns:
/// index,corpus_id,theorem,a,b,phi,p,q,lhs,rhs,margin,sharpness,status
std::string csv_from_report(const nlohmann::json& report);

} // namespace hhphi
