#pragma once

// JSON encodings of function descriptors, reports and results.

#include <json.hpp>

#include "diskineq/constants.hpp"
#include "diskineq/inequal.hpp"
#include "diskineq/norms.hpp"
#include "diskineq/repr.hpp"
#include "diskineq/search.hpp"

namespace diskineq {

using json = nlohmann::json;

/// Parses {"type":"taylor_pair","g":[[re,im],...],"h":[...]}, {"type":"fa","a":..},
/// {"type":"monomial","n":..} or {"type":"exp","scale":..,"base":{...}}.
/// Coefficients may also be plain reals. Throws PreconditionFailed on bad input.
HarmonicFunction function_from_json(const json& j);
json function_to_json(const HarmonicFunction& f);

json series_to_json(const TaylorSeries& s);

/// "pass" is true/false, or "not-applicable" when the hypothesis fails.
json report_to_json(const InequalityReport& r);
json norm_to_json(const NormResult& r);
json constants_to_json(const constants::Table& t);
json search_to_json(const SearchResult& r);
json sweep_to_json(const FaSweep& s);

}  // namespace diskineq
