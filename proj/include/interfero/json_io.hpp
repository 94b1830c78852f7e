#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "interfero/ambiguity.hpp"
#include "interfero/measurement.hpp"
#include "interfero/recover.hpp"
#include "interfero/signal.hpp"

namespace interfero {

using json = nlohmann::json;

/// Parses text; syntax errors throw Malformed.
json parse_json(std::string_view text);

/// {"offset": n0, "coeffs": [[re, im], ...]}
json signal_to_json(const Signal& x);
/// Throws Malformed for missing keys, wrong types or non-finite values.
Signal signal_from_json(const json& j);

json measurement_to_json(const MeasurementSet& m);
/// Validates the result; throws Malformed on any inconsistency.
MeasurementSet measurement_from_json(const json& j);

/// {"success", "rotation", "max_err", "n0", "mode"} plus "error" on failure.
json report_to_json(const RoundTripReport& r);

json catalog_to_json(const AmbiguityCatalog& c);
json enumeration_to_json(const Enumeration& e);

/// Intensity coefficients a[-d..d] from {"intensity": [[re, im], ...]}
/// (centered, odd length) or {"intensity": {"offset": -d, "coeffs": ...}}.
TrigPoly intensity_from_json(const json& j);

}  // namespace interfero
