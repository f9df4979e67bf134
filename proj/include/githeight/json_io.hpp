#pragma once

#include <json.hpp>

#include <string>

#include "githeight/configuration.hpp"
#include "githeight/decompose.hpp"
#include "githeight/duality.hpp"
#include "githeight/heights.hpp"
#include "githeight/stability.hpp"

namespace githeight {

using Json = nlohmann::ordered_json;

/// Parsed input file: configuration plus optional height options.
struct ConfigFile {
    Configuration config;
    HeightOptions options;
};

/// Schema:
/// {
///   "ambient": N,
///   "points": [{"vector": ["p/q", ...], "multiplicity": "p/q"}, ...],
///   "options": {"mc_samples":..., "seed":..., "tol":..., "search_depth":...}
/// }
/// Rationals are strings; unknown fields are rejected. Throws ParseError
/// with the offending field path.
ConfigFile parse_config_file(const std::string& text);
ConfigFile load_config_file(const std::string& path);

Json config_to_json(const Configuration& config);
Json verdict_to_json(const StabilityVerdict& verdict);
Json decomposition_to_json(const BasisDecomposition& dec);
Json height_to_json(const HeightEstimate& est);
Json dual_constant_to_json(const DualConstant& dc);
Json suite_to_json(const SuiteReport& rep);
Json subadditivity_to_json(const SubadditivityReport& rep);

} // namespace githeight
