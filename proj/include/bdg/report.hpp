#pragma once

#include "bdg/concavity_scan.hpp"
#include "bdg/constant_conditions.hpp"
#include "bdg/extrapolation.hpp"
#include "bdg/inequality_lab.hpp"
#include "bdg/smooth_space.hpp"

#include <json.hpp>

#include <string>

namespace bdg::report {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// "%.15g", locale independent.
std::string format_number(double x);
/// x rounded to 15 significant digits; non-finite values pass through.
double round15(double x);

/// {"schema": 1, "command": command}.
Json envelope(const std::string& command);
/// Two-space indented dump with a trailing newline.
std::string dump(const Json& j);

Json to_json(const smooth::SpaceDescriptor& space);
Json to_json(const smooth::ConstantRelations& rel);
Json to_json(const smooth::PsiLemmaReport& rep);
Json to_json(const bellman::ScanReport& rep);
Json to_json(const conditions::CurveSummary& s);
Json to_json(const lab::RatioReport& rep);
Json to_json(const lab::TelescopingReport& rep);
Json to_json(const lab::FleetReport& rep);
Json to_json(const lab::SearchReport& rep);
Json to_json(const extrap::ChainReport& rep);
Json to_json(const extrap::VectorBdgReport& rep);

/// Regression instance {config, leaf_values, weights, expected_ratio}.
Json search_fixture(const lab::SearchReport& rep);

/// Space descriptor from its JSON record; constants are taken as stored.
smooth::SpaceDescriptor space_from_json(const Json& j);

} // namespace bdg::report
