#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "aerogrid/scenario.hpp"

namespace aerogrid {

/// Raw irradiance samples for one airport: (minute of day, W/m^2),
/// strictly increasing in time.
struct RawIrradiance {
  std::map<std::string, std::vector<std::pair<double, double>>> by_airport;
};

/// Loads, validates and normalizes a scenario JSON file.
/// Throws Error with file/field context on parse or invariant failures.
Scenario load_scenario(const std::string& path);
Scenario load_scenario_string(const std::string& text, const std::string& origin = "<string>");

/// Serializes a Scenario back to the schema accepted by load_scenario.
/// load_scenario_string(serialize_scenario(s)) == s.
std::string serialize_scenario(const Scenario& scenario);

/// Parses the irradiance CSV (header `timestamp,<airport_id>...`, ISO-8601
/// local timestamps, W/m^2 values).
RawIrradiance load_irradiance_csv(const std::string& path);
RawIrradiance parse_irradiance_csv(std::istream& in, const std::string& origin);

/// Linear interpolation of raw samples onto the day grid (one value per step,
/// evaluated at the step start), clamped at 0. Gaps wider than 2*dt between
/// consecutive samples, or at the day edges, are coverage errors.
IrradianceSeries resample_irradiance(const RawIrradiance& raw, const TimeGrid& grid);

}  // namespace aerogrid
