#include "aerogrid/scenario_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "aerogrid/error.hpp"

namespace aerogrid {

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

int line_of_byte(const std::string& text, std::size_t byte) {
  int line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i)
    if (text[i] == '\n') ++line;
  return line;
}

const json& require(const json& obj, const char* key, const std::string& ctx) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(ctx + ": missing required field '" + key + "'");
  return *it;
}

double get_num(const json& obj, const char* key, const std::string& ctx) {
  const json& v = require(obj, key, ctx);
  if (!v.is_number()) fail(ctx + "." + key + ": expected a number");
  return v.get<double>();
}

double get_num_or(const json& obj, const char* key, const std::string& ctx, double fallback) {
  auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_number()) fail(ctx + "." + key + ": expected a number");
  return it->get<double>();
}

int get_int(const json& obj, const char* key, const std::string& ctx) {
  const json& v = require(obj, key, ctx);
  if (!v.is_number_integer()) fail(ctx + "." + key + ": expected an integer");
  return v.get<int>();
}

int get_int_or(const json& obj, const char* key, const std::string& ctx, int fallback) {
  auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  if (!it->is_number_integer()) fail(ctx + "." + key + ": expected an integer");
  return it->get<int>();
}

std::string get_str(const json& obj, const char* key, const std::string& ctx) {
  const json& v = require(obj, key, ctx);
  if (!v.is_string()) fail(ctx + "." + key + ": expected a string");
  return v.get<std::string>();
}

Scenario scenario_from_json(const json& doc, const std::string& origin) {
  if (!doc.is_object()) fail(origin + ": top level must be a JSON object");
  Scenario s;

  {
    const json& t = require(doc, "time", origin);
    const std::string ctx = "time";
    s.time_grid.dt_minutes = get_int(t, "dt_minutes", ctx);
    const int derived = s.time_grid.dt_minutes > 0 ? (24 * 60) / s.time_grid.dt_minutes : 0;
    s.time_grid.day_steps = get_int_or(t, "day_steps", ctx, derived);
    s.time_grid.ops_start_index = get_int_or(t, "ops_start_index", ctx, 0);
    s.time_grid.ops_end_index = get_int_or(t, "ops_end_index", ctx, s.time_grid.day_steps);
  }

  const json& airports = require(doc, "airports", origin);
  if (!airports.is_array()) fail("airports: expected an array");
  for (std::size_t i = 0; i < airports.size(); ++i) {
    const json& a = airports[i];
    const std::string ctx = "airports[" + std::to_string(i) + "]";
    AirportSpec spec;
    spec.id = get_str(a, "id", ctx);
    spec.solar_area_m2 = get_num_or(a, "solar_area_m2", ctx, 0.0);
    spec.solar_efficiency = get_num_or(a, "solar_efficiency", ctx, 1.0);
    spec.bess_capacity_kwh = get_num_or(a, "bess_capacity_kwh", ctx, 0.0);
    spec.bess_min_kwh = get_num_or(a, "bess_min_kwh", ctx, 0.0);
    spec.bess_power_min_kw = get_num_or(a, "bess_power_min_kw", ctx, 0.0);
    spec.bess_power_max_kw = get_num_or(a, "bess_power_max_kw", ctx, 0.0);
    spec.bess_efficiency = get_num_or(a, "bess_efficiency", ctx, 1.0);
    spec.apron_power_max_kw = get_num_or(a, "apron_power_max_kw", ctx, 0.0);
    spec.aux_power_kw = get_num_or(a, "aux_power_kw", ctx, 0.0);
    spec.bess_init_soc_frac = get_num_or(a, "bess_init_soc_frac", ctx, 0.5);
    s.airports.push_back(std::move(spec));
  }

  const json& fleet = require(doc, "fleet", origin);
  if (!fleet.is_array()) fail("fleet: expected an array");
  for (std::size_t i = 0; i < fleet.size(); ++i) {
    const json& p = fleet[i];
    const std::string ctx = "fleet[" + std::to_string(i) + "]";
    AircraftSpec spec;
    spec.id = get_str(p, "id", ctx);
    spec.mass_kg = get_num(p, "mass_kg", ctx);
    spec.lift_over_drag = get_num(p, "lift_over_drag", ctx);
    spec.eta_takeoff = get_num(p, "eta_takeoff", ctx);
    spec.eta_cruise = get_num(p, "eta_cruise", ctx);
    spec.cruise_altitude_m = get_num(p, "cruise_altitude_m", ctx);
    spec.battery_capacity_kwh = get_num(p, "battery_capacity_kwh", ctx);
    spec.charge_power_max_kw = get_num(p, "charge_power_max_kw", ctx);
    spec.initial_energy_kwh = get_num(p, "initial_energy_kwh", ctx);
    if (p.contains("min_final_energy_kwh") && !p["min_final_energy_kwh"].is_null())
      spec.min_final_energy_kwh = get_num(p, "min_final_energy_kwh", ctx);
    spec.origin_airport = get_str(p, "origin_airport", ctx);
    spec.destination_airport = get_str(p, "destination_airport", ctx);
    s.fleet.push_back(std::move(spec));
  }

  const json& flights = require(doc, "flights", origin);
  if (!flights.is_array()) fail("flights: expected an array");
  for (std::size_t i = 0; i < flights.size(); ++i) {
    const json& f = flights[i];
    const std::string ctx = "flights[" + std::to_string(i) + "]";
    FlightConnection fc;
    fc.id = get_str(f, "id", ctx);
    fc.origin = get_str(f, "origin", ctx);
    fc.destination = get_str(f, "destination", ctx);
    fc.distance_km = get_num(f, "distance_km", ctx);
    fc.block_time_minutes = get_num(f, "block_time_minutes", ctx);
    fc.demand_per_day = get_int_or(f, "demand_per_day", ctx, 0);
    s.flights.push_back(std::move(fc));
  }

  if (doc.contains("demand")) {
    const json& demand = doc["demand"];
    if (!demand.is_object()) fail("demand: expected an object mapping flight id to daily demand");
    for (auto it = demand.begin(); it != demand.end(); ++it) {
      const int fi = s.flight_index(it.key());
      if (fi < 0) fail("demand references undeclared flight '" + it.key() + "'");
      if (!it.value().is_number_integer())
        fail("demand['" + it.key() + "']: demand must be an integer, fractional values are rejected");
      s.flights[fi].demand_per_day = it.value().get<int>();
    }
  }

  s.k_max = get_int_or(doc, "k_max", origin, 1);

  if (doc.contains("fixed_schedule")) {
    const json& fs = doc["fixed_schedule"];
    if (!fs.is_array()) fail("fixed_schedule: expected an array");
    for (std::size_t i = 0; i < fs.size(); ++i) {
      const json& m = fs[i];
      const std::string ctx = "fixed_schedule[" + std::to_string(i) + "]";
      FixedMovement mv;
      mv.flight_id = get_str(m, "flight", ctx);
      mv.departure_step = get_int(m, "departure_step", ctx);
      if (m.contains("aircraft") && !m["aircraft"].is_null())
        mv.aircraft_id = get_str(m, "aircraft", ctx);
      s.fixed_schedule.push_back(std::move(mv));
    }
  }

  if (doc.contains("irradiance")) {
    const json& irr = doc["irradiance"];
    if (!irr.is_object()) fail("irradiance: expected an object mapping airport id to a value array");
    for (auto it = irr.begin(); it != irr.end(); ++it) {
      if (!it.value().is_array()) fail("irradiance['" + it.key() + "']: expected an array");
      std::vector<double> series;
      series.reserve(it.value().size());
      for (const auto& v : it.value()) {
        if (!v.is_number()) fail("irradiance['" + it.key() + "']: expected numbers");
        series.push_back(v.get<double>());
      }
      s.irradiance.by_airport[it.key()] = std::move(series);
    }
  }

  s.validate();
  return s;
}

}  // namespace

Scenario load_scenario_string(const std::string& text, const std::string& origin) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(origin + ":" + std::to_string(line_of_byte(text, e.byte)) + ": " + e.what());
  }
  return scenario_from_json(doc, origin);
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open scenario file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_scenario_string(buf.str(), path);
}

std::string serialize_scenario(const Scenario& s) {
  ordered_json doc;
  doc["time"] = {{"dt_minutes", s.time_grid.dt_minutes},
                 {"day_steps", s.time_grid.day_steps},
                 {"ops_start_index", s.time_grid.ops_start_index},
                 {"ops_end_index", s.time_grid.ops_end_index}};
  doc["airports"] = ordered_json::array();
  for (const auto& a : s.airports) {
    doc["airports"].push_back({{"id", a.id},
                               {"solar_area_m2", a.solar_area_m2},
                               {"solar_efficiency", a.solar_efficiency},
                               {"bess_capacity_kwh", a.bess_capacity_kwh},
                               {"bess_min_kwh", a.bess_min_kwh},
                               {"bess_power_min_kw", a.bess_power_min_kw},
                               {"bess_power_max_kw", a.bess_power_max_kw},
                               {"bess_efficiency", a.bess_efficiency},
                               {"apron_power_max_kw", a.apron_power_max_kw},
                               {"aux_power_kw", a.aux_power_kw},
                               {"bess_init_soc_frac", a.bess_init_soc_frac}});
  }
  doc["fleet"] = ordered_json::array();
  for (const auto& p : s.fleet) {
    ordered_json j = {{"id", p.id},
                      {"mass_kg", p.mass_kg},
                      {"lift_over_drag", p.lift_over_drag},
                      {"eta_takeoff", p.eta_takeoff},
                      {"eta_cruise", p.eta_cruise},
                      {"cruise_altitude_m", p.cruise_altitude_m},
                      {"battery_capacity_kwh", p.battery_capacity_kwh},
                      {"charge_power_max_kw", p.charge_power_max_kw},
                      {"initial_energy_kwh", p.initial_energy_kwh},
                      {"origin_airport", p.origin_airport},
                      {"destination_airport", p.destination_airport}};
    if (p.min_final_energy_kwh) j["min_final_energy_kwh"] = *p.min_final_energy_kwh;
    doc["fleet"].push_back(std::move(j));
  }
  doc["flights"] = ordered_json::array();
  for (const auto& f : s.flights) {
    doc["flights"].push_back({{"id", f.id},
                              {"origin", f.origin},
                              {"destination", f.destination},
                              {"distance_km", f.distance_km},
                              {"block_time_minutes", f.block_time_minutes}});
  }
  ordered_json demand = ordered_json::object();
  for (const auto& f : s.flights) demand[f.id] = f.demand_per_day;
  doc["demand"] = std::move(demand);
  doc["k_max"] = s.k_max;
  if (!s.fixed_schedule.empty()) {
    doc["fixed_schedule"] = ordered_json::array();
    for (const auto& m : s.fixed_schedule) {
      ordered_json j = {{"flight", m.flight_id}, {"departure_step", m.departure_step}};
      j["aircraft"] = m.aircraft_id ? ordered_json(*m.aircraft_id) : ordered_json(nullptr);
      doc["fixed_schedule"].push_back(std::move(j));
    }
  }
  if (!s.irradiance.by_airport.empty()) {
    ordered_json irr = ordered_json::object();
    for (const auto& [id, series] : s.irradiance.by_airport) irr[id] = series;
    doc["irradiance"] = std::move(irr);
  }
  return doc.dump(2) + "\n";
}

namespace {

// Minute of day from an ISO-8601 local timestamp ("2023-08-19T06:30:00"),
// or a bare "HH:MM[:SS]".
double parse_minute_of_day(const std::string& stamp, const std::string& origin, int line) {
  std::string t = stamp;
  if (auto pos = t.find('T'); pos != std::string::npos) t = t.substr(pos + 1);
  int hh = 0, mm = 0;
  double ss = 0.0;
  char c1 = 0, c2 = 0;
  std::istringstream is(t);
  is >> hh >> c1 >> mm;
  if (!is || c1 != ':' || hh < 0 || hh > 24 || mm < 0 || mm > 59)
    fail(origin + ":" + std::to_string(line) + ": bad timestamp '" + stamp + "'");
  if (is.peek() == ':') {
    is >> c2 >> ss;
    if (!is || ss < 0 || ss >= 60)
      fail(origin + ":" + std::to_string(line) + ": bad timestamp '" + stamp + "'");
  }
  return hh * 60.0 + mm + ss / 60.0;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream is(line);
  while (std::getline(is, field, ',')) {
    while (!field.empty() && (field.back() == '\r' || field.back() == ' ')) field.pop_back();
    std::size_t b = field.find_first_not_of(' ');
    out.push_back(b == std::string::npos ? "" : field.substr(b));
  }
  return out;
}

}  // namespace

RawIrradiance parse_irradiance_csv(std::istream& in, const std::string& origin) {
  std::string line;
  if (!std::getline(in, line)) fail(origin + ": empty irradiance file");
  auto header = split_csv_line(line);
  if (header.size() < 2 || header[0] != "timestamp")
    fail(origin + ":1: header must be 'timestamp,<airport_id>...'");
  std::vector<std::string> ids(header.begin() + 1, header.end());

  RawIrradiance raw;
  for (const auto& id : ids) raw.by_airport[id];

  int lineno = 1;
  double prev_minute = -1.0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    auto fields = split_csv_line(line);
    if (fields.size() != header.size())
      fail(origin + ":" + std::to_string(lineno) + ": expected " + std::to_string(header.size()) +
           " fields, got " + std::to_string(fields.size()));
    const double minute = parse_minute_of_day(fields[0], origin, lineno);
    if (minute <= prev_minute)
      fail(origin + ":" + std::to_string(lineno) + ": timestamps must be strictly increasing");
    prev_minute = minute;
    for (std::size_t i = 0; i < ids.size(); ++i) {
      double v = 0.0;
      try {
        v = std::stod(fields[i + 1]);
      } catch (const std::exception&) {
        fail(origin + ":" + std::to_string(lineno) + ": bad value '" + fields[i + 1] + "'");
      }
      if (v < 0)
        fail(origin + ":" + std::to_string(lineno) + ": negative irradiance for '" + ids[i] + "'");
      raw.by_airport[ids[i]].emplace_back(minute, v);
    }
  }
  return raw;
}

RawIrradiance load_irradiance_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open irradiance file '" + path + "'");
  return parse_irradiance_csv(in, path);
}

IrradianceSeries resample_irradiance(const RawIrradiance& raw, const TimeGrid& grid) {
  grid.validate();
  IrradianceSeries out;
  for (const auto& [id, samples] : raw.by_airport) {
    if (samples.empty()) fail("irradiance for '" + id + "': no samples");
    // Coverage is judged against the data's own cadence: holes wider than
    // two nominal sample intervals (or two grid steps, whichever is larger)
    // are errors, so hourly data on a 10-minute grid stays valid.
    double nominal = grid.dt_minutes;
    if (samples.size() >= 2) {
      std::vector<double> spacing;
      spacing.reserve(samples.size() - 1);
      for (std::size_t i = 1; i < samples.size(); ++i)
        spacing.push_back(samples[i].first - samples[i - 1].first);
      std::nth_element(spacing.begin(), spacing.begin() + spacing.size() / 2, spacing.end());
      nominal = std::max(nominal, spacing[spacing.size() / 2]);
    }
    const double max_gap = 2.0 * nominal;
    if (samples.front().first > max_gap)
      fail("irradiance for '" + id + "': coverage gap of " + std::to_string(samples.front().first) +
           " min at the start of the day exceeds 2*dt");
    if (24.0 * 60.0 - samples.back().first > max_gap)
      fail("irradiance for '" + id + "': coverage gap at the end of the day exceeds 2*dt");
    for (std::size_t i = 1; i < samples.size(); ++i) {
      if (samples[i].first - samples[i - 1].first > max_gap)
        fail("irradiance for '" + id + "': coverage gap of " +
             std::to_string(samples[i].first - samples[i - 1].first) + " min before minute " +
             std::to_string(samples[i].first) + " exceeds 2*dt");
    }

    std::vector<double> series(grid.day_steps, 0.0);
    std::size_t seg = 0;
    for (int s = 0; s < grid.day_steps; ++s) {
      const double t = static_cast<double>(s) * grid.dt_minutes;
      while (seg + 1 < samples.size() && samples[seg + 1].first <= t) ++seg;
      double v;
      if (t <= samples.front().first) {
        v = samples.front().second;
      } else if (seg + 1 >= samples.size()) {
        v = samples.back().second;
      } else {
        const auto& [t0, v0] = samples[seg];
        const auto& [t1, v1] = samples[seg + 1];
        v = v0 + (v1 - v0) * (t - t0) / (t1 - t0);
      }
      series[s] = std::max(0.0, v);
    }
    out.by_airport[id] = std::move(series);
  }
  return out;
}

}  // namespace aerogrid
