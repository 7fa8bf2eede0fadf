// Copyright 2026 The sqotto Authors
// SPDX-License-Identifier: Apache-2.0

#include "sqotto/scenario.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

#include "sqotto/constants.hpp"
#include "sqotto/errors.hpp"

namespace sqotto {

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& raw)
{
    const std::string v = trim(raw);
    char* end = nullptr;
    const double d = std::strtod(v.c_str(), &end);
    if (v.empty() || end != v.c_str() + v.size() || !std::isfinite(d))
        throw ConfigError(fmt::format("{}: not a number: '{}'", key, raw));
    return d;
}

long long parse_integer(const std::string& key, const std::string& raw)
{
    const std::string v = trim(raw);
    char* end = nullptr;
    const long long n = std::strtoll(v.c_str(), &end, 10);
    if (v.empty() || end != v.c_str() + v.size())
        throw ConfigError(fmt::format("{}: not an integer: '{}'", key, raw));
    return n;
}

std::size_t parse_count(const std::string& key, const std::string& raw)
{
    const long long n = parse_integer(key, raw);
    if (n <= 0)
        throw ConfigError(fmt::format("{}: must be positive", key));
    return static_cast<std::size_t>(n);
}

std::vector<double> parse_list(const std::string& key, const std::string& raw)
{
    std::vector<double> out;
    std::stringstream ss(raw);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(parse_double(key, item));
    if (out.empty())
        throw ConfigError(fmt::format("{}: empty list", key));
    return out;
}

using Setter = std::function<void(Scenario&, const std::string&, const std::string&)>;

const std::map<std::string, Setter>& setters()
{
    static const std::map<std::string, Setter> table = {
        {"trap.omega_ax_2pi_khz",
         [](Scenario& s, const auto& k, const auto& v) { s.geom.omega_ax = two_pi * 1e3 * parse_double(k, v); }},
        {"trap.omega_rad0_2pi_mhz",
         [](Scenario& s, const auto& k, const auto& v) { s.geom.omega_rad0 = two_pi * 1e6 * parse_double(k, v); }},
        {"trap.taper_angle_deg",
         [](Scenario& s, const auto& k, const auto& v) { s.geom.theta = parse_double(k, v) * pi / 180.0; }},
        {"trap.r0_mm", [](Scenario& s, const auto& k, const auto& v) { s.geom.r0 = 1e-3 * parse_double(k, v); }},
        {"trap.ion_mass_kg", [](Scenario& s, const auto& k, const auto& v) { s.geom.ion_mass = parse_double(k, v); }},
        {"trap.a_max_mm", [](Scenario& s, const auto& k, const auto& v) { s.geom.a_max = 1e-3 * parse_double(k, v); }},
        {"baths.t_cold_mk", [](Scenario& s, const auto& k, const auto& v) { s.t_cold = 1e-3 * parse_double(k, v); }},
        {"baths.beta_ratio", [](Scenario& s, const auto& k, const auto& v) { s.beta_ratio = parse_double(k, v); }},
        {"baths.gamma_per_s", [](Scenario& s, const auto& k, const auto& v) { s.gamma = parse_double(k, v); }},
        {"baths.gamma_t", [](Scenario& s, const auto& k, const auto& v) { s.gamma_t = parse_double(k, v); }},
        {"analytic.beta_ratios", [](Scenario& s, const auto& k, const auto& v) { s.beta_ratios = parse_list(k, v); }},
        {"analytic.r_max", [](Scenario& s, const auto& k, const auto& v) { s.r_max = parse_double(k, v); }},
        {"analytic.r_points",
         [](Scenario& s, const auto& k, const auto& v) { s.r_points = static_cast<int>(parse_count(k, v)); }},
        {"analytic.table_r", [](Scenario& s, const auto& k, const auto& v) { s.table_r = parse_list(k, v); }},
        {"simulation.ensemble", [](Scenario& s, const auto& k, const auto& v) { s.ensemble = parse_count(k, v); }},
        {"simulation.repetitions",
         [](Scenario& s, const auto& k, const auto& v) { s.repetitions = static_cast<int>(parse_count(k, v)); }},
        {"simulation.steps_per_period",
         [](Scenario& s, const auto& k, const auto& v) { s.steps_per_period = static_cast<int>(parse_count(k, v)); }},
        {"simulation.trace_decimation",
         [](Scenario& s, const auto& k, const auto& v) { s.trace_decimation = static_cast<long long>(parse_count(k, v)); }},
        {"simulation.r_targets", [](Scenario& s, const auto& k, const auto& v) { s.r_targets = parse_list(k, v); }},
        {"simulation.cycle_r", [](Scenario& s, const auto& k, const auto& v) { s.cycle_r = parse_double(k, v); }},
        {"simulation.frequency_ratio",
         [](Scenario& s, const auto& k, const auto& v) {
             if (trim(v).empty() || trim(v) == "optimal")
                 s.frequency_ratio.reset();
             else
                 s.frequency_ratio = parse_double(k, v);
         }},
        {"calibration.ensemble",
         [](Scenario& s, const auto& k, const auto& v) { s.calibration_ensemble = parse_count(k, v); }},
        {"calibration.delta_omega_fractions",
         [](Scenario& s, const auto& k, const auto& v) { s.delta_omega_fractions = parse_list(k, v); }},
        {"calibration.z_anchor_mm",
         [](Scenario& s, const auto& k, const auto& v) { s.z_anchor = 1e-3 * parse_double(k, v); }},
        {"run.seed",
         [](Scenario& s, const auto& k, const auto& v) {
             const long long n = parse_integer(k, v);
             if (n < 0)
                 throw ConfigError("run.seed must be non-negative");
             s.seed = static_cast<std::uint64_t>(n);
         }},
    };
    return table;
}

std::string join(const std::vector<double>& values)
{
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i)
        out += fmt::format("{}{:.17g}", i ? "," : "", values[i]);
    return out;
}

Scenario from_stream(std::istream& in)
{
    boost::property_tree::ptree tree;
    try {
        boost::property_tree::ini_parser::read_ini(in, tree);
    } catch (const boost::property_tree::ini_parser_error& e) {
        throw ConfigError(fmt::format("malformed config: {}", e.message()));
    }
    Scenario s;
    const auto& table = setters();
    for (const auto& [section, body] : tree) {
        if (!body.data().empty())
            throw ConfigError(fmt::format("key '{}' outside a section", section));
        for (const auto& [key, value] : body) {
            const std::string full = section + "." + key;
            const auto it = table.find(full);
            if (it == table.end())
                throw ConfigError(fmt::format("unknown config key '{}'", full));
            it->second(s, full, value.data());
        }
    }
    s.validate();
    return s;
}

}  // namespace

void Scenario::validate() const
{
    try {
        geom.validate();
    } catch (const std::exception& e) {
        throw ConfigError(e.what());
    }
    if (!(t_cold > 0.0))
        throw ConfigError("baths.t_cold_mk must be positive");
    if (!(beta_ratio > 0.0 && beta_ratio < 1.0))
        throw ConfigError("baths.beta_ratio must lie in (0, 1)");
    if (!(gamma > 0.0) || !(gamma_t > 0.0))
        throw ConfigError("baths.gamma_per_s and baths.gamma_t must be positive");
    if (beta_ratios.empty() || table_r.empty() || r_targets.empty() || delta_omega_fractions.empty())
        throw ConfigError("grids must be non-empty");
    for (double b : beta_ratios)
        if (!(b > 0.0 && b < 1.0))
            throw ConfigError("analytic.beta_ratios entries must lie in (0, 1)");
    if (!(r_max >= 0.0) || r_points < 2)
        throw ConfigError("analytic.r_max must be >= 0 and r_points >= 2");
    for (double r : table_r)
        if (!(r >= 0.0))
            throw ConfigError("analytic.table_r entries must be >= 0");
    for (double r : r_targets)
        if (!(r >= 0.0 && r < 0.6))
            throw ConfigError("simulation.r_targets entries must lie in [0, 0.6)");
    if (!(cycle_r >= 0.0 && cycle_r < 0.6))
        throw ConfigError("simulation.cycle_r must lie in [0, 0.6)");
    if (frequency_ratio && !(*frequency_ratio >= 1.0))
        throw ConfigError("simulation.frequency_ratio must be >= 1");
    if (ensemble < 100 || calibration_ensemble < 100)
        throw ConfigError("ensembles need at least 100 trajectories");
    if (repetitions < 1)
        throw ConfigError("simulation.repetitions must be >= 1");
    if (steps_per_period < 100)
        throw ConfigError("simulation.steps_per_period must be >= 100");
    for (double f : delta_omega_fractions)
        if (!(f >= 0.0 && f < 1.0))
            throw ConfigError("calibration.delta_omega_fractions entries must lie in [0, 1)");
    if (!(std::abs(z_anchor) <= geom.a_max))
        throw ConfigError("calibration.z_anchor_mm must lie within a_max");
}

std::uint64_t Scenario::require_seed() const
{
    if (!seed)
        throw ConfigError("seed is mandatory for simulate and calibrate (run.seed or --seed)");
    return *seed;
}

std::string Scenario::canonical() const
{
    std::string out;
    const auto put = [&out](std::string_view key, const std::string& value) {
        out += fmt::format("{} = {}\n", key, value);
    };
    const auto num = [](double v) { return fmt::format("{:.17g}", v); };
    put("trap.omega_ax", num(geom.omega_ax));
    put("trap.omega_rad0", num(geom.omega_rad0));
    put("trap.theta", num(geom.theta));
    put("trap.r0", num(geom.r0));
    put("trap.ion_mass", num(geom.ion_mass));
    put("trap.a_max", num(geom.a_max));
    put("baths.t_cold", num(t_cold));
    put("baths.beta_ratio", num(beta_ratio));
    put("baths.gamma", num(gamma));
    put("baths.gamma_t", num(gamma_t));
    put("analytic.beta_ratios", join(beta_ratios));
    put("analytic.r_max", num(r_max));
    put("analytic.r_points", std::to_string(r_points));
    put("analytic.table_r", join(table_r));
    put("simulation.ensemble", std::to_string(ensemble));
    put("simulation.repetitions", std::to_string(repetitions));
    put("simulation.steps_per_period", std::to_string(steps_per_period));
    put("simulation.trace_decimation", std::to_string(trace_decimation));
    put("simulation.r_targets", join(r_targets));
    put("simulation.cycle_r", num(cycle_r));
    put("simulation.frequency_ratio", frequency_ratio ? num(*frequency_ratio) : "optimal");
    put("calibration.ensemble", std::to_string(calibration_ensemble));
    put("calibration.delta_omega_fractions", join(delta_omega_fractions));
    put("calibration.z_anchor", num(z_anchor));
    put("run.seed", seed ? std::to_string(*seed) : "none");
    return out;
}

std::string Scenario::hash() const
{
    return fmt::format("{:016x}", fnv1a64(canonical()));
}

std::uint64_t fnv1a64(const std::string& bytes) noexcept
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

Scenario load_scenario(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError(fmt::format("cannot open config '{}'", path));
    return from_stream(in);
}

Scenario parse_scenario(const std::string& text)
{
    std::istringstream in(text);
    return from_stream(in);
}

std::string resolve_output_dir(const std::optional<std::string>& explicit_dir)
{
    if (explicit_dir && !explicit_dir->empty())
        return *explicit_dir;
    if (const char* env = std::getenv("SQOTTO_OUTPUT_DIR"); env && *env)
        return env;
    return "sqotto_out";
}

}  // namespace sqotto
