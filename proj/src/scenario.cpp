#include "sqzprm/scenario.hpp"

#include "presets_generated.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

namespace sqzprm
{
namespace
{

constexpr double kMilliwatt = 1e-3;

struct Entry
{
    std::string value;
    std::size_t line = 0;
    bool used = false;
};

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

class KeyValues
{
public:
    explicit KeyValues(std::string_view text)
    {
        std::size_t line_no = 0;
        std::size_t pos = 0;
        while (pos <= text.size()) {
            const auto end = std::min(text.find('\n', pos), text.size());
            std::string_view line = text.substr(pos, end - pos);
            pos = end + 1;
            ++line_no;

            if (const auto hash = line.find('#'); hash != std::string_view::npos)
                line = line.substr(0, hash);
            line = trim(line);
            if (line.empty())
                continue;
            const auto eq = line.find('=');
            if (eq == std::string_view::npos)
                throw ScenarioError("", line_no, "expected 'key = value'");
            const std::string key(trim(line.substr(0, eq)));
            const std::string value(trim(line.substr(eq + 1)));
            if (key.empty())
                throw ScenarioError("", line_no, "missing key before '='");
            if (value.empty())
                throw ScenarioError(key, line_no, "missing value");
            if (entries_.contains(key))
                throw ScenarioError(key, line_no, "duplicate key (first set on line " +
                                                      std::to_string(entries_[key].line) + ")");
            entries_[key] = {value, line_no, false};
        }
    }

    const Entry* find(const std::string& key)
    {
        auto it = entries_.find(key);
        if (it == entries_.end())
            return nullptr;
        it->second.used = true;
        return &it->second;
    }

    const Entry& require(const std::string& key)
    {
        const Entry* e = find(key);
        if (!e)
            throw ScenarioError(key, 0, "required key is missing");
        return *e;
    }

    void reject_unknown() const
    {
        for (const auto& [key, entry] : entries_)
            if (!entry.used)
                throw ScenarioError(key, entry.line, "unknown key");
    }

private:
    std::map<std::string, Entry> entries_;
};

double to_number(const std::string& key, const Entry& e)
{
    double value = 0.0;
    const char* first = e.value.data();
    const char* last = first + e.value.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || !std::isfinite(value))
        throw ScenarioError(key, e.line, "expected a finite number, got '" + e.value + "'");
    return value;
}

double number(KeyValues& kv, const std::string& key)
{
    return to_number(key, kv.require(key));
}

double number_or(KeyValues& kv, const std::string& key, double fallback)
{
    const Entry* e = kv.find(key);
    return e ? to_number(key, *e) : fallback;
}

// "auto" (or absent) maps to nullopt.
std::optional<double> number_or_auto(KeyValues& kv, const std::string& key)
{
    const Entry* e = kv.find(key);
    if (!e || e->value == "auto")
        return std::nullopt;
    return to_number(key, *e);
}

std::size_t line_of(KeyValues& kv, const std::string& key)
{
    const Entry* e = kv.find(key);
    return e ? e->line : 0;
}

void check(bool ok, KeyValues& kv, const std::string& key, const std::string& what)
{
    if (!ok)
        throw ScenarioError(key, line_of(kv, key), what);
}

void check_fraction(KeyValues& kv, const std::string& key, double v)
{
    check(v >= 0.0 && v <= 1.0, kv, key, "must lie in [0, 1], got " + std::to_string(v));
}

}  // namespace

ScenarioError::ScenarioError(std::string field, std::size_t line, const std::string& message)
    : std::runtime_error([&] {
          std::string where = line > 0 ? "line " + std::to_string(line) : std::string();
          if (!field.empty())
              where += (where.empty() ? "" : ", ") + std::string("field '") + field + "'";
          return where.empty() ? message : where + ": " + message;
      }()),
      field_(std::move(field)),
      line_(line)
{
}

Scenario parse_scenario(std::string_view text)
{
    KeyValues kv(text);
    Scenario sc;
    InterferometerConfig& cfg = sc.config;

    sc.name = kv.require("name").value;

    const double input_mw = number(kv, "input_power_mw");
    check(input_mw > 0.0, kv, "input_power_mw", "must be positive");
    cfg.input_power = input_mw * kMilliwatt;

    const double dark_mw = number(kv, "target_dark_power_mw");
    check(dark_mw >= 0.0, kv, "target_dark_power_mw", "must be non-negative");
    cfg.target_dark_power = dark_mw * kMilliwatt;

    MirrorSpec mirror;
    mirror.power_reflectivity = number(kv, "power_mirror_reflectivity");
    check_fraction(kv, "power_mirror_reflectivity", mirror.power_reflectivity);
    mirror.power_loss = number_or(kv, "power_mirror_loss", 0.0);
    check_fraction(kv, "power_mirror_loss", mirror.power_loss);
    check(mirror.transmissivity() >= 0.0, kv, "power_mirror_loss", "reflectivity + loss exceeds 1");
    cfg.power_mirror = mirror;

    cfg.cavity_length = number(kv, "cavity_length_m");
    check(cfg.cavity_length > 0.0, kv, "cavity_length_m", "must be positive");

    const Entry& loss = kv.require("round_trip_loss");
    if (loss.value == "fit") {
        const double gain = number(kv, "target_recycling_gain");
        check(gain > 0.0, kv, "target_recycling_gain", "must be positive");
        cfg.round_trip_loss = RoundTripLoss::fitted(gain);
    } else {
        const double fraction = to_number("round_trip_loss", loss);
        if (!(fraction >= 0.0 && fraction <= 1.0))
            throw ScenarioError("round_trip_loss", loss.line, "must be 'fit' or a fraction in [0, 1]");
        cfg.round_trip_loss = RoundTripLoss::fixed(fraction);
        if (kv.find("target_recycling_gain"))
            throw ScenarioError("target_recycling_gain", line_of(kv, "target_recycling_gain"),
                                "only allowed with round_trip_loss = fit");
    }

    cfg.arm_efficiency = number_or(kv, "arm_efficiency", 1.0);
    check_fraction(kv, "arm_efficiency", cfg.arm_efficiency);
    cfg.rotator_double_pass_loss = number_or(kv, "rotator_double_pass_loss", 0.0);
    check_fraction(kv, "rotator_double_pass_loss", cfg.rotator_double_pass_loss);

    cfg.homodyne.quantum_efficiency = number_or(kv, "homodyne_quantum_efficiency", 1.0);
    check_fraction(kv, "homodyne_quantum_efficiency", cfg.homodyne.quantum_efficiency);
    cfg.homodyne.fringe_visibility = number_or(kv, "homodyne_fringe_visibility", 1.0);
    check_fraction(kv, "homodyne_fringe_visibility", cfg.homodyne.fringe_visibility);

    SqueezeSpec squeeze;
    squeeze.suppression_db = number_or(kv, "squeeze_db", 0.0);
    check(squeeze.suppression_db >= 0.0, kv, "squeeze_db", "must be non-negative");
    squeeze.angle = number_or(kv, "squeeze_angle_rad", 0.0);
    cfg.squeeze = squeeze;

    if (const Entry* ref = kv.find("squeeze_reference")) {
        if (ref->value == "source")
            cfg.squeeze_reference = SqueezeReference::source;
        else if (ref->value == "detected")
            cfg.squeeze_reference = SqueezeReference::detected;
        else
            throw ScenarioError("squeeze_reference", ref->line, "must be 'source' or 'detected'");
    }
    if (cfg.squeeze_reference == SqueezeReference::detected) {
        const double eta = cfg.homodyne.quantum_efficiency * cfg.homodyne.fringe_visibility *
                           cfg.homodyne.fringe_visibility;
        const double seen = db_to_linear({-squeeze.suppression_db});
        check(eta > 0.0 && seen > 1.0 - eta, kv, "squeeze_db",
              "detected squeezing is stronger than the detection efficiency allows");
    }

    const double excess_db = number_or(kv, "input_amplitude_noise_db", 0.0);
    const double v_amp = db_to_linear({excess_db});
    cfg.input_beam_variance = QuadratureCovariance(v_amp, std::max(1.0, 1.0 / v_amp), 0.0);

    sc.axis.start = number_or_auto(kv, "freq_start_hz");
    sc.axis.stop = number_or_auto(kv, "freq_stop_hz");
    const double points = number_or(kv, "freq_points", 200.0);
    check(points >= 2.0 && points == std::floor(points) && points <= 1e6, kv, "freq_points",
          "must be an integer in [2, 1e6]");
    sc.axis.points = static_cast<std::size_t>(points);
    if (sc.axis.start)
        check(*sc.axis.start > 0.0, kv, "freq_start_hz", "must be positive");
    if (sc.axis.stop)
        check(*sc.axis.stop > 0.0, kv, "freq_stop_hz", "must be positive");
    if (sc.axis.start && sc.axis.stop)
        check(*sc.axis.stop > *sc.axis.start, kv, "freq_stop_hz", "must exceed freq_start_hz");

    sc.signal.frequency = number_or(kv, "signal_frequency_hz", sc.signal.frequency);
    check(sc.signal.frequency > 0.0, kv, "signal_frequency_hz", "must be positive");
    sc.signal.modulation_depth = number_or(kv, "signal_modulation_depth_rad", sc.signal.modulation_depth);
    check(sc.signal.modulation_depth >= 0.0, kv, "signal_modulation_depth_rad", "must be non-negative");
    sc.signal.gain_db = number_or(kv, "signal_gain_db", 0.0);

    sc.trace.snl_ref = number_or(kv, "snl_ref_dbm", 0.0);
    if (const Entry* e = kv.find("electronic_floor_dbm"); e && e->value != "none")
        sc.trace.electronic_floor = to_number("electronic_floor_dbm", *e);
    else
        sc.trace.electronic_floor = -std::numeric_limits<double>::infinity();
    check(sc.trace.electronic_floor < sc.trace.snl_ref, kv, "electronic_floor_dbm", "must lie below snl_ref_dbm");
    sc.trace.rbw = number_or(kv, "rbw_hz", sc.trace.rbw);
    check(sc.trace.rbw > 0.0, kv, "rbw_hz", "must be positive");
    sc.trace.vbw = number_or(kv, "vbw_hz", sc.trace.vbw);
    check(sc.trace.vbw > 0.0, kv, "vbw_hz", "must be positive");

    kv.reject_unknown();
    validate(sc);
    return sc;
}

void validate(const Scenario& scenario)
{
    if (scenario.name.empty())
        throw ScenarioError("name", 0, "must not be empty");
    if (scenario.axis.points < 2)
        throw ScenarioError("freq_points", 0, "must be at least 2");
    try {
        validate(scenario.config);
    } catch (const std::invalid_argument& e) {
        throw ScenarioError("", 0, e.what());
    }
    if (!scenario.config.power_mirror)
        throw ScenarioError("power_mirror_reflectivity", 0, "scenario must define the power mirror");
}

Scenario load_scenario_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ScenarioError("", 0, "cannot open scenario file '" + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    try {
        return parse_scenario(text.str());
    } catch (const ScenarioError& e) {
        throw ScenarioError(e.field(), e.line(), path + ": " + e.what());
    }
}

std::vector<std::string> preset_names()
{
    std::vector<std::string> names;
    for (const auto& p : presets::kAll)
        names.emplace_back(p.name);
    return names;
}

std::string_view preset_text(std::string_view name)
{
    for (const auto& p : presets::kAll)
        if (p.name == name)
            return p.text;
    throw ScenarioError("", 0, "unknown preset '" + std::string(name) + "'");
}

Scenario load_scenario(const std::string& path_or_preset)
{
    for (const auto& p : presets::kAll)
        if (p.name == path_or_preset)
            return parse_scenario(p.text);
    if (!std::filesystem::exists(path_or_preset))
        throw ScenarioError("", 0, "'" + path_or_preset + "' is neither a preset nor an existing file");
    return load_scenario_file(path_or_preset);
}

InterferometerConfig variant_config(const Scenario& scenario, Variant variant, bool squeezed)
{
    InterferometerConfig cfg = scenario.config;
    if (variant == Variant::simple) {
        cfg.power_mirror.reset();
        cfg.round_trip_loss = RoundTripLoss::fixed(0.0);
    }
    if (!squeezed)
        cfg.squeeze.reset();
    return cfg;
}

std::vector<double> frequency_grid(const Scenario& scenario)
{
    double start = 0.0;
    double stop = 0.0;
    if (scenario.axis.start && scenario.axis.stop) {
        start = *scenario.axis.start;
        stop = *scenario.axis.stop;
    } else {
        const InterferometerConfig prm = variant_config(scenario, Variant::prm, false);
        const OperatingPoint op = solve_operating_point(prm);
        const CavitySpec cavity = recycling_cavity(prm, op);
        const double fsr = free_spectral_range(cavity.length);
        double half_width = 0.0;
        try {
            half_width = cavity_half_linewidth(cavity);
        } catch (const std::domain_error&) {
            half_width = 1e-2 * fsr;  // no resonance: still span a useful range
        }
        start = scenario.axis.start.value_or(0.01 * half_width);
        stop = scenario.axis.stop.value_or(std::min(100.0 * half_width, 0.5 * fsr));
        if (!(stop > start))
            throw ScenarioError("freq_stop_hz", 0, "derived frequency axis is empty");
    }

    const std::size_t n = scenario.axis.points;
    std::vector<double> grid(n);
    const double log_start = std::log10(start);
    const double step = (std::log10(stop) - log_start) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i)
        grid[i] = std::pow(10.0, log_start + step * static_cast<double>(i));
    grid.front() = start;
    grid.back() = stop;
    return grid;
}

double electronic_rel_snl_db(const Scenario& scenario)
{
    return scenario.trace.electronic_floor - scenario.trace.snl_ref;
}

}  // namespace sqzprm
