#ifndef SQZPRM_SCENARIO_HPP
#define SQZPRM_SCENARIO_HPP

#include "sqzprm/detection.hpp"
#include "sqzprm/interferometer.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sqzprm
{

// Load or validation failure. `field` names the offending key and `line` the
// 1-based line in the source text (0 when the problem is not tied to a line).
class ScenarioError : public std::runtime_error
{
public:
    ScenarioError(std::string field, std::size_t line, const std::string& message);

    const std::string& field() const { return field_; }
    std::size_t line() const { return line_; }

private:
    std::string field_;
    std::size_t line_;
};

enum class Variant
{
    simple,
    prm,
};

struct FrequencyAxis
{
    std::optional<double> start;  // Hz; unset = derived from the cavity linewidth
    std::optional<double> stop;
    std::size_t points = 200;
};

struct SignalSpec
{
    double frequency = 5.46e6;      // Hz
    double modulation_depth = 1e-3;  // rad
    double gain_db = 0.0;           // analyzer calibration added to 10 log10(P / 1 mW)
};

// `config` describes the power-recycled interferometer with its squeezer;
// simple and unsqueezed variants are derived from it.
struct Scenario
{
    std::string name;
    InterferometerConfig config;
    FrequencyAxis axis;
    SignalSpec signal;
    TraceSettings trace;
};

Scenario parse_scenario(std::string_view text);
Scenario load_scenario_file(const std::string& path);

// Preset name ("bench", "aligo") or path to a scenario file.
Scenario load_scenario(const std::string& path_or_preset);

std::vector<std::string> preset_names();
std::string_view preset_text(std::string_view name);

// Every embedded constraint, checked before anything reaches the solver.
void validate(const Scenario& scenario);

InterferometerConfig variant_config(const Scenario& scenario, Variant variant, bool squeezed);

// Default axis: log spaced from 0.01x to 100x the recycling-cavity half
// linewidth, capped at half the free spectral range (the response is periodic
// in the FSR). Solves the PRM operating point to locate the linewidth.
std::vector<double> frequency_grid(const Scenario& scenario);

// Electronic floor relative to the SNL in dB (-inf when absent).
double electronic_rel_snl_db(const Scenario& scenario);

}  // namespace sqzprm

#endif
