#include "sqzprm/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <initializer_list>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

namespace sqzprm
{
namespace
{

std::string fmt(double v)
{
    if (std::isinf(v))
        return v < 0 ? "-inf" : "inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

class CsvWriter
{
public:
    explicit CsvWriter(std::initializer_list<std::string_view> header) { row_strings(header); }

    template <typename... Cells>
    void row(const Cells&... cells)
    {
        bool first = true;
        ((out_ << (first ? "" : ",") << cell(cells), first = false), ...);
        out_ << '\n';
    }

    std::string str() const { return out_.str(); }

private:
    static std::string cell(double v) { return fmt(v); }
    static std::string cell(std::string_view s) { return std::string(s); }

    void row_strings(std::initializer_list<std::string_view> cells)
    {
        bool first = true;
        for (auto c : cells) {
            out_ << (first ? "" : ",") << c;
            first = false;
        }
        out_ << '\n';
    }

    std::ostringstream out_;
};

std::string_view variant_name(Variant v)
{
    return v == Variant::simple ? "simple" : "prm";
}

}  // namespace

std::string run_spectrum(const Scenario& scenario, const RunOptions& options)
{
    const InterferometerConfig cfg = variant_config(scenario, options.variant, options.squeezed);
    const std::vector<double> grid = frequency_grid(scenario);
    CsvWriter csv{"frequency_hz", "v_pd_linear", "v_pd_db", "t_lo_sq", "t_sqz_sq", "t_vac_sq_total"};
    for (const SpectrumPoint& p : noise_spectrum(cfg, grid))
        csv.row(p.frequency, p.v_pd, p.v_pd_db, p.t_lo_sq, p.t_sqz_sq, p.t_vac_sq);
    return csv.str();
}

std::string run_operating_point(const Scenario& scenario, const RunOptions& options)
{
    const InterferometerConfig cfg = variant_config(scenario, options.variant, options.squeezed);
    const OperatingPoint op = solve_operating_point(cfg);
    CsvWriter csv{"variant",           "fringe_offset_rad",   "effective_reflectivity",
                  "recycling_gain",    "circulating_power_w", "dark_port_power_w",
                  "round_trip_loss"};
    csv.row(variant_name(options.variant), op.fringe_offset, op.effective_michelson_reflectivity,
            op.recycling_gain, op.circulating_power, op.dark_port_power, op.round_trip_loss);
    return csv.str();
}

double signal_level_dbm(const Scenario& scenario, Variant variant)
{
    const InterferometerConfig cfg = variant_config(scenario, variant, false);
    const OperatingPoint op = solve_operating_point(cfg);
    const double power = signal_response(cfg, op, scenario.signal.frequency, scenario.signal.modulation_depth);
    if (!(power > 0.0))
        return -std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(power / 1e-3) + scenario.signal.gain_db;
}

std::string run_snr(const Scenario& scenario, const RunOptions& options)
{
    const InterferometerConfig squeezed = variant_config(scenario, options.variant, true);
    const InterferometerConfig plain = variant_config(scenario, options.variant, false);
    const OperatingPoint op = solve_operating_point(squeezed);
    const double f_sig = scenario.signal.frequency;

    const TransferSet at_signal = transfer_functions(squeezed, op, {f_sig});
    const double noise_sqz = linear_to_db(detected_variance(squeezed, at_signal)).value;
    const double noise_plain = linear_to_db(detected_variance(plain, at_signal)).value;

    const std::vector<double> grid = frequency_grid(scenario);
    const TransferSet at_top = transfer_functions(squeezed, op, {grid.back()});
    const double floor_sqz = linear_to_db(detected_variance(squeezed, at_top)).value;
    const double floor_elec = add_powers_dbm(floor_sqz, electronic_rel_snl_db(scenario));

    const double response = signal_response(squeezed, op, f_sig, scenario.signal.modulation_depth);
    const double level = signal_level_dbm(scenario, options.variant);
    const double over_simple = level - signal_level_dbm(scenario, Variant::simple);

    CsvWriter csv{"variant",
                  "signal_frequency_hz",
                  "signal_response_w_rad2",
                  "signal_level_dbm",
                  "signal_gain_over_simple_db",
                  "noise_unsqueezed_db",
                  "noise_squeezed_db",
                  "snr_gain_db",
                  "floor_frequency_hz",
                  "floor_squeezed_db",
                  "floor_squeezed_with_electronics_db"};
    csv.row(variant_name(options.variant), f_sig, response, level, over_simple, noise_plain, noise_sqz,
            snr_improvement(squeezed, plain, f_sig), grid.back(), floor_sqz, floor_elec);
    return csv.str();
}

std::string run_trace(const Scenario& scenario, const RunOptions& options)
{
    const InterferometerConfig cfg = variant_config(scenario, options.variant, options.squeezed);
    const std::vector<double> grid = frequency_grid(scenario);
    const std::vector<SpectrumPoint> model = noise_spectrum(cfg, grid);
    std::optional<TraceSignal> signal;
    if (scenario.signal.modulation_depth > 0.0)
        signal = TraceSignal{scenario.signal.frequency, signal_level_dbm(scenario, options.variant)};
    const SpectrumTrace trace = synthesize_trace(model, scenario.trace, signal);

    CsvWriter csv{"frequency_hz", "level_dbm"};
    for (const TracePoint& p : trace.points)
        csv.row(p.frequency, p.level);
    return csv.str();
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Quantum-noise spectra of a squeezed, power-recycled Michelson", "sqzprm"};
    app.require_subcommand(1);

    std::string scenario_arg;
    std::string out_path;
    std::string variant_arg = "prm";
    std::string squeezed_arg = "on";

    using Runner = std::function<std::string(const Scenario&, const RunOptions&)>;
    const std::map<std::string, std::pair<std::string, Runner>> commands = {
        {"spectrum", {"Detected noise variance versus sideband frequency", run_spectrum}},
        {"operating-point", {"Solved fringe offset and recycling gain", run_operating_point}},
        {"snr", {"Signal, noise floors and squeezing SNR gain", run_snr}},
        {"trace", {"Synthesized spectrum-analyzer trace in dBm", run_trace}},
    };
    for (const auto& [name, entry] : commands) {
        CLI::App* sub = app.add_subcommand(name, entry.first);
        sub->add_option("--scenario", scenario_arg, "Preset name (bench, aligo) or scenario file")->required();
        sub->add_option("--out", out_path, "Output file (default: standard output)");
        sub->add_option("--variant", variant_arg, "simple or prm")
            ->check(CLI::IsMember({"simple", "prm"}));
        sub->add_option("--squeezed", squeezed_arg, "on or off")->check(CLI::IsMember({"on", "off"}));
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? 0 : 1;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    RunOptions options;
    options.variant = variant_arg == "simple" ? Variant::simple : Variant::prm;
    options.squeezed = squeezed_arg == "on";

    std::string text;
    try {
        const Scenario scenario = load_scenario(scenario_arg);
        text = commands.at(command).second(scenario, options);
    } catch (const SolverError& e) {
        err << "solver error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "validation error: " << e.what() << '\n';
        return 1;
    }

    if (out_path.empty()) {
        out << text;
    } else {
        std::ofstream file(out_path, std::ios::binary);
        if (!(file << text)) {
            err << "error: cannot write '" << out_path << "'\n";
            return 1;
        }
    }
    return 0;
}

}  // namespace sqzprm
