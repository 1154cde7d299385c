// Acceptance checks for the bench and aligo presets. One line per criterion;
// exit status is the number of failed criteria.

#include "sqzprm/cli.hpp"
#include "sqzprm/detection.hpp"
#include "sqzprm/interferometer.hpp"
#include "sqzprm/quadrature.hpp"
#include "sqzprm/scenario.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace sqzprm;

namespace
{

struct Outcome
{
    bool pass;
    std::string detail;
};

int g_failures = 0;

void criterion(const std::string& id, const std::string& title, double budget_s, const std::function<Outcome()>& body)
{
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = elapsed < budget_s;
    const bool pass = o.pass && in_time;
    if (!pass)
        ++g_failures;
    std::printf("%s  %-4s %s: %s [%.3f s, budget %.0f s%s]\n", pass ? "PASS" : "FAIL", id.c_str(), title.c_str(),
                o.detail.c_str(), elapsed, budget_s, in_time ? "" : ", OVER BUDGET");
}

std::string num(double v, int digits = 4)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

// Column-keyed view of CSV text produced by the CLI runners.
struct Csv
{
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    static Csv parse(const std::string& text)
    {
        Csv csv;
        std::istringstream in(text);
        std::string line;
        std::getline(in, line);
        csv.header = split(line);
        while (std::getline(in, line)) {
            std::vector<double> row;
            for (const std::string& cell : split(line))
                row.push_back(std::strtod(cell.c_str(), nullptr));
            csv.rows.push_back(row);
        }
        return csv;
    }

    std::vector<double> column(const std::string& name) const
    {
        std::size_t idx = 0;
        while (idx < header.size() && header[idx] != name)
            ++idx;
        if (idx == header.size())
            throw std::runtime_error("CSV has no column " + name);
        std::vector<double> out;
        for (const auto& r : rows)
            out.push_back(r.at(idx));
        return out;
    }

private:
    static std::vector<std::string> split(const std::string& line)
    {
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream in(line);
        while (std::getline(in, cell, ','))
            cells.push_back(cell);
        return cells;
    }
};

Csv spectrum_csv(const Scenario& s, Variant variant, bool squeezed)
{
    return Csv::parse(run_spectrum(s, {variant, squeezed}));
}

double prm_half_linewidth(const Scenario& s)
{
    const InterferometerConfig prm = variant_config(s, Variant::prm, false);
    return cavity_half_linewidth(recycling_cavity(prm, solve_operating_point(prm)));
}

// Full-width linewidth of the recycling cavity, FSR (1 - r) / (pi sqrt(r)).
double prm_full_linewidth(const Scenario& s)
{
    const InterferometerConfig prm = variant_config(s, Variant::prm, false);
    const CavitySpec cav = recycling_cavity(prm, solve_operating_point(prm));
    const double r = cav.input_mirror.amplitude_reflectivity() * cav.effective_back_reflectivity();
    return free_spectral_range(cav.length) * (1.0 - r) / (std::numbers::pi * std::sqrt(r));
}

void shape_criteria(const std::string& preset)
{
    const Scenario s = load_scenario(preset);
    const std::string tag = " (" + preset + ")";

    criterion("6a", "unsqueezed traces at 0 dB" + tag, 5.0, [&] {
        double worst = 0.0;
        for (Variant v : {Variant::simple, Variant::prm})
            for (double db : spectrum_csv(s, v, false).column("v_pd_db"))
                worst = std::max(worst, std::abs(db));
        return Outcome{worst <= 1e-12, "max |V_pd| = " + num(worst, 3) + " dB (<= 1e-12)"};
    });

    criterion("6b", "squeezed PRM <= squeezed simple outside half-linewidth" + tag, 5.0, [&] {
        const double hw = prm_half_linewidth(s);
        const Csv prm = spectrum_csv(s, Variant::prm, true);
        const Csv simple = spectrum_csv(s, Variant::simple, true);
        const auto f = prm.column("frequency_hz");
        const auto a = prm.column("v_pd_db");
        const auto b = simple.column("v_pd_db");
        double worst = -1e300;
        double worst_f = 0.0;
        int violations = 0;
        double lo = 0.0;
        double hi = 0.0;
        for (std::size_t i = 0; i < f.size(); ++i) {
            if (f[i] <= hw)
                continue;
            const double excess = a[i] - b[i];
            if (excess > 1e-12) {
                if (violations++ == 0)
                    lo = f[i];
                hi = f[i];
            }
            if (excess > worst) {
                worst = excess;
                worst_f = f[i];
            }
        }
        std::string detail = "half-linewidth " + num(hw / 1e6, 3) + " MHz; max PRM - simple = " + num(worst, 3) +
                             " dB at " + num(worst_f / 1e6, 3) + " MHz";
        if (violations > 0)
            detail += "; " + std::to_string(violations) + " points above, " + num(lo / 1e6, 2) + "-" +
                      num(hi / 1e6, 2) + " MHz";
        return Outcome{violations == 0, detail};
    });

    criterion("6c", "squeezed traces asymptote at high frequency" + tag, 5.0, [&] {
        double worst = 0.0;
        std::string detail;
        for (Variant v : {Variant::simple, Variant::prm}) {
            const auto db = spectrum_csv(s, v, true).column("v_pd_db");
            // Spread over the top 5% of the log axis.
            const std::size_t n = db.size();
            const std::size_t k = std::max<std::size_t>(2, n / 20);
            double lo = 1e300;
            double hi = -1e300;
            for (std::size_t i = n - k; i < n; ++i) {
                lo = std::min(lo, db[i]);
                hi = std::max(hi, db[i]);
            }
            worst = std::max(worst, hi - lo);
            detail += std::string(v == Variant::prm ? "prm" : "simple") + " top-band spread " + num(hi - lo, 4) +
                      " dB, floor " + num(db.back(), 3) + " dB; ";
        }
        detail += "limit 0.01 dB";
        return Outcome{worst < 0.01, detail};
    });

    criterion("6d", "PRM suppression improves monotonically beyond the linewidth" + tag, 5.0, [&] {
        const double hw = prm_half_linewidth(s);
        const Csv prm = spectrum_csv(s, Variant::prm, true);
        const auto f = prm.column("frequency_hz");
        const auto db = prm.column("v_pd_db");
        int rises = 0;
        int checked = 0;
        double prev = 1e300;
        for (std::size_t i = 0; i < f.size(); ++i) {
            if (f[i] <= hw)
                continue;
            ++checked;
            if (db[i] > prev + 1e-12)
                ++rises;
            prev = db[i];
        }
        return Outcome{rises == 0 && checked > 1,
                       std::to_string(checked) + " points beyond " + num(hw / 1e6, 3) + " MHz, " +
                           std::to_string(rises) + " increases"};
    });
}

// Random valid configuration with a reachable dark-port target.
InterferometerConfig random_config(std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    InterferometerConfig c;
    c.input_power = 0.001 + u(rng);
    c.cavity_length = 0.2 + 20.0 * u(rng);
    const double r1sq = 0.99 * u(rng);
    c.power_mirror = MirrorSpec{r1sq, (1.0 - r1sq) * 0.1 * u(rng)};
    c.rotator_double_pass_loss = 0.4 * u(rng);
    c.arm_efficiency = 0.8 + 0.2 * u(rng);
    c.round_trip_loss = RoundTripLoss::fixed(0.2 * u(rng));
    c.homodyne = {0.6 + 0.4 * u(rng), 0.9 + 0.1 * u(rng)};
    c.squeeze = SqueezeSpec{12.0 * u(rng), 0.0};
    const double a = std::sqrt(r1sq) * std::sqrt(1.0 - c.round_trip_loss.fraction) * std::sqrt(c.arm_efficiency);
    c.target_dark_power = u(rng) * c.arm_efficiency * c.power_mirror->transmissivity() * c.input_power / (1.0 - a * a);
    return c;
}

}  // namespace

int main()
{
    const Scenario bench = load_scenario("bench");

    criterion("1", "operating point, simple Michelson", 1.0, [&] {
        const OperatingPoint op = solve_operating_point(variant_config(bench, Variant::simple, false));
        const double r = op.effective_michelson_reflectivity;
        return Outcome{std::abs(r - 0.922) <= 0.005, "r_eff = " + num(r, 5) + " (0.922 +/- 0.005)"};
    });

    criterion("2", "operating point, PRM with loss fitted to gain 4", 1.0, [&] {
        const InterferometerConfig cfg = variant_config(bench, Variant::prm, false);
        const OperatingPoint op = solve_operating_point(cfg);
        const double rel = std::abs(op.dark_port_power - cfg.target_dark_power) / cfg.target_dark_power;
        const double gain = cavity_buildup(recycling_cavity(cfg, op));
        const double r = op.effective_michelson_reflectivity;
        const bool ok = rel <= 1e-9 && std::abs(gain - 4.0) <= 1e-9 && r >= 0.98 && r <= 0.995;
        return Outcome{ok, "dark-port rel. error " + num(rel * 1e9, 3) + "e-9, gain " + num(gain, 9) + ", r_eff = " +
                               num(r, 5) + " in [0.98, 0.995], fitted loss " + num(op.round_trip_loss, 4)};
    });

    criterion("3", "3.5 dB through 15% double-pass loss", 1.0, [&] {
        const double v = apply_loss(make_squeezed({3.5, 0.0}), 0.85).v_plus();
        const double db = -linear_to_db(v).value;
        return Outcome{std::abs(db - 2.8) <= 0.2, num(db, 3) + " dB below SNL (2.8 +/- 0.2)"};
    });

    criterion("4a", "bench PRM floor outside the linewidth, no electronics", 5.0, [&] {
        const double edge = prm_full_linewidth(bench);
        const Csv csv = spectrum_csv(bench, Variant::prm, true);
        const auto f = csv.column("frequency_hz");
        const auto db = csv.column("v_pd_db");
        double lo = 1e300;
        double hi = -1e300;
        for (std::size_t i = 0; i < f.size(); ++i) {
            if (f[i] <= edge)
                continue;
            lo = std::min(lo, -db[i]);
            hi = std::max(hi, -db[i]);
        }
        return Outcome{lo >= 2.4 && hi <= 3.0, "above " + num(edge / 1e6, 2) + " MHz: " + num(lo, 3) + "-" +
                                                   num(hi, 3) + " dB below SNL (2.4-3.0), 200-point spectrum"};
    });

    criterion("4b", "bench PRM floor with electronics 10.63 dB below SNL", 5.0, [&] {
        const Csv csv = Csv::parse(run_snr(bench, {Variant::prm, true}));
        const double floor = -csv.column("floor_squeezed_with_electronics_db").front();
        const double f = csv.column("floor_frequency_hz").front();
        return Outcome{std::abs(floor - 2.3) <= 0.3, num(floor, 3) + " dB below SNL at " + num(f / 1e6, 2) +
                                                         " MHz (2.3 +/- 0.3), electronics " +
                                                         num(electronic_rel_snl_db(bench), 2) + " dB"};
    });

    criterion("5", "PRM signal over simple Michelson at 5.46 MHz", 1.0, [&] {
        const double gain = signal_level_dbm(bench, Variant::prm) - signal_level_dbm(bench, Variant::simple);
        return Outcome{std::abs(gain - 6.0) <= 0.1, num(gain, 3) + " dB (6.0 +/- 0.1)"};
    });

    for (const char* preset : {"bench", "aligo"})
        shape_criteria(preset);

    criterion("7", "invariant suites", 30.0, [&] {
        std::mt19937_64 rng(20240611);
        double completeness = 0.0;
        for (int k = 0; k < 20; ++k) {
            const InterferometerConfig c = random_config(rng);
            const OperatingPoint op = solve_operating_point(c);
            const double fsr = free_spectral_range(c.cavity_length);
            for (int i = 0; i < 200; ++i) {
                const double f = fsr * (i + 0.5) / 200.0;
                completeness =
                    std::max(completeness, std::abs(transfer_functions(c, op, {f}).completeness() - 1.0));
            }
        }

        double vacuum = 0.0;
        {
            InterferometerConfig c = bench.config;
            c.squeeze.reset();
            std::vector<double> grid;
            for (int i = 0; i < 200; ++i)
                grid.push_back(1e4 * std::pow(1e4, i / 199.0));
            for (const SpectrumPoint& p : noise_spectrum(c, grid))
                vacuum = std::max(vacuum, std::abs(p.v_pd - 1.0));
        }

        double identity = 0.0;
        {
            InterferometerConfig c = bench.config;
            c.rotator_double_pass_loss = 0.0;
            c.homodyne = {};
            c.target_dark_power = 0.0;
            c.round_trip_loss = RoundTripLoss::fixed(0.1);
            c.squeeze_reference = SqueezeReference::source;
            const OperatingPoint op = solve_operating_point(c);
            for (double f : {1e3, 1e6, 5e6, 5e7})
                identity = std::max(identity, std::abs(detected_variance(c, transfer_functions(c, op, {f})) -
                                                       squeezed_input_variance(c)));
        }

        double composition = 0.0;
        double round_trip = 0.0;
        {
            std::uniform_real_distribution<double> u(0.0, 1.0);
            for (int i = 0; i < 1000; ++i) {
                const auto s = make_squeezed({15.0 * u(rng), std::numbers::pi * u(rng)});
                const double e1 = u(rng);
                const double e2 = u(rng);
                const auto a = apply_loss(apply_loss(s, e1), e2);
                const auto b = apply_loss(s, e1 * e2);
                composition = std::max({composition, std::abs(a.v_plus() - b.v_plus()),
                                        std::abs(a.v_minus() - b.v_minus()),
                                        std::abs(a.correlation() - b.correlation())});
                const double x = -40.0 + 80.0 * u(rng);
                round_trip = std::max(round_trip, std::abs(linear_to_db(db_to_linear({x})).value - x));
            }
        }

        double unitarity = 0.0;
        for (int i = 0; i <= 1000; ++i)
            unitarity = std::max(unitarity, michelson_two_port(std::numbers::pi * i / 1000.0, 1.0).unitarity_defect());

        const bool ok = completeness <= 1e-10 && vacuum <= 1e-12 && identity <= 1e-12 && composition <= 1e-12 &&
                        round_trip <= 1e-12 && unitarity <= 1e-12;
        char buf[256];
        std::snprintf(buf, sizeof buf,
                      "completeness %.1e, vacuum %.1e, dark-fringe identity %.1e, loss composition %.1e, "
                      "dB round trip %.1e, unitarity %.1e",
                      completeness, vacuum, identity, composition, round_trip, unitarity);
        return Outcome{ok, buf};
    });

    criterion("8", "electronic-noise subtraction", 1.0, [&] {
        const double v = subtract_electronic_noise(-2.3, -10.63);
        return Outcome{std::abs(v + 3.0) <= 0.05, num(v, 3) + " dB (-3.0 +/- 0.05)"};
    });

    std::printf("%d criteria failed\n", g_failures);
    return g_failures == 0 ? 0 : 1;
}
