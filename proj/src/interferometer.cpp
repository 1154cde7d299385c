#include "sqzprm/interferometer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace sqzprm
{
namespace
{

constexpr double kBisectionTolerance = 1e-12;  // rad
constexpr int kBisectionMaxIterations = 200;
constexpr double kRelativeSlack = 1e-12;

void require_fraction(double x, const std::string& what)
{
    if (!(x >= 0.0 && x <= 1.0))
        throw std::invalid_argument(what + " must lie in [0, 1], got " + std::to_string(x));
}

// Power mirror as seen by the network; the simple Michelson is the same
// network with a fully transmissive, lossless mirror.
MirrorSpec effective_power_mirror(const InterferometerConfig& config)
{
    return config.power_mirror.value_or(MirrorSpec{0.0, 0.0});
}

double rotator_single_pass_efficiency(const InterferometerConfig& config)
{
    return std::sqrt(1.0 - config.rotator_double_pass_loss);
}

// Carrier power leaving the Michelson dark port at fringe offset `delta`.
double dark_power_at(double delta, double input_power, double t1, double loop_gain, double arm_efficiency)
{
    const double s = std::sin(delta);
    const double gap = 1.0 - loop_gain * std::cos(delta);
    return arm_efficiency * s * s * t1 * input_power / (gap * gap);
}

double resolve_round_trip_loss(const InterferometerConfig& config)
{
    const auto& loss = config.round_trip_loss;
    if (!loss.target_gain || !config.power_mirror)
        return loss.target_gain ? 0.0 : loss.fraction;

    const double gain = *loss.target_gain;
    const double circulating = gain * config.input_power;
    if (!(circulating > 0.0))
        throw SolverError("cannot fit round-trip loss without input power");
    const double sin_sq = config.target_dark_power / (config.arm_efficiency * circulating);
    if (!(sin_sq <= 1.0))
        throw SolverError("target dark-port power exceeds the circulating power implied by the target gain");
    const double cos_delta = std::sqrt(1.0 - sin_sq);
    const double michelson = std::sqrt(config.arm_efficiency) * cos_delta;
    const double fitted = fit_round_trip_loss(*config.power_mirror, gain, michelson);

    // The fit must land on the branch the solver searches (cos d above the
    // loop gain), otherwise the solve would return a different fringe offset.
    const double loop = config.power_mirror->amplitude_reflectivity() * std::sqrt(1.0 - fitted) *
                        std::sqrt(config.arm_efficiency);
    if (cos_delta < loop)
        throw SolverError("fitted round-trip loss puts the operating point past the dark-port power maximum");
    return fitted;
}

}  // namespace

void validate(const InterferometerConfig& config)
{
    if (!(config.input_power >= 0.0) || !std::isfinite(config.input_power))
        throw std::invalid_argument("input_power must be a non-negative finite power");
    if (!(config.target_dark_power >= 0.0) || !std::isfinite(config.target_dark_power))
        throw std::invalid_argument("target_dark_power must be a non-negative finite power");
    if (config.power_mirror)
        validate(*config.power_mirror);
    if (!(config.cavity_length > 0.0) || !std::isfinite(config.cavity_length))
        throw std::invalid_argument("cavity_length must be positive");
    require_fraction(config.rotator_double_pass_loss, "rotator_double_pass_loss");
    require_fraction(config.arm_efficiency, "arm_efficiency");
    require_fraction(config.round_trip_loss.fraction, "round_trip_loss");
    if (config.round_trip_loss.target_gain && !(*config.round_trip_loss.target_gain > 0.0))
        throw std::invalid_argument("target recycling gain must be positive");
    validate(config.homodyne);
    if (config.squeeze && !(config.squeeze->suppression_db >= 0.0))
        throw std::invalid_argument("squeeze suppression must be non-negative");
    if (config.target_dark_power > config.input_power * (1.0 + kRelativeSlack) && !config.power_mirror)
        throw std::invalid_argument("target_dark_power exceeds input_power for a simple Michelson");
}

bool same_geometry(const InterferometerConfig& a, const InterferometerConfig& b)
{
    return a.input_power == b.input_power && a.power_mirror == b.power_mirror &&
           a.cavity_length == b.cavity_length && a.target_dark_power == b.target_dark_power &&
           a.rotator_double_pass_loss == b.rotator_double_pass_loss && a.arm_efficiency == b.arm_efficiency &&
           a.round_trip_loss == b.round_trip_loss && a.homodyne == b.homodyne &&
           a.input_beam_variance == b.input_beam_variance;
}

double TransferSet::vacuum_total() const
{
    return std::accumulate(t_vac.begin(), t_vac.end(), 0.0,
                           [](double acc, const VacuumPort& p) { return acc + std::norm(p.coefficient); });
}

double TransferSet::completeness() const
{
    return std::norm(t_lo) + std::norm(t_sqz) + vacuum_total();
}

double min_detectable_phase(double photon_number)
{
    if (!(photon_number > 0.0))
        throw std::domain_error("min_detectable_phase requires a positive photon number");
    return 1.0 / std::sqrt(photon_number);
}

double fit_round_trip_loss(const MirrorSpec& power_mirror, double target_gain, double michelson_reflectivity)
{
    validate(power_mirror);
    require_fraction(michelson_reflectivity, "michelson_reflectivity");
    if (!(target_gain > 0.0))
        throw std::invalid_argument("target gain must be positive");

    const double t1 = power_mirror.transmissivity();
    const double product = power_mirror.amplitude_reflectivity() * michelson_reflectivity;
    if (product >= 1.0)
        throw std::domain_error("lossless cavity with unit mirrors has unbounded gain");
    const double lossless = t1 / ((1.0 - product) * (1.0 - product));
    if (target_gain > lossless * (1.0 + kRelativeSlack))
        throw std::domain_error("target gain " + std::to_string(target_gain) + " exceeds the lossless maximum " +
                                std::to_string(lossless));
    if (target_gain < t1 * (1.0 - kRelativeSlack))
        throw std::domain_error("target gain " + std::to_string(target_gain) +
                                " is below the fully lossy minimum T1 = " + std::to_string(t1));
    if (product == 0.0)
        return 0.0;  // gain is T1 regardless of loss

    const double amplitude = (1.0 - std::sqrt(t1 / target_gain)) / product;
    return std::clamp(1.0 - amplitude * amplitude, 0.0, 1.0);
}

CavitySpec recycling_cavity(const InterferometerConfig& config, const OperatingPoint& op)
{
    return {config.cavity_length, effective_power_mirror(config), op.effective_michelson_reflectivity,
            op.round_trip_loss};
}

OperatingPoint solve_operating_point(const InterferometerConfig& config)
{
    validate(config);
    const double loss = resolve_round_trip_loss(config);
    const MirrorSpec mirror = effective_power_mirror(config);
    const double t1 = mirror.transmissivity();
    const double loop_gain = mirror.amplitude_reflectivity() * std::sqrt(1.0 - loss) * std::sqrt(config.arm_efficiency);
    if (loop_gain >= 1.0)
        throw SolverError("recycling cavity is lossless with unit mirrors; buildup diverges");

    // Dark-port power rises with the offset until cos d = loop_gain and
    // falls beyond it, so only [0, acos(loop_gain)] is searched.
    const double upper = loop_gain > 0.0 ? std::acos(loop_gain) : std::numbers::pi / 2.0;
    const auto dark = [&](double delta) {
        return dark_power_at(delta, config.input_power, t1, loop_gain, config.arm_efficiency);
    };

    double delta = 0.0;
    if (config.target_dark_power > 0.0) {
        const double reachable = dark(upper);
        if (config.target_dark_power > reachable * (1.0 + kRelativeSlack))
            throw SolverError("target dark-port power " + std::to_string(config.target_dark_power) +
                              " W is unreachable; maximum is " + std::to_string(reachable) + " W");
        double lo = 0.0;
        double hi = upper;
        int iterations = 0;
        while (hi - lo > kBisectionTolerance) {
            if (++iterations > kBisectionMaxIterations)
                throw SolverError("fringe-offset bisection did not converge");
            const double mid = 0.5 * (lo + hi);
            if (dark(mid) < config.target_dark_power)
                lo = mid;
            else
                hi = mid;
        }
        delta = 0.5 * (lo + hi);
    }

    OperatingPoint op;
    op.fringe_offset = delta;
    op.round_trip_loss = loss;
    op.effective_michelson_reflectivity = std::sqrt(config.arm_efficiency) * std::cos(delta);
    const double gap = 1.0 - loop_gain * std::cos(delta);
    op.recycling_gain = t1 / (gap * gap);
    op.circulating_power = op.recycling_gain * config.input_power;
    const double s = std::sin(delta);
    op.dark_port_power = op.circulating_power * s * s * config.arm_efficiency;
    return op;
}

// Sideband network, fields at offset W from the carrier:
//
//   A  = field leaving the power mirror toward the Michelson
//   B  = field leaving the Michelson bright port toward the power mirror
//   D0 = field leaving the Michelson dark port
//
//   A  = r1 e^{i phi/2} (g B + sqrt(l) v_rt) + t1 laser + sqrt(L_pm) v_pm
//   B  = sqrt(eta_a) (c e^{i phi/2} A + i s dark_in) + sqrt(1 - eta_a) v_ab
//   D0 = sqrt(eta_a) (i s e^{i phi/2} A + c dark_in) + sqrt(1 - eta_a) v_ad
//
// with dark_in = sqrt(eta_p) sqz + sqrt(1 - eta_p) v_r1 and the detected
// field sqrt(eta_h) (sqrt(eta_p) D0 + sqrt(1 - eta_p) v_r2) + sqrt(1 - eta_h) v_h.
// The carrier is resonant, so every path keeps a fixed quadrature and only
// |T|^2 enters the detected variance; at d = 0 the squeeze coefficient is
// real and positive.
TransferSet transfer_functions(const InterferometerConfig& config, const OperatingPoint& op, SidebandFrequency omega)
{
    const MirrorSpec mirror = effective_power_mirror(config);
    const double r1 = mirror.amplitude_reflectivity();
    const double t1 = mirror.amplitude_transmissivity();
    const double mirror_loss = std::sqrt(mirror.power_loss);
    const double g = std::sqrt(1.0 - op.round_trip_loss);
    const double rt_leak = std::sqrt(op.round_trip_loss);

    const double eta_a = config.arm_efficiency;
    const double eta_p = rotator_single_pass_efficiency(config);
    const double eta_h = homodyne_efficiency(config.homodyne);

    const TwoPortScattering mich = michelson_two_port(op.fringe_offset, eta_a);
    const Complex half = propagation_phase(omega, config.cavity_length);
    const Complex denom = 1.0 - r1 * g * half * half * mich.bright_to_bright();

    const double out = std::sqrt(eta_p) * std::sqrt(eta_h);
    // Injection into A -> detected output.
    const Complex via_cavity = out * mich.bright_to_dark() * half / denom;
    // Michelson dark input -> detected output, direct plus recycled path.
    const Complex dark_in = out * (mich.dark_to_dark() + mich.bright_to_dark() * half * r1 * g * half *
                                                             mich.dark_to_bright() / denom);

    TransferSet set;
    set.omega = omega;
    set.t_lo = via_cavity * t1;
    set.t_sqz = dark_in * std::sqrt(eta_p);
    set.t_vac = {
        {"rotator pass 1", dark_in * std::sqrt(1.0 - eta_p)},
        {"rotator pass 2", std::sqrt(eta_h) * std::sqrt(1.0 - eta_p)},
        {"arm loss (dark side)", out * std::sqrt(1.0 - eta_a)},
        {"arm loss (bright side)", via_cavity * r1 * half * g * std::sqrt(1.0 - eta_a)},
        {"cavity round-trip loss", via_cavity * r1 * half * rt_leak},
        {"power mirror loss", via_cavity * mirror_loss},
        {"homodyne inefficiency", Complex{std::sqrt(1.0 - eta_h), 0.0}},
    };
    return set;
}

double input_beam_measured_variance(const InterferometerConfig& config)
{
    return measured_variance(config.input_beam_variance, 0.0);
}

double squeezed_input_variance(const InterferometerConfig& config)
{
    if (!config.squeeze)
        return 1.0;
    SqueezeSpec source = *config.squeeze;
    if (config.squeeze_reference == SqueezeReference::detected) {
        const double seen = db_to_linear({-source.suppression_db});
        source.suppression_db = -linear_to_db(remove_loss(seen, homodyne_efficiency(config.homodyne))).value;
    }
    return measured_variance(make_squeezed(source), 0.0);
}

double detected_variance(const InterferometerConfig& config, const TransferSet& transfer)
{
    return std::norm(transfer.t_lo) * input_beam_measured_variance(config) +
           std::norm(transfer.t_sqz) * squeezed_input_variance(config) + transfer.vacuum_total();
}

std::vector<SpectrumPoint> noise_spectrum(const InterferometerConfig& config, const OperatingPoint& op,
                                          std::span<const double> frequencies)
{
    const double v_lo = input_beam_measured_variance(config);
    const double v_sqz = squeezed_input_variance(config);
    std::vector<SpectrumPoint> points;
    points.reserve(frequencies.size());
    for (double f : frequencies) {
        const TransferSet t = transfer_functions(config, op, {f});
        SpectrumPoint p;
        p.frequency = f;
        p.t_lo_sq = std::norm(t.t_lo);
        p.t_sqz_sq = std::norm(t.t_sqz);
        p.t_vac_sq = t.vacuum_total();
        p.v_pd = p.t_lo_sq * v_lo + p.t_sqz_sq * v_sqz + p.t_vac_sq;
        p.v_pd_db = linear_to_db(p.v_pd).value;
        points.push_back(p);
    }
    return points;
}

std::vector<SpectrumPoint> noise_spectrum(const InterferometerConfig& config, std::span<const double> frequencies)
{
    return noise_spectrum(config, solve_operating_point(config), frequencies);
}

// Modulating d by m cos(W t) puts sidebands of relative amplitude m/2 times
// dS/dd on the carrier at both Michelson outputs; the bright-side part is
// recycled through the cavity before reaching the dark port.
Complex signal_transfer(const InterferometerConfig& config, const OperatingPoint& op, double signal_frequency)
{
    const MirrorSpec mirror = effective_power_mirror(config);
    const double r1 = mirror.amplitude_reflectivity();
    const double g = std::sqrt(1.0 - op.round_trip_loss);
    const double amp = std::sqrt(config.arm_efficiency);
    const double c = std::cos(op.fringe_offset);
    const double s = std::sin(op.fringe_offset);

    const TwoPortScattering mich = michelson_two_port(op.fringe_offset, config.arm_efficiency);
    const Complex half = propagation_phase({signal_frequency}, config.cavity_length);
    const Complex denom = 1.0 - r1 * g * half * half * mich.bright_to_bright();

    const Complex to_dark = Complex{0.0, amp * c};  // d/dd of bright->dark
    const Complex to_bright = -amp * s;             // d/dd of bright->bright
    const Complex recycled = to_bright * r1 * g * half * half * mich.bright_to_dark() / denom;

    const double out = std::sqrt(rotator_single_pass_efficiency(config)) * std::sqrt(homodyne_efficiency(config.homodyne));
    return out * (to_dark + recycled);
}

double signal_response(const InterferometerConfig& config, const OperatingPoint& op, double signal_frequency,
                       double modulation_depth)
{
    return modulation_depth * modulation_depth * op.circulating_power *
           std::norm(signal_transfer(config, op, signal_frequency));
}

double snr_improvement(const InterferometerConfig& with_squeezing, const InterferometerConfig& without_squeezing,
                       double signal_frequency)
{
    if (!same_geometry(with_squeezing, without_squeezing))
        throw std::invalid_argument("snr_improvement requires configurations that differ only in squeezing");
    const OperatingPoint op = solve_operating_point(with_squeezing);
    const TransferSet t = transfer_functions(with_squeezing, op, {signal_frequency});
    const double squeezed = detected_variance(with_squeezing, t);
    const double reference = detected_variance(without_squeezing, t);
    return -10.0 * std::log10(squeezed / reference);
}

}  // namespace sqzprm
