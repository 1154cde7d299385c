#ifndef SQZPRM_INTERFEROMETER_HPP
#define SQZPRM_INTERFEROMETER_HPP

#include "sqzprm/homodyne.hpp"
#include "sqzprm/optics.hpp"
#include "sqzprm/quadrature.hpp"

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sqzprm
{

// Thrown when the operating point cannot be found (unreachable target or
// bisection failure).
class SolverError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Where a SqueezeSpec's suppression figure is referred to.
enum class SqueezeReference
{
    source,    // as generated, before any loss
    detected,  // as seen by the homodyne detector looking straight at the squeezer
};

// The cavity round-trip loss is either given, or fitted so the carrier
// buildup equals target_gain at the solved operating point.
struct RoundTripLoss
{
    double fraction = 0.0;
    std::optional<double> target_gain;

    static RoundTripLoss fixed(double fraction) { return {fraction, std::nullopt}; }
    static RoundTripLoss fitted(double gain) { return {0.0, gain}; }

    bool operator==(const RoundTripLoss&) const = default;
};

struct InterferometerConfig
{
    double input_power = 0.0;                // W
    std::optional<MirrorSpec> power_mirror;  // absent: simple Michelson
    double cavity_length = 1.0;              // m
    double target_dark_power = 0.0;          // W
    double rotator_double_pass_loss = 0.0;
    double arm_efficiency = 1.0;
    RoundTripLoss round_trip_loss;
    HomodyneSpec homodyne;
    std::optional<SqueezeSpec> squeeze;
    SqueezeReference squeeze_reference = SqueezeReference::source;
    QuadratureCovariance input_beam_variance;
};

void validate(const InterferometerConfig& config);

// True when two configs differ at most in their squeeze input.
bool same_geometry(const InterferometerConfig& a, const InterferometerConfig& b);

struct OperatingPoint
{
    double fringe_offset = 0.0;  // rad
    double circulating_power = 0.0;
    double recycling_gain = 1.0;
    double dark_port_power = 0.0;
    double effective_michelson_reflectivity = 1.0;  // amplitude
    double round_trip_loss = 0.0;                   // value used in the solve
};

struct VacuumPort
{
    std::string_view name;
    Complex coefficient;
};

// Amplitude coefficients from each input port to the detected quadrature.
struct TransferSet
{
    Complex t_lo;
    Complex t_sqz;
    std::vector<VacuumPort> t_vac;
    SidebandFrequency omega;

    double vacuum_total() const;
    // |t_lo|^2 + |t_sqz|^2 + sum |t_vac|^2; 1 for a passive network.
    double completeness() const;
};

struct SpectrumPoint
{
    double frequency = 0.0;  // Hz
    double v_pd = 1.0;       // relative to SNL
    double v_pd_db = 0.0;
    double t_lo_sq = 0.0;
    double t_sqz_sq = 0.0;
    double t_vac_sq = 0.0;
};

double min_detectable_phase(double photon_number);

// Closed-form loss l such that T1 / (1 - r1 * r_m * sqrt(1 - l))^2 = target_gain.
double fit_round_trip_loss(const MirrorSpec& power_mirror, double target_gain,
                           double michelson_reflectivity);

// Power-recycling cavity formed by the power mirror and the Michelson
// compound mirror at the given operating point.
CavitySpec recycling_cavity(const InterferometerConfig& config, const OperatingPoint& op);

OperatingPoint solve_operating_point(const InterferometerConfig& config);

TransferSet transfer_functions(const InterferometerConfig& config, const OperatingPoint& op,
                               SidebandFrequency omega);

// Variances of the two non-vacuum inputs in the measured quadrature.
double input_beam_measured_variance(const InterferometerConfig& config);
double squeezed_input_variance(const InterferometerConfig& config);

double detected_variance(const InterferometerConfig& config, const TransferSet& transfer);

std::vector<SpectrumPoint> noise_spectrum(const InterferometerConfig& config, const OperatingPoint& op,
                                          std::span<const double> frequencies);
std::vector<SpectrumPoint> noise_spectrum(const InterferometerConfig& config,
                                          std::span<const double> frequencies);

// Dark-port signal transfer for a differential arm-phase modulation at
// `signal_frequency`: the amplitude of the detected signal sideband per unit
// of (modulation depth * sqrt(circulating power)).
Complex signal_transfer(const InterferometerConfig& config, const OperatingPoint& op, double signal_frequency);

// Signal power in relative units (W rad^2):
//   modulation_depth^2 * circulating_power * |signal_transfer|^2.
// The detected electrical power additionally scales with the dark-port
// carrier power, which is held fixed by the operating-point solve.
double signal_response(const InterferometerConfig& config, const OperatingPoint& op, double signal_frequency,
                       double modulation_depth);

// -10 log10(V_sqz / V_nosqz) at signal_frequency.
double snr_improvement(const InterferometerConfig& with_squeezing, const InterferometerConfig& without_squeezing,
                       double signal_frequency);

}  // namespace sqzprm

#endif
