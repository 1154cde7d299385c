#ifndef SQZPRM_OPTICS_HPP
#define SQZPRM_OPTICS_HPP

#include <array>
#include <complex>

namespace sqzprm
{

using Complex = std::complex<double>;

inline constexpr double kSpeedOfLight = 299'792'458.0;  // m/s

struct MirrorSpec
{
    double power_reflectivity = 0.0;
    double power_loss = 0.0;

    double transmissivity() const { return 1.0 - power_reflectivity - power_loss; }
    double amplitude_reflectivity() const;
    double amplitude_transmissivity() const;

    bool operator==(const MirrorSpec&) const = default;
};

// Linear two-mirror cavity: an input mirror and a lumped back reflector,
// with a lumped round-trip power loss between them.
struct CavitySpec
{
    double length = 1.0;  // one-way, meters
    MirrorSpec input_mirror;
    double back_reflectivity_amplitude = 1.0;
    double round_trip_loss = 0.0;

    // Back reflectivity as seen by the circulating field, loss included.
    double effective_back_reflectivity() const;
};

// Sideband offset from the carrier; `omega` is in Hz (not rad/s).
struct SidebandFrequency
{
    double omega = 0.0;
};

// Amplitude scattering of a lossy two-port, ports ordered (bright, dark):
// out[i] = sum_j s[i][j] * in[j].
struct TwoPortScattering
{
    std::array<std::array<Complex, 2>, 2> s{};

    Complex bright_to_bright() const { return s[0][0]; }
    Complex dark_to_bright() const { return s[0][1]; }
    Complex bright_to_dark() const { return s[1][0]; }
    Complex dark_to_dark() const { return s[1][1]; }

    // max |(S^dagger S - I)_ij|; zero for a lossless network.
    double unitarity_defect() const;
};

struct CavityResponse
{
    Complex reflection;
    Complex transmission;  // through the back reflector, treated as lossless
};

void validate(const MirrorSpec& mirror);
void validate(const CavitySpec& cavity);

double free_spectral_range(double length);

// exp(i 2 pi omega path / c). Positive omega accumulates positive phase.
Complex propagation_phase(SidebandFrequency omega, double path);

// Reflection seen from outside the input mirror:
//   r(W) = (-r1 + r2' e^{i phi}) / (1 - r1 r2' e^{i phi}),  phi = 2 pi W / FSR,
// with the carrier held on resonance (phi = 0 at W = 0).
Complex cavity_reflection(const CavitySpec& cavity, SidebandFrequency omega);
CavityResponse cavity_response(const CavitySpec& cavity, SidebandFrequency omega);

// On-resonance circulating/input power ratio T1 / (1 - r1 r2')^2.
double cavity_buildup(const CavitySpec& cavity);

// Frequency where the resonant dip reaches half depth (half width at half
// maximum of the Airy response). The full linewidth is twice this.
double cavity_half_linewidth(const CavitySpec& cavity);

// Michelson seen as a two-port at differential fringe offset `fringe_offset`:
//   sqrt(eta) * [[cos d, i sin d], [i sin d, cos d]].
// The i on the cross-coupling keeps the matrix symmetric and unitary; d = 0
// is the dark fringe.
TwoPortScattering michelson_two_port(double fringe_offset, double arm_efficiency);

}  // namespace sqzprm

#endif
