#include "sqzprm/optics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace sqzprm
{
namespace
{

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kFractionSlack = 1e-12;

void require_fraction(double x, const char* what)
{
    if (!(x >= 0.0 && x <= 1.0))
        throw std::invalid_argument(std::string(what) + " must lie in [0, 1], got " + std::to_string(x));
}

}  // namespace

double MirrorSpec::amplitude_reflectivity() const
{
    return std::sqrt(power_reflectivity);
}

double MirrorSpec::amplitude_transmissivity() const
{
    return std::sqrt(std::max(0.0, transmissivity()));
}

double CavitySpec::effective_back_reflectivity() const
{
    return back_reflectivity_amplitude * std::sqrt(1.0 - round_trip_loss);
}

void validate(const MirrorSpec& mirror)
{
    require_fraction(mirror.power_reflectivity, "mirror power_reflectivity");
    require_fraction(mirror.power_loss, "mirror power_loss");
    if (mirror.transmissivity() < -kFractionSlack)
        throw std::invalid_argument("mirror power_reflectivity + power_loss exceeds 1");
}

void validate(const CavitySpec& cavity)
{
    if (!(cavity.length > 0.0) || !std::isfinite(cavity.length))
        throw std::invalid_argument("cavity length must be positive");
    validate(cavity.input_mirror);
    require_fraction(cavity.back_reflectivity_amplitude, "cavity back_reflectivity_amplitude");
    require_fraction(cavity.round_trip_loss, "cavity round_trip_loss");
}

double free_spectral_range(double length)
{
    if (!(length > 0.0))
        throw std::invalid_argument("free_spectral_range requires a positive length");
    return kSpeedOfLight / (2.0 * length);
}

Complex propagation_phase(SidebandFrequency omega, double path)
{
    return std::polar(1.0, kTwoPi * omega.omega * path / kSpeedOfLight);
}

CavityResponse cavity_response(const CavitySpec& cavity, SidebandFrequency omega)
{
    validate(cavity);
    const double r1 = cavity.input_mirror.amplitude_reflectivity();
    const double t1 = cavity.input_mirror.amplitude_transmissivity();
    const double r2 = cavity.effective_back_reflectivity();
    const double t2 = std::sqrt(std::max(0.0, 1.0 - cavity.back_reflectivity_amplitude *
                                                        cavity.back_reflectivity_amplitude));
    const Complex round_trip = propagation_phase(omega, 2.0 * cavity.length);
    const Complex one_way = propagation_phase(omega, cavity.length);
    const Complex denom = 1.0 - r1 * r2 * round_trip;
    return {(-r1 + r2 * round_trip) / denom, t1 * t2 * one_way / denom};
}

Complex cavity_reflection(const CavitySpec& cavity, SidebandFrequency omega)
{
    return cavity_response(cavity, omega).reflection;
}

double cavity_buildup(const CavitySpec& cavity)
{
    validate(cavity);
    const double product = cavity.input_mirror.amplitude_reflectivity() * cavity.effective_back_reflectivity();
    if (product >= 1.0)
        throw std::domain_error("cavity buildup diverges (r1 * r2' = 1)");
    const double gap = 1.0 - product;
    return cavity.input_mirror.transmissivity() / (gap * gap);
}

double cavity_half_linewidth(const CavitySpec& cavity)
{
    validate(cavity);
    const double product = cavity.input_mirror.amplitude_reflectivity() * cavity.effective_back_reflectivity();
    if (!(product > 0.0) || product >= 1.0)
        throw std::domain_error("cavity has no finite resonance linewidth");
    const double fsr = free_spectral_range(cavity.length);
    const double arg = (1.0 - product) / (2.0 * std::sqrt(product));
    if (arg >= 1.0)  // dip never recovers to half depth before anti-resonance
        return fsr / 2.0;
    return fsr / std::numbers::pi * std::asin(arg);
}

TwoPortScattering michelson_two_port(double fringe_offset, double arm_efficiency)
{
    require_fraction(arm_efficiency, "arm_efficiency");
    const double amp = std::sqrt(arm_efficiency);
    const Complex direct = amp * std::cos(fringe_offset);
    const Complex cross = Complex{0.0, amp * std::sin(fringe_offset)};
    TwoPortScattering out;
    out.s = {{{direct, cross}, {cross, direct}}};
    return out;
}

double TwoPortScattering::unitarity_defect() const
{
    double worst = 0.0;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            Complex sum = 0.0;
            for (int k = 0; k < 2; ++k)
                sum += std::conj(s[k][i]) * s[k][j];
            worst = std::max(worst, std::abs(sum - (i == j ? 1.0 : 0.0)));
        }
    }
    return worst;
}

}  // namespace sqzprm
