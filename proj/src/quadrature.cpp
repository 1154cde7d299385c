#include "sqzprm/quadrature.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace sqzprm
{
namespace
{

// Slack for rounding in the Heisenberg check; lossy channels applied to pure
// states land exactly on det = 1 up to a few ulps.
constexpr double kHeisenbergSlack = 1e-12;

void require_efficiency(double efficiency)
{
    if (!(efficiency >= 0.0 && efficiency <= 1.0))
        throw std::invalid_argument("efficiency must lie in [0, 1], got " + std::to_string(efficiency));
}

}  // namespace

double db_to_linear(NoiseVarianceDb x)
{
    return std::pow(10.0, x.value / 10.0);
}

NoiseVarianceDb linear_to_db(double variance)
{
    if (!(variance > 0.0))
        throw std::domain_error("linear_to_db requires a positive variance ratio");
    return {10.0 * std::log10(variance)};
}

QuadratureCovariance::QuadratureCovariance(double v_plus, double v_minus, double correlation)
    : v_plus_(v_plus), v_minus_(v_minus), correlation_(correlation)
{
    if (!(v_plus > 0.0) || !(v_minus > 0.0))
        throw std::invalid_argument("quadrature variances must be positive");
    if (!std::isfinite(correlation))
        throw std::invalid_argument("quadrature correlation must be finite");
    if (determinant() < 1.0 - kHeisenbergSlack)
        throw std::invalid_argument("covariance violates the Heisenberg bound (det = " +
                                    std::to_string(determinant()) + ")");
}

double apply_loss(double variance, double efficiency)
{
    require_efficiency(efficiency);
    return efficiency * variance + (1.0 - efficiency);
}

QuadratureCovariance apply_loss(const QuadratureCovariance& state, double efficiency)
{
    require_efficiency(efficiency);
    return {apply_loss(state.v_plus(), efficiency), apply_loss(state.v_minus(), efficiency),
            efficiency * state.correlation()};
}

double remove_loss(double observed, double efficiency)
{
    if (!(efficiency > 0.0 && efficiency <= 1.0))
        throw std::invalid_argument("cannot de-embed a loss with efficiency outside (0, 1]");
    const double before = (observed - (1.0 - efficiency)) / efficiency;
    if (!(before > 0.0))
        throw std::domain_error("observed variance " + std::to_string(observed) +
                                " is below what any state could show after efficiency " +
                                std::to_string(efficiency));
    return before;
}

QuadratureCovariance make_squeezed(const SqueezeSpec& spec)
{
    if (!(spec.suppression_db >= 0.0))
        throw std::invalid_argument("squeeze suppression must be non-negative");
    const double squeezed = db_to_linear({-spec.suppression_db});
    const double anti = 1.0 / squeezed;
    const double c = std::cos(spec.angle);
    const double s = std::sin(spec.angle);
    return {c * c * squeezed + s * s * anti, s * s * squeezed + c * c * anti, (squeezed - anti) * s * c};
}

double measured_variance(const QuadratureCovariance& state, double angle)
{
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    return c * c * state.v_plus() + s * s * state.v_minus() + 2.0 * s * c * state.correlation();
}

}  // namespace sqzprm
