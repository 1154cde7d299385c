#ifndef SQZPRM_QUADRATURE_HPP
#define SQZPRM_QUADRATURE_HPP

// Quadrature noise algebra. All variances are normalized so that the
// vacuum (shot-noise limit) has unit variance in every quadrature.

namespace sqzprm
{

// Noise level in dB relative to the shot-noise limit (0 dB = SNL).
struct NoiseVarianceDb
{
    double value = 0.0;
};

double db_to_linear(NoiseVarianceDb x);
NoiseVarianceDb linear_to_db(double variance);

// Symmetric 2x2 covariance of the (amplitude, phase) quadratures.
// Invariants: v_plus > 0, v_minus > 0, v_plus*v_minus - correlation^2 >= 1.
class QuadratureCovariance
{
public:
    QuadratureCovariance() = default;
    QuadratureCovariance(double v_plus, double v_minus, double correlation = 0.0);

    static QuadratureCovariance vacuum() { return {}; }

    double v_plus() const { return v_plus_; }
    double v_minus() const { return v_minus_; }
    double correlation() const { return correlation_; }
    double determinant() const { return v_plus_ * v_minus_ - correlation_ * correlation_; }

    bool operator==(const QuadratureCovariance&) const = default;

private:
    double v_plus_ = 1.0;
    double v_minus_ = 1.0;
    double correlation_ = 0.0;
};

struct SqueezeSpec
{
    double suppression_db = 0.0;  // noise reduction below SNL, >= 0
    double angle = 0.0;           // radians, relative to the measured quadrature

    bool operator==(const SqueezeSpec&) const = default;
};

// Beamsplitter loss channel: v -> eta*v + (1 - eta).
QuadratureCovariance apply_loss(const QuadratureCovariance& state, double efficiency);

// Scalar form of apply_loss for a single quadrature variance.
double apply_loss(double variance, double efficiency);

// Inverse of the scalar loss channel; the variance a state must have had
// before a loss of `efficiency` to be observed as `observed`.
double remove_loss(double observed, double efficiency);

// Pure minimum-uncertainty squeezed state rotated by spec.angle.
QuadratureCovariance make_squeezed(const SqueezeSpec& spec);

// Variance of the quadrature at `angle` (0 selects v_plus).
double measured_variance(const QuadratureCovariance& state, double angle);

}  // namespace sqzprm

#endif
