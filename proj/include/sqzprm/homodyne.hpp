#ifndef SQZPRM_HOMODYNE_HPP
#define SQZPRM_HOMODYNE_HPP

namespace sqzprm
{

struct HomodyneSpec
{
    double quantum_efficiency = 1.0;
    double fringe_visibility = 1.0;

    bool operator==(const HomodyneSpec&) const = default;
};

void validate(const HomodyneSpec& spec);

// Detection efficiency seen by the measured quadrature: QE * visibility^2.
double homodyne_efficiency(const HomodyneSpec& spec);

}  // namespace sqzprm

#endif
