#ifndef SQZPRM_DETECTION_HPP
#define SQZPRM_DETECTION_HPP

#include "sqzprm/homodyne.hpp"
#include "sqzprm/interferometer.hpp"

#include <optional>
#include <span>
#include <vector>

namespace sqzprm
{

// Incoherent power sum of two levels in dB (dBm or dB rel. SNL alike).
// -infinity stands for "no power".
double add_powers_dbm(double a, double b);

// Removes an incoherent contribution `electronic` from `total`.
// Throws std::domain_error unless total > electronic.
double subtract_electronic_noise(double total, double electronic);

struct TracePoint
{
    double frequency = 0.0;  // Hz
    double level = 0.0;      // dBm
};

struct SpectrumTrace
{
    std::vector<TracePoint> points;
    double rbw = 0.0;  // Hz, metadata only
    double vbw = 0.0;  // Hz, metadata only
    double reference_snl = 0.0;    // dBm
    double electronic_floor = 0.0;  // dBm
};

struct TraceSignal
{
    double frequency = 0.0;  // Hz
    double level = 0.0;      // dBm
};

struct TraceSettings
{
    double snl_ref = 0.0;           // dBm of the shot-noise level
    double electronic_floor = 0.0;  // dBm, may be -infinity
    double rbw = 100e3;
    double vbw = 30.0;
};

// Expected analyzer level at every model point:
//   add_powers_dbm(snl_ref + v_pd_db, electronic_floor)
// An optional signal is power-added at the bin nearest its frequency
// (nearest in log frequency).
SpectrumTrace synthesize_trace(std::span<const SpectrumPoint> model, const TraceSettings& settings,
                               std::optional<TraceSignal> signal = std::nullopt);

}  // namespace sqzprm

#endif
