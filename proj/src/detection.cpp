#include "sqzprm/detection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace sqzprm
{

void validate(const HomodyneSpec& spec)
{
    if (!(spec.quantum_efficiency >= 0.0 && spec.quantum_efficiency <= 1.0))
        throw std::invalid_argument("homodyne quantum_efficiency must lie in [0, 1]");
    if (!(spec.fringe_visibility >= 0.0 && spec.fringe_visibility <= 1.0))
        throw std::invalid_argument("homodyne fringe_visibility must lie in [0, 1]");
}

double homodyne_efficiency(const HomodyneSpec& spec)
{
    validate(spec);
    return spec.quantum_efficiency * spec.fringe_visibility * spec.fringe_visibility;
}

double add_powers_dbm(double a, double b)
{
    constexpr double kNone = -std::numeric_limits<double>::infinity();
    if (a == kNone)
        return b;
    if (b == kNone)
        return a;
    // Factor out the larger term so huge level gaps do not underflow.
    const double hi = std::max(a, b);
    const double lo = std::min(a, b);
    return hi + 10.0 * std::log10(1.0 + std::pow(10.0, (lo - hi) / 10.0));
}

double subtract_electronic_noise(double total, double electronic)
{
    if (!(total > electronic))
        throw std::domain_error("cannot subtract electronic noise at " + std::to_string(electronic) +
                                " dB from a total of " + std::to_string(total) + " dB");
    if (electronic == -std::numeric_limits<double>::infinity())
        return total;
    return total + 10.0 * std::log10(1.0 - std::pow(10.0, (electronic - total) / 10.0));
}

SpectrumTrace synthesize_trace(std::span<const SpectrumPoint> model, const TraceSettings& settings,
                               std::optional<TraceSignal> signal)
{
    if (!(settings.rbw > 0.0))
        throw std::invalid_argument("trace rbw must be positive");

    SpectrumTrace trace;
    trace.rbw = settings.rbw;
    trace.vbw = settings.vbw;
    trace.reference_snl = settings.snl_ref;
    trace.electronic_floor = settings.electronic_floor;
    trace.points.reserve(model.size());
    for (const SpectrumPoint& p : model)
        trace.points.push_back({p.frequency, add_powers_dbm(settings.snl_ref + p.v_pd_db, settings.electronic_floor)});

    if (signal && !trace.points.empty()) {
        if (!(signal->frequency > 0.0))
            throw std::invalid_argument("trace signal frequency must be positive");
        std::size_t best = 0;
        double best_distance = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < trace.points.size(); ++i) {
            const double f = trace.points[i].frequency;
            const double distance = f > 0.0 ? std::abs(std::log(f / signal->frequency)) : best_distance;
            if (distance < best_distance) {
                best_distance = distance;
                best = i;
            }
        }
        trace.points[best].level = add_powers_dbm(trace.points[best].level, signal->level);
    }
    return trace;
}

}  // namespace sqzprm
