#ifndef SQZPRM_CLI_HPP
#define SQZPRM_CLI_HPP

#include "sqzprm/scenario.hpp"

#include <iosfwd>
#include <string>

namespace sqzprm
{

struct RunOptions
{
    Variant variant = Variant::prm;
    bool squeezed = true;
};

// Each run_* returns complete CSV text: header row, comma delimiter, LF line
// endings, fixed %.12g number formatting so output is byte-stable.

// frequency_hz,v_pd_linear,v_pd_db,t_lo_sq,t_sqz_sq,t_vac_sq_total
std::string run_spectrum(const Scenario& scenario, const RunOptions& options);

// One row describing the solved operating point.
std::string run_operating_point(const Scenario& scenario, const RunOptions& options);

// Signal level, squeezed/unsqueezed noise at the signal frequency, SNR gain,
// and the high-frequency floor with and without electronic noise.
// The comparison is always squeezed against unsqueezed; options.squeezed is
// ignored.
std::string run_snr(const Scenario& scenario, const RunOptions& options);

// frequency_hz,level_dbm
std::string run_trace(const Scenario& scenario, const RunOptions& options);

// Signal level in dBm as it appears on the analyzer.
double signal_level_dbm(const Scenario& scenario, Variant variant);

// Exit codes: 0 success, 1 validation error, 2 solver failure.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sqzprm

#endif
