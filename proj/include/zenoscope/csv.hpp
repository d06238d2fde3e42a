#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "zenoscope/lindblad.hpp"
#include "zenoscope/scaling_rates.hpp"
#include "zenoscope/trajectory.hpp"
#include "zenoscope/volterra.hpp"

namespace zenoscope::csv {

// Every writer emits floats with 17 significant digits.

/// t,re_a,im_a,abs2_a
void write_decay(std::ostream& out, const DecaySeries& series);
/// x,re_gamma_over_Gamma,im_gamma_over_Gamma,source (rows appended per curve)
void write_rate_header(std::ostream& out);
void write_rate_rows(std::ostream& out, const RateCurve& curve);
/// t,p_e,jump
void write_trajectory(std::ostream& out, const TrajectoryRecord& record);
/// t,p_e_mean,p_e_stderr
void write_ensemble(std::ostream& out, const EnsembleResult& ensemble);
/// t,p_e
void write_populations(std::ostream& out, const std::vector<double>& times, const std::vector<double>& p_e);

/// Opens `path` for writing, creating parent directories.
std::ofstream open_output(const std::filesystem::path& path);

}  // namespace zenoscope::csv
