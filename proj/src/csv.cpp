#include "zenoscope/csv.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>

#include "zenoscope/errors.hpp"

namespace zenoscope::csv {

namespace {

struct PrecisionGuard {
  explicit PrecisionGuard(std::ostream& out) : out_(out), flags_(out.flags()), precision_(out.precision()) {
    out_ << std::setprecision(17);
    out_.unsetf(std::ios::floatfield);
  }
  ~PrecisionGuard() {
    out_.flags(flags_);
    out_.precision(precision_);
  }
  PrecisionGuard(const PrecisionGuard&) = delete;
  PrecisionGuard& operator=(const PrecisionGuard&) = delete;

 private:
  std::ostream& out_;
  std::ios::fmtflags flags_;
  std::streamsize precision_;
};

}  // namespace

void write_decay(std::ostream& out, const DecaySeries& series) {
  PrecisionGuard guard(out);
  out << "t,re_a,im_a,abs2_a\n";
  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& a = series.values[k];
    out << series.time(k) << ',' << a.real() << ',' << a.imag() << ',' << std::norm(a) << '\n';
  }
}

void write_rate_header(std::ostream& out) { out << "x,re_gamma_over_Gamma,im_gamma_over_Gamma,source\n"; }

void write_rate_rows(std::ostream& out, const RateCurve& curve) {
  PrecisionGuard guard(out);
  const double scale = curve.model.gamma > 0.0 ? curve.model.gamma : 1.0;
  for (std::size_t i = 0; i < curve.x_grid.size(); ++i) {
    out << curve.x_grid[i] << ',' << curve.values[i].real() / scale << ',' << curve.values[i].imag() / scale << ','
        << to_string(curve.source) << '\n';
  }
}

void write_trajectory(std::ostream& out, const TrajectoryRecord& record) {
  PrecisionGuard guard(out);
  out << "t,p_e,jump\n";
  for (std::size_t k = 0; k < record.times.size(); ++k) {
    out << record.times[k] << ',' << record.p_e[k] << ',' << (record.jumps[k] ? 1 : 0) << '\n';
  }
}

void write_ensemble(std::ostream& out, const EnsembleResult& ensemble) {
  PrecisionGuard guard(out);
  out << "t,p_e_mean,p_e_stderr\n";
  for (std::size_t k = 0; k < ensemble.times.size(); ++k) {
    out << ensemble.times[k] << ',' << ensemble.p_e_mean[k] << ',' << ensemble.p_e_stderr[k] << '\n';
  }
}

void write_populations(std::ostream& out, const std::vector<double>& times, const std::vector<double>& p_e) {
  PrecisionGuard guard(out);
  out << "t,p_e\n";
  for (std::size_t k = 0; k < times.size() && k < p_e.size(); ++k) out << times[k] << ',' << p_e[k] << '\n';
}

std::ofstream open_output(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw configuration_error("cannot open output file '" + path.string() + "'");
  return out;
}

}  // namespace zenoscope::csv
