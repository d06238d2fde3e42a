#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace zenoscope::verify {

/// Outcome of one reproduction criterion: measured value against its
/// threshold, plus wall time against the budget.
struct Criterion {
  std::string id;
  std::string description;
  double value = 0.0;
  double tolerance = 0.0;
  double seconds = 0.0;
  double time_budget = 0.0;
  bool within_tolerance = false;
  /// When set, the criterion requires value >= tolerance instead of value < tolerance.
  bool lower_bound = false;

  bool passed() const { return within_tolerance && seconds < time_budget; }
  /// `PASS AC1 value=... tol=... time=...s/...s description`
  std::string line() const;
};

struct Options {
  std::uint64_t seed = 20190417;
  unsigned threads = 1;
};

/// Suite names accepted by run_suite.
const std::vector<std::string>& suite_names();

/// fig1 (decay accuracy, null-conditioned vs scaling form), fig2 (scaling
/// coincidence across widths), fig4 (ensemble vs Lindblad, Zeno ordering of
/// jump counts), rates (closed forms vs double integral), appendix-a (double
/// integral vs single-integral rate). Throws std::invalid_argument for an
/// unknown name.
std::vector<Criterion> run_suite(std::string_view suite, const Options& options = {});

// Individual criteria.
Criterion decay_accuracy();
Criterion null_conditioned_accuracy();
Criterion scaling_coincidence();
Criterion rate_closed_forms();
Criterion rate_kk_equivalence();
Criterion ensemble_vs_lindblad(const Options& options);
Criterion zeno_jump_ordering(const Options& options);

}  // namespace zenoscope::verify
