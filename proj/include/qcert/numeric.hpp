#pragma once

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/mpfr.hpp>
#include <Eigen/Dense>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "qcert/dualcert.hpp"
#include "qcert/terwilliger.hpp"

namespace qcert {

using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;
using RealMatrix = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;

struct ResourceCapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Sets the default Real precision for the lifetime of the guard.
class PrecisionGuard {
 public:
  explicit PrecisionGuard(unsigned digits);
  ~PrecisionGuard();
  PrecisionGuard(const PrecisionGuard&) = delete;
  PrecisionGuard& operator=(const PrecisionGuard&) = delete;

 private:
  unsigned saved_;
};

Rat exact_value(const Real& v);
Real real_value(const QExt& v);

// maximize <objective, x> s.t. rows(x) = rhs, PSD blocks and the LP part >= 0.
// Coordinates: packed lower triangles of the PSD blocks in order, then the LP entries.
// A coefficient on an off-diagonal coordinate multiplies the entry once (not twice).
struct StandardFormSdp {
  std::vector<std::size_t> psd_dims;
  std::size_t lp_dim = 0;
  std::vector<LinearForm> rows;
  std::vector<Rat> rhs;
  std::vector<std::string> labels;
  LinearForm objective;

  std::size_t psd_size() const;
  std::size_t size() const { return psd_size() + lp_dim; }
};

struct SolverOptions {
  unsigned precision = 30;  // decimal digits; up to 15 runs in double
  int max_iterations = 0;   // 0: 100 + 4 * precision
  std::optional<double> tolerance;  // default 10^-(precision-10), at least 1e-7 in double
};

struct SolverResult {
  enum class Status { optimal, primal_infeasible, dual_infeasible, max_iterations, numerical_failure };
  Status status = Status::numerical_failure;
  std::vector<Real> x;  // coordinates as in StandardFormSdp
  std::vector<Real> y;
  Real primal_objective;  // maximized objective at x
  Real dual_objective;
  Real primal_residual;  // max |rows(x) - rhs|
  Real dual_residual;
  int iterations = 0;
  std::vector<Real> objective_history;  // primal objective after each iteration
};

std::string to_string(SolverResult::Status s);

SolverResult solve_standard_form(const StandardFormSdp& sdp, const SolverOptions& opts = {});

// value of coordinate c = scale * (rational unknown); 1, sqrt(3) or 3 for block entries.
QExt coordinate_scale(const DualInstance& inst, std::size_t c);
// Equalities of inst in the scaled unknowns, split into rational and sqrt(3) parts.
std::vector<std::map<std::size_t, Rat>> rational_equality_rows(const DualInstance& inst);

struct NumericOptions {
  unsigned precision = 60;
  int max_iterations = 0;  // per phase; 0: 100 + 4 * precision
  std::size_t max_total_dimension = 400;  // sum of PSD block sizes
  bool center = true;  // re-solve for a well-centred point at half the optimum
};

struct NumericPoint {
  unsigned precision = 0;
  std::vector<Real> values;  // one per DualInstance coordinate
  Real objective;            // dual objective at values
  Real optimum;              // optimum of the maximization phase
  Real equality_residual;    // max |equality| at values
  Real solver_primal_residual;
  Real solver_dual_residual;
  std::vector<Real> objective_history;  // maximization phase
  int iterations = 0;
  bool converged = false;
  bool centered = false;
  std::string status;

  RealMatrix block(const DualInstance& inst, std::size_t b) const;
};

NumericPoint solve_numeric(const DualInstance& inst, const NumericOptions& opts = {});

struct RoundingPolicy {
  std::vector<BigInt> denominator_schedule{BigInt(1000), BigInt(1000000), BigInt(1000000000), BigInt("1000000000000")};
  Rat projection_tolerance{1, 1000};  // largest pivot change, point scaled to unit largest entry
  int max_attempts = 4;
  // skip bounds D with scaled objective <= 1/D; fail when no bound is left
  bool require_margin = true;

  void validate() const;  // throws std::invalid_argument
};

struct RoundingFailed {
  std::optional<int> best_objective_sign;
  int attempts = 0;
  std::string reason;
};

Rat best_rational_approximation(const Rat& x, const BigInt& max_denominator);

std::variant<Certificate, RoundingFailed> round_to_exact(const DualInstance& inst, const NumericPoint& pt,
                                                         const RoundingPolicy& policy = {});

// Linear matrix inequality sum_v x_v F_v - F_0 >= 0, minimize c.x; the SDPA layout.
struct LmiEntry {
  std::size_t matrix = 0;  // 0 is F_0
  std::size_t block = 0;
  std::size_t row = 0;  // row <= col
  std::size_t col = 0;
  QExt value;

  friend bool operator==(const LmiEntry&, const LmiEntry&) = default;
};

struct LmiModel {
  std::string source;  // "dual" or "primal"
  int n = 0;
  long long K = 0;
  int delta = 0;
  CodeVariant variant = CodeVariant::general;
  std::vector<long> block_struct;  // negative sizes are diagonal blocks
  std::vector<std::string> variable_names;
  std::vector<QExt> objective;
  std::vector<LmiEntry> entries;  // sorted

  friend bool operator==(const LmiModel&, const LmiModel&) = default;
};

LmiModel lmi_model(const DualInstance& inst);
LmiModel lmi_model(const PrimalSDP& sdp);

inline constexpr unsigned default_export_digits = 40;

std::string sdpa_text(const LmiModel& model, unsigned digits = default_export_digits);
std::string lmi_json(const LmiModel& model, unsigned digits = default_export_digits);
LmiModel lmi_from_json(const std::string& text);
std::string sidecar_path(const std::string& path);

// Writes path (SDPA sparse) and sidecar_path(path) (exact coefficients).
void export_sparse(const DualInstance& inst, const std::string& path, unsigned digits = default_export_digits);
void export_sparse(const PrimalSDP& sdp, const std::string& path, unsigned digits = default_export_digits);

}  // namespace qcert
