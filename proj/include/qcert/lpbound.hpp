#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qcert/exactfield.hpp"
#include "qcert/variant.hpp"

namespace qcert {

enum class RowSense { equal, greater_equal };

struct LinearRow {
  std::vector<Rat> coeffs;
  RowSense sense = RowSense::equal;
  Rat rhs;
  std::string label;
};

struct LPInstance {
  int n = 0;
  long long K = 0;
  int delta = 0;
  CodeVariant variant = CodeVariant::general;
  std::vector<std::string> variables;
  std::vector<LinearRow> rows;
};

struct FeasibilityVerdict {
  bool feasible = false;
  std::vector<Rat> witness;  // when feasible
  std::vector<Rat> farkas;   // when infeasible: one multiplier per row, combination constant 1
};

// Rows over A_0..A_n. K = 1 is treated as a self-dual (pure) state for every variant.
// additive_any has no single linear form; its instance carries the general rows only.
LPInstance build_lp(int n, long long K, int delta, CodeVariant variant);

bool satisfies(const LPInstance& lp, const std::vector<Rat>& x);
// sum y_r * row_r has zero coefficients, y_r >= 0 on inequality rows and sum y_r * rhs_r > 0
bool certifies_infeasibility(const LPInstance& lp, const std::vector<Rat>& y);

// Exact phase-one simplex with Bland's rule. Verdicts are re-verified before return.
FeasibilityVerdict solve_feasibility(const LPInstance& lp);
FeasibilityVerdict solve_feasibility(const std::vector<LinearRow>& rows, std::size_t num_vars);

struct LpCheck {
  long long K = 0;
  LPInstance lp;
  FeasibilityVerdict verdict;
};

struct BoundResult {
  long long K = 0;  // 0 if no K >= 1 is feasible
  CodeVariant variant = CodeVariant::general;
  std::optional<LpCheck> attained;  // feasible instance at K
  std::vector<LpCheck> exclusions;  // infeasible instances just above K
  int lp_solves = 0;
};

BoundResult max_k(int n, int delta, CodeVariant variant);

}  // namespace qcert
