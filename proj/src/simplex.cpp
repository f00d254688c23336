#include <stdexcept>

#include "qcert/lpbound.hpp"

namespace qcert {

namespace {

bool rows_satisfied(const std::vector<LinearRow>& rows, const std::vector<Rat>& x) {
  for (const auto& row : rows) {
    Rat lhs = 0;
    for (std::size_t j = 0; j < row.coeffs.size(); ++j)
      if (sgn(row.coeffs[j]) != 0) lhs += row.coeffs[j] * x[j];
    int c = cmp(lhs, row.rhs);
    if (row.sense == RowSense::equal ? c != 0 : c < 0) return false;
  }
  return true;
}

bool rows_refuted(const std::vector<LinearRow>& rows, std::size_t num_vars, const std::vector<Rat>& y) {
  if (y.size() != rows.size()) return false;
  std::vector<Rat> combo(num_vars);
  Rat constant = 0;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].sense == RowSense::greater_equal && sgn(y[r]) < 0) return false;
    if (sgn(y[r]) == 0) continue;
    for (std::size_t j = 0; j < num_vars; ++j)
      if (sgn(rows[r].coeffs[j]) != 0) combo[j] += y[r] * rows[r].coeffs[j];
    constant += y[r] * rows[r].rhs;
  }
  for (const auto& c : combo)
    if (sgn(c) != 0) return false;
  return sgn(constant) > 0;
}

}  // namespace

bool satisfies(const LPInstance& lp, const std::vector<Rat>& x) {
  return x.size() == lp.variables.size() && rows_satisfied(lp.rows, x);
}

bool certifies_infeasibility(const LPInstance& lp, const std::vector<Rat>& y) {
  return rows_refuted(lp.rows, lp.variables.size(), y);
}

FeasibilityVerdict solve_feasibility(const LPInstance& lp) { return solve_feasibility(lp.rows, lp.variables.size()); }

FeasibilityVerdict solve_feasibility(const std::vector<LinearRow>& rows, std::size_t num_vars) {
  const std::size_t m = rows.size();
  const std::size_t nv = num_vars;
  std::vector<std::size_t> slack_col(m, SIZE_MAX);
  std::size_t cols = 2 * nv;
  for (std::size_t r = 0; r < m; ++r) {
    if (rows[r].coeffs.size() != nv) throw std::invalid_argument("row length mismatch in LP");
    if (rows[r].sense == RowSense::greater_equal) slack_col[r] = cols++;
  }
  const std::size_t art0 = cols;
  cols += m;
  const std::size_t rhs = cols;

  // columns: x+ | x- | slacks | artificials | rhs
  std::vector<std::vector<Rat>> t(m, std::vector<Rat>(cols + 1));
  std::vector<int> flip(m, 1);
  std::vector<std::size_t> basis(m);
  for (std::size_t r = 0; r < m; ++r) {
    flip[r] = sgn(rows[r].rhs) < 0 ? -1 : 1;
    for (std::size_t j = 0; j < nv; ++j) {
      t[r][j] = flip[r] * rows[r].coeffs[j];
      t[r][nv + j] = -t[r][j];
    }
    if (slack_col[r] != SIZE_MAX) t[r][slack_col[r]] = -flip[r];
    t[r][art0 + r] = 1;
    t[r][rhs] = flip[r] * rows[r].rhs;
    basis[r] = art0 + r;
  }
  std::vector<Rat> cost(cols + 1);
  for (std::size_t j = 0; j < art0; ++j)
    for (std::size_t r = 0; r < m; ++r) cost[j] -= t[r][j];
  for (std::size_t r = 0; r < m; ++r) cost[rhs] -= t[r][rhs];

  for (;;) {
    std::size_t enter = SIZE_MAX;
    for (std::size_t j = 0; j < rhs; ++j)
      if (sgn(cost[j]) < 0) {
        enter = j;
        break;
      }
    if (enter == SIZE_MAX) break;
    std::size_t leave = SIZE_MAX;
    Rat best;
    for (std::size_t r = 0; r < m; ++r) {
      if (sgn(t[r][enter]) <= 0) continue;
      Rat ratio = t[r][rhs] / t[r][enter];
      if (leave == SIZE_MAX || ratio < best || (ratio == best && basis[r] < basis[leave])) {
        leave = r;
        best = ratio;
      }
    }
    if (leave == SIZE_MAX) throw std::logic_error("unbounded phase-one problem");
    Rat piv = t[leave][enter];
    for (auto& v : t[leave])
      if (sgn(v) != 0) v /= piv;
    auto eliminate = [&](std::vector<Rat>& row) {
      if (sgn(row[enter]) == 0) return;
      Rat f = row[enter];
      for (std::size_t j = 0; j <= rhs; ++j)
        if (sgn(t[leave][j]) != 0) row[j] -= f * t[leave][j];
    };
    for (std::size_t r = 0; r < m; ++r)
      if (r != leave) eliminate(t[r]);
    eliminate(cost);
    basis[leave] = enter;
  }

  FeasibilityVerdict out;
  if (sgn(cost[rhs]) == 0) {
    out.feasible = true;
    out.witness.assign(nv, Rat(0));
    for (std::size_t r = 0; r < m; ++r) {
      if (basis[r] < nv) out.witness[basis[r]] += t[r][rhs];
      else if (basis[r] < 2 * nv) out.witness[basis[r] - nv] -= t[r][rhs];
    }
    if (!rows_satisfied(rows, out.witness)) throw std::logic_error("simplex witness fails verification");
    return out;
  }
  out.feasible = false;
  out.farkas.resize(m);
  Rat constant = 0;
  for (std::size_t r = 0; r < m; ++r) {
    out.farkas[r] = (1 - cost[art0 + r]) * flip[r];
    constant += out.farkas[r] * rows[r].rhs;
  }
  for (auto& y : out.farkas) y /= constant;
  if (!rows_refuted(rows, nv, out.farkas)) throw std::logic_error("Farkas multipliers fail verification");
  return out;
}

}  // namespace qcert
