#include <algorithm>
#include <numeric>

#include "qcert/numeric.hpp"

namespace qcert {

void RoundingPolicy::validate() const {
  if (max_attempts < 1) throw std::invalid_argument("max attempts must be at least 1");
  if (denominator_schedule.empty()) throw std::invalid_argument("empty denominator schedule");
  for (std::size_t i = 0; i < denominator_schedule.size(); ++i) {
    if (denominator_schedule[i] < 1) throw std::invalid_argument("denominator bounds must be positive");
    if (i > 0 && denominator_schedule[i] <= denominator_schedule[i - 1])
      throw std::invalid_argument("denominator schedule must be strictly increasing");
  }
  if (sgn(projection_tolerance) <= 0) throw std::invalid_argument("projection tolerance must be positive");
}

Rat best_rational_approximation(const Rat& x, const BigInt& max_denominator) {
  if (max_denominator < 1) throw std::invalid_argument("denominator bound must be positive");
  if (x.get_den() <= max_denominator) return x;
  BigInt p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  Rat r = x;
  for (;;) {
    BigInt a;
    mpz_fdiv_q(a.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    BigInt q2 = q0 + a * q1;
    if (q2 > max_denominator) {
      BigInt k = (max_denominator - q0) / q1;
      Rat semi(BigInt(p0 + k * p1), BigInt(q0 + k * q1));
      Rat conv(p1, q1);
      semi.canonicalize();
      conv.canonicalize();
      return abs(semi - x) < abs(conv - x) ? semi : conv;
    }
    BigInt p2 = p0 + a * p1;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    Rat frac = r - Rat(a);
    if (sgn(frac) == 0) break;
    r = 1 / frac;
  }
  Rat out(p1, q1);
  out.canonicalize();
  return out;
}

namespace {

struct Pivot {
  std::size_t column;
  std::map<std::size_t, Rat> others;  // u_column = -sum others[c] * u_c
};

// Gauss-Jordan over Q visiting columns in the given priority order.
std::vector<Pivot> reduce(std::vector<std::map<std::size_t, Rat>> rows, const std::vector<std::size_t>& order) {
  std::vector<bool> used(rows.size(), false);
  std::vector<std::pair<std::size_t, std::size_t>> pivots;  // column, row
  for (std::size_t col : order) {
    std::optional<std::size_t> best;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (used[i] || !rows[i].count(col)) continue;
      if (!best || rows[i].size() < rows[*best].size()) best = i;
    }
    if (!best) continue;
    used[*best] = true;
    auto& prow = rows[*best];
    Rat lead = prow.at(col);
    for (auto& [c, v] : prow) v /= lead;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == *best) continue;
      auto it = rows[i].find(col);
      if (it == rows[i].end()) continue;
      Rat f = it->second;
      for (const auto& [c, v] : prow) {
        auto& e = rows[i][c];
        e -= f * v;
        if (sgn(e) == 0) rows[i].erase(c);
      }
    }
    pivots.emplace_back(col, *best);
  }
  std::vector<Pivot> out;
  for (const auto& [col, r] : pivots) {
    Pivot p{col, rows[r]};
    p.others.erase(col);
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace

std::variant<Certificate, RoundingFailed> round_to_exact(const DualInstance& inst, const NumericPoint& pt,
                                                         const RoundingPolicy& policy) {
  policy.validate();
  if (pt.values.size() != inst.coords.size()) throw std::invalid_argument("numeric point does not match the instance");
  PrecisionGuard guard(std::max(pt.precision, 20u));
  RoundingFailed failed;

  // the constraints are homogeneous: scale so the largest unknown has magnitude 1
  const std::size_t nc = inst.coords.size();
  std::vector<Real> scaled(nc);
  Real largest(0);
  for (std::size_t c = 0; c < nc; ++c) {
    scaled[c] = pt.values[c] / real_value(coordinate_scale(inst, c));
    largest = std::max(largest, Real(abs(scaled[c])));
  }
  if (!(largest > 0)) {
    failed.reason = "numeric point is zero";
    return failed;
  }
  // bounds too coarse to resolve the objective are skipped
  std::size_t first = 0;
  if (policy.require_margin) {
    const auto& sched = policy.denominator_schedule;
    Real ratio = pt.objective / largest;
    while (first < sched.size() && !(ratio > Real(1) / real_value(QExt(Rat(sched[first]))))) ++first;
    if (first == sched.size()) {
      failed.reason = "numeric objective is not positive by the required margin";
      return failed;
    }
  }
  std::vector<Rat> target(nc);
  std::vector<double> magnitude(nc);
  for (std::size_t c = 0; c < nc; ++c) {
    Real u = scaled[c] / largest;
    target[c] = exact_value(u);
    magnitude[c] = std::abs(static_cast<double>(u));
  }
  std::vector<std::size_t> order(nc);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return magnitude[a] > magnitude[b]; });
  const auto pivots = reduce(rational_equality_rows(inst), order);
  std::vector<bool> is_pivot(nc, false);
  for (const auto& p : pivots) is_pivot[p.column] = true;

  const std::size_t last = std::min(policy.denominator_schedule.size(), first + std::size_t(policy.max_attempts));
  for (std::size_t a = first; a < last; ++a) {
    const BigInt& bound = policy.denominator_schedule[a];
    ++failed.attempts;
    std::vector<Rat> u(nc);
    for (std::size_t c = 0; c < nc; ++c)
      if (!is_pivot[c]) u[c] = best_rational_approximation(target[c], bound);
    Rat moved = 0;
    for (const auto& p : pivots) {
      Rat v = 0;
      for (const auto& [c, f] : p.others) v -= f * u[c];
      u[p.column] = v;
      moved = std::max(moved, Rat(abs(v - target[p.column])));
    }
    if (moved > policy.projection_tolerance) {
      failed.reason = "projection moved a pivot entry by " + std::to_string(to_double(moved));
      continue;
    }
    std::vector<QExt> values(nc);
    for (std::size_t c = 0; c < nc; ++c) values[c] = coordinate_scale(inst, c) * QExt(u[c]);
    Certificate cert = certificate_from_coordinates(inst, values);
    Verdict v = verify_certificate(inst, cert);
    int s = sign(v.objective);
    if (!failed.best_objective_sign || s > *failed.best_objective_sign) failed.best_objective_sign = s;
    if (v.verified()) return cert;
    failed.reason = "candidate rejected (" + v.reason + ": " + v.location + ")";
  }
  return failed;
}

}  // namespace qcert
