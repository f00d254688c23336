#include "qcert/lpbound.hpp"

#include <algorithm>

#include "qcert/enumerators.hpp"

namespace qcert {

namespace {

LinearRow make_row(int n, RowSense sense, Rat rhs, std::string label) {
  return LinearRow{std::vector<Rat>(n + 1), sense, std::move(rhs), std::move(label)};
}

std::string idx(const char* name, int j) { return std::string(name) + "_" + std::to_string(j); }

}  // namespace

LPInstance build_lp(int n, long long K, int delta, CodeVariant variant) {
  check_variant_parameters(n, K, delta, variant);
  LPInstance lp{n, K, delta, variant, {}, {}};
  for (int j = 0; j <= n; ++j) lp.variables.push_back(idx("A", j));

  // rows are scaled by 2^n so that B_j and S_j expansions are integral
  std::vector<std::vector<Rat>> kraw(n + 1, std::vector<Rat>(n + 1));
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i) kraw[j][i] = krawtchouk(j, i, n);
  Rat two_n(power(2, n));
  Rat k_rat = to_rat(K);

  auto a0 = make_row(n, RowSense::equal, k_rat * k_rat, "A_0 = K^2");
  a0.coeffs[0] = 1;
  lp.rows.push_back(a0);
  for (int j = 1; j <= n; ++j) {
    auto r = make_row(n, RowSense::greater_equal, 0, idx("A", j) + " >= 0");
    r.coeffs[j] = 1;
    lp.rows.push_back(r);
  }
  for (int j = 0; j <= n; ++j) {
    auto r = make_row(n, RowSense::greater_equal, 0, idx("S", j) + " >= 0");
    for (int i = 0; i <= n; ++i) r.coeffs[i] = i % 2 ? Rat(-kraw[j][i]) : kraw[j][i];
    lp.rows.push_back(r);
  }
  for (int j = 0; j <= n; ++j) {
    bool kl = j < delta;
    auto r = make_row(n, kl ? RowSense::equal : RowSense::greater_equal, 0,
                      "K*" + idx("B", j) + (kl ? " = " : " >= ") + idx("A", j));
    for (int i = 0; i <= n; ++i) r.coeffs[i] = k_rat * kraw[j][i];
    r.coeffs[j] -= two_n;
    lp.rows.push_back(r);
  }

  bool pure = variant == CodeVariant::pure || variant == CodeVariant::selfdual || K == 1;
  if (pure) {
    for (int j = 1; j < delta; ++j) {
      auto r = make_row(n, RowSense::equal, 0, idx("A", j) + " = 0 (pure)");
      r.coeffs[j] = 1;
      lp.rows.push_back(r);
    }
  }
  if (K == 1) {
    for (int j = 0; j <= n; ++j) {
      if ((n - j) % 2 == 1) {
        auto r = make_row(n, RowSense::equal, 0, idx("S", j) + " = 0 (n-j odd)");
        for (int i = 0; i <= n; ++i) r.coeffs[i] = i % 2 ? Rat(-kraw[j][i]) : kraw[j][i];
        lp.rows.push_back(r);
      }
    }
    for (int j = delta; j <= n; ++j) {
      auto r = make_row(n, RowSense::equal, 0, idx("B", j) + " = " + idx("A", j) + " (K = 1)");
      for (int i = 0; i <= n; ++i) r.coeffs[i] = kraw[j][i];
      r.coeffs[j] -= two_n;
      lp.rows.push_back(r);
    }
  }
  if (variant == CodeVariant::additive_I || variant == CodeVariant::additive_II) {
    Rat target = k_rat * two_n;
    if (variant == CodeVariant::additive_I) target /= 2;
    auto r = make_row(n, RowSense::equal, target,
                      variant == CodeVariant::additive_I ? "sum even A_j = K 2^(n-1) (type I)"
                                                         : "sum even A_j = K 2^n (type II)");
    for (int j = 0; j <= n; j += 2) r.coeffs[j] = 1;
    lp.rows.push_back(r);
  }
  return lp;
}

namespace {

struct Search {
  int n;
  int delta;
  CodeVariant variant;
  BoundResult* result;

  LpCheck check(long long K) {
    LpCheck c{K, build_lp(n, K, delta, variant), {}};
    c.verdict = solve_feasibility(c.lp);
    ++result->lp_solves;
    return c;
  }
};

BoundResult search_integer(int n, int delta, CodeVariant variant) {
  BoundResult res;
  res.variant = variant;
  Search s{n, delta, variant, &res};
  long long cap = variant == CodeVariant::selfdual ? 1 : (1LL << n);
  LpCheck top = s.check(cap);
  if (top.verdict.feasible) {
    res.K = cap;
    res.attained = std::move(top);
    return res;
  }
  // descend by halving until feasible, then bisect (lo feasible, hi infeasible)
  LpCheck hi = std::move(top);
  std::optional<LpCheck> lo;
  while (hi.K > 1) {
    LpCheck c = s.check(hi.K / 2);
    if (c.verdict.feasible) {
      lo = std::move(c);
      break;
    }
    hi = std::move(c);
  }
  if (!lo) {
    res.K = 0;
    res.exclusions.push_back(std::move(hi));
    return res;
  }
  while (hi.K - lo->K > 1) {
    LpCheck c = s.check(lo->K + (hi.K - lo->K) / 2);
    if (c.verdict.feasible) lo = std::move(c);
    else hi = std::move(c);
  }
  res.K = lo->K;
  res.attained = std::move(lo);
  res.exclusions.push_back(std::move(hi));
  return res;
}

BoundResult search_power(int n, int delta, CodeVariant variant) {
  BoundResult res;
  res.variant = variant;
  Search s{n, delta, variant, &res};
  std::optional<LpCheck> above;
  for (int k = n; k >= 0; --k) {
    LpCheck c = s.check(1LL << k);
    if (c.verdict.feasible) {
      res.K = 1LL << k;
      res.attained = std::move(c);
      break;
    }
    above = std::move(c);
  }
  if (above) res.exclusions.push_back(std::move(*above));
  return res;
}

}  // namespace

BoundResult max_k(int n, int delta, CodeVariant variant) {
  if (variant == CodeVariant::additive_any) {
    BoundResult one = search_power(n, delta, CodeVariant::additive_I);
    BoundResult two = search_power(n, delta, CodeVariant::additive_II);
    BoundResult res;
    res.variant = variant;
    res.K = std::max(one.K, two.K);
    res.attained = std::move(one.K >= two.K ? one.attained : two.attained);
    res.lp_solves = one.lp_solves + two.lp_solves;
    long long next = res.K == 0 ? 1 : 2 * res.K;
    if (next <= (1LL << n)) {
      Search s1{n, delta, CodeVariant::additive_I, &res};
      Search s2{n, delta, CodeVariant::additive_II, &res};
      res.exclusions.push_back(s1.check(next));
      res.exclusions.push_back(s2.check(next));
    }
    return res;
  }
  if (is_additive(variant)) return search_power(n, delta, variant);
  return search_integer(n, delta, variant);
}

}  // namespace qcert
