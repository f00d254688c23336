#include <algorithm>
#include <json.hpp>
#include <map>
#include <ostream>
#include <stdexcept>

#include "qcert/terwilliger.hpp"

namespace qcert {

std::size_t PrimalSDP::variable_index(const IndexQuad& q) const {
  auto it = std::lower_bound(variables.begin(), variables.end(), q);
  if (it == variables.end() || *it != q) throw std::out_of_range("quad not in I(n): " + to_string(q));
  return static_cast<std::size_t>(it - variables.begin());
}

namespace {

std::string xname(const IndexQuad& q) { return "x[" + to_string(q) + "]"; }

}  // namespace

PrimalSDP build_primal_sdp(int n, long long K, int delta, CodeVariant variant, const PrimalOptions& opts) {
  check_variant_parameters(n, K, delta, variant);
  PrimalSDP sdp;
  sdp.n = n;
  sdp.K = K;
  sdp.delta = delta;
  sdp.variant = variant;
  sdp.variables = index_set(n);
  const std::size_t nv = sdp.variables.size();
  std::vector<Rat> gamma(nv);
  for (std::size_t v = 0; v < nv; ++v) gamma[v] = orbit_size(sdp.variables[v], n);

  auto row = [&](RowSense sense, Rat rhs, std::string label) {
    sdp.rows.push_back(SparseRow{{}, sense, std::move(rhs), std::move(label)});
    return &sdp.rows.back().coeffs;
  };
  auto col = [&](int i, int j, int t, int p) { return sdp.variable_index({i, j, t, p}); };
  Rat two_n(power(2, n));
  Rat k_rat = to_rat(K);

  (*row(RowSense::equal, 1, "x[0,0,0,0] = 1"))[col(0, 0, 0, 0)] = 1;

  for (std::size_t v = 0; v < nv; ++v) {
    const auto& q = sdp.variables[v];
    auto rep = canonical_class(q, n);
    if (!rep) {
      (*row(RowSense::equal, 0, xname(q) + " = 0 (t-p odd)"))[v] = 1;
    } else if (*rep != q) {
      auto* c = row(RowSense::equal, 0, xname(q) + " = " + xname(*rep) + " (permutation class)");
      (*c)[v] = 1;
      (*c)[sdp.variable_index(*rep)] = -1;
    }
  }

  for (int k = 0; k <= n; ++k) {
    auto* c = row(RowSense::equal, 0, "projector k=" + std::to_string(k));
    for (std::size_t v = 0; v < nv; ++v)
      if (sdp.variables[v].d() == k) (*c)[v] += gamma[v];
    std::size_t diag = col(k, 0, 0, 0);
    (*c)[diag] -= two_n / k_rat * gamma[diag];
  }

  // A_i(rho) = gamma^{0,0}_{i,0} x^{0,0}_{i,0}; j = 0 is the trace row
  auto a_of = [&](int i) { return col(i, 0, 0, 0); };
  for (int j = 0; j < delta; ++j) {
    auto* c = row(RowSense::equal, 0, "Knill-Laflamme j=" + std::to_string(j));
    for (int i = 0; i <= n; ++i) (*c)[a_of(i)] += k_rat / two_n * krawtchouk(j, i, n) * gamma[a_of(i)];
    (*c)[a_of(j)] -= gamma[a_of(j)];
  }

  if (is_pure_like(variant)) {
    for (std::size_t v = 0; v < nv; ++v) {
      const auto& q = sdp.variables[v];
      auto low = [&](int w) { return w > 0 && w < delta; };
      if (low(q.i) || low(q.j) || low(q.d())) (*row(RowSense::equal, 0, xname(q) + " = 0 (pure)"))[v] = 1;
    }
  }

  if (variant == CodeVariant::selfdual) {
    auto lam = [&](int i) { return col(i, i, i, i); };
    for (int j = 0; j <= n; ++j) {
      if ((n - j) % 2 == 1) {
        auto* c = row(RowSense::equal, 0, "shadow S_" + std::to_string(j) + " = 0 (n-j odd)");
        for (int i = 0; i <= n; ++i) {
          Rat v = krawtchouk(j, i, n) * gamma[lam(i)];
          (*c)[lam(i)] += i % 2 ? Rat(-v) : v;
        }
      }
    }
    for (int j = 0; j <= n; ++j) {
      auto* c = row(RowSense::equal, 0, "self-dual B_" + std::to_string(j) + " = A_" + std::to_string(j));
      for (int i = 0; i <= n; ++i) (*c)[lam(i)] += k_rat / two_n * krawtchouk(j, i, n) * gamma[lam(i)];
      (*c)[lam(j)] -= gamma[lam(j)];
    }
  }

  if (is_additive(variant)) {
    for (std::size_t v = 0; v < nv; ++v)
      (*row(RowSense::greater_equal, 0, xname(sdp.variables[v]) + " >= 0 (additive)"))[v] = 1;
    if (variant != CodeVariant::additive_any) {
      Rat target = two_n / k_rat;
      if (variant == CodeVariant::additive_I) target /= 2;
      auto* c = row(RowSense::equal, target,
                    variant == CodeVariant::additive_I ? "type I parity" : "type II parity");
      for (int j = 0; j <= n; j += 2) (*c)[col(j, j, j, j)] = gamma[col(j, j, j, j)];
    }
  }

  if (opts.lp_side_constraints) {
    for (int j = 0; j <= n; ++j) {
      auto* kb = row(RowSense::greater_equal, 0, "K B_" + std::to_string(j) + " >= A_" + std::to_string(j));
      for (int i = 0; i <= n; ++i) (*kb)[a_of(i)] += k_rat / two_n * krawtchouk(j, i, n) * gamma[a_of(i)];
      (*kb)[a_of(j)] -= gamma[a_of(j)];
      auto* sh = row(RowSense::greater_equal, 0, "S_" + std::to_string(j) + " >= 0");
      for (int i = 0; i <= n; ++i) {
        Rat v = krawtchouk(j, i, n) * gamma[a_of(i)];
        (*sh)[a_of(i)] += i % 2 ? Rat(-v) : v;
      }
    }
  }

  for (auto& r : sdp.rows) std::erase_if(r.coeffs, [](const auto& kv) { return sgn(kv.second) == 0; });

  for (const auto& b : block_indices(n)) {
    PrimalBlock pb{b, block_labels(b, n, delta, variant), {}};
    if (pb.labels.empty()) continue;
    pb.entries.resize(pb.labels.size() * (pb.labels.size() + 1) / 2);
    sdp.blocks.push_back(std::move(pb));
  }
  std::map<BlockIndex, std::size_t> position;
  for (std::size_t i = 0; i < sdp.blocks.size(); ++i) position[sdp.blocks[i].index] = i;
  for (std::size_t v = 0; v < nv; ++v) {
    const auto& q = sdp.variables[v];
    if (q.i < q.j) continue;
    for (auto& term : alpha_terms(q, n)) {
      auto it = position.find(term.block);
      if (it == position.end()) continue;
      auto& pb = sdp.blocks[it->second];
      auto r = std::find(pb.labels.begin(), pb.labels.end(), q.i);
      auto c = std::find(pb.labels.begin(), pb.labels.end(), q.j);
      if (r == pb.labels.end() || c == pb.labels.end()) continue;
      std::size_t packed = SymMatrixQ::packed_index(r - pb.labels.begin(), c - pb.labels.begin());
      pb.entries[packed].terms.emplace_back(v, std::move(term.coeff));
    }
  }
  return sdp;
}

bool row_holds(const SparseRow& row, const std::vector<Rat>& point) {
  Rat lhs = 0;
  for (const auto& [v, c] : row.coeffs) lhs += c * point.at(v);
  int s = cmp(lhs, row.rhs);
  return row.sense == RowSense::equal ? s == 0 : s >= 0;
}

std::vector<Rat> primal_point(const PrimalSDP& sdp, const std::map<IndexQuad, Rat>& x) {
  std::vector<Rat> out(sdp.variables.size());
  for (std::size_t v = 0; v < out.size(); ++v) {
    auto rep = canonical_class(sdp.variables[v], sdp.n);
    if (!rep) continue;
    auto it = x.find(*rep);
    if (it == x.end()) throw std::out_of_range("no value for class " + to_string(*rep));
    out[v] = it->second;
  }
  return out;
}

std::vector<SymMatrixQ> evaluate_primal_blocks(const PrimalSDP& sdp, const std::vector<Rat>& point) {
  std::vector<SymMatrixQ> out;
  for (const auto& pb : sdp.blocks) {
    SymMatrixQ m(pb.labels.size());
    for (std::size_t e = 0; e < pb.entries.size(); ++e)
      for (const auto& [v, coeff] : pb.entries[e].terms)
        if (sgn(point[v]) != 0) m.packed()[e] += coeff * QExt(point[v]);
    out.push_back(std::move(m));
  }
  return out;
}

namespace {

nlohmann::ordered_json qext_json(const QExt& v) {
  return nlohmann::ordered_json::array({to_string(v.rational()), to_string(v.surd())});
}

}  // namespace

void write_primal_json(const PrimalSDP& sdp, std::ostream& out) {
  nlohmann::ordered_json j;
  j["version"] = 1;
  j["n"] = sdp.n;
  j["K"] = sdp.K;
  j["delta"] = sdp.delta;
  j["variant"] = to_string(sdp.variant);
  j["field"] = nlohmann::ordered_json::array({"sqrt", 3});
  j["beta_orientation"] = beta_orientation;
  auto vars = nlohmann::ordered_json::array();
  for (const auto& q : sdp.variables) vars.push_back(to_string(q));
  j["variables"] = vars;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& r : sdp.rows) {
    nlohmann::ordered_json row;
    row["label"] = r.label;
    row["sense"] = r.sense == RowSense::equal ? "=" : ">=";
    auto coeffs = nlohmann::ordered_json::object();
    for (const auto& [v, c] : r.coeffs) coeffs[std::to_string(v)] = to_string(c);
    row["coeffs"] = coeffs;
    row["rhs"] = to_string(r.rhs);
    rows.push_back(row);
  }
  j["rows"] = rows;
  auto blocks = nlohmann::ordered_json::array();
  for (const auto& pb : sdp.blocks) {
    nlohmann::ordered_json b;
    b["block"] = to_string(pb.index);
    b["labels"] = pb.labels;
    auto entries = nlohmann::ordered_json::array();
    for (const auto& e : pb.entries) {
      auto terms = nlohmann::ordered_json::object();
      for (const auto& [v, c] : e.terms) terms[std::to_string(v)] = qext_json(c);
      entries.push_back(terms);
    }
    b["entries"] = entries;
    blocks.push_back(b);
  }
  j["blocks"] = blocks;
  out << j.dump(1) << '\n';
}

}  // namespace qcert
