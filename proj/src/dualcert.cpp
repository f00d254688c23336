#include "qcert/dualcert.hpp"

#include <algorithm>

namespace qcert {

QExt evaluate(const LinearForm& form, const std::vector<QExt>& values) {
  QExt out;
  for (const auto& [c, coeff] : form)
    if (!values[c].is_zero()) out += coeff * values[c];
  return out;
}

void add_scaled(LinearForm& into, const LinearForm& form, const QExt& scale) {
  if (scale.is_zero()) return;
  for (const auto& [c, coeff] : form) {
    auto [it, fresh] = into.try_emplace(c);
    it->second += coeff * scale;
    if (it->second.is_zero()) into.erase(it);
  }
}

std::size_t DualInstance::block_coordinate(std::size_t block, std::size_t r, std::size_t c) const {
  return blocks[block].offset + SymMatrixQ::packed_index(r, c);
}

std::size_t DualInstance::block_position(const BlockIndex& b) const {
  for (std::size_t i = 0; i < blocks.size(); ++i)
    if (blocks[i].index == b) return i;
  throw std::out_of_range("no block " + to_string(b));
}

namespace {

LinearForm single(std::size_t coord, QExt coeff = QExt(1)) { return LinearForm{{coord, std::move(coeff)}}; }

LinearForm sum(std::initializer_list<const LinearForm*> forms) {
  LinearForm out;
  for (const auto* f : forms) add_scaled(out, *f, QExt(1));
  return out;
}

std::size_t add_scalar(DualInstance& inst, std::string name, bool nonneg) {
  Coordinate c;
  c.kind = Coordinate::Kind::scalar;
  c.name = std::move(name);
  c.nonnegative = nonneg;
  inst.coords.push_back(std::move(c));
  return inst.coords.size() - 1;
}

}  // namespace

DualInstance build_dual(int n, long long K, int delta, CodeVariant variant) {
  check_variant_parameters(n, K, delta, variant);
  const bool selfdual = variant == CodeVariant::selfdual;
  const bool pure = variant == CodeVariant::pure;
  const bool additive = is_additive(variant);
  Rat two_n(power(2, n));
  Rat k_rat = to_rat(K);
  if (!selfdual && two_n == 2 * k_rat)
    throw DegenerateDenominator("Q_i denominator 2^n/K - 2 vanishes at K = 2^(n-1)");

  DualInstance inst;
  inst.n = n;
  inst.K = K;
  inst.delta = delta;
  inst.variant = variant;

  std::map<BlockIndex, std::size_t> block_pos;
  for (const auto& b : block_indices(n)) {
    DualBlock db{b, block_labels(b, n, delta, variant), inst.coords.size()};
    if (db.labels.empty()) continue;
    for (std::size_t r = 0; r < db.dim(); ++r)
      for (std::size_t c = 0; c <= r; ++c) {
        Coordinate co;
        co.kind = Coordinate::Kind::block_entry;
        co.block = inst.blocks.size();
        co.row = r;
        co.col = c;
        co.name = "Y[" + to_string(b) + "](" + std::to_string(db.labels[r]) + "," + std::to_string(db.labels[c]) + ")";
        co.surd_parity = (db.labels[r] + db.labels[c]) % 2;
        inst.coords.push_back(std::move(co));
      }
    block_pos[b] = inst.blocks.size();
    inst.blocks.push_back(std::move(db));
  }

  if (!selfdual)
    for (int j = 0; j < delta; ++j) inst.c_coords.push_back(add_scalar(inst, "C_" + std::to_string(j), false));
  if (variant == CodeVariant::additive_I || variant == CodeVariant::additive_II)
    inst.g_total = add_scalar(inst, "G", false);

  const auto quads = index_set(n);
  if (additive)
    for (const auto& q : quads)
      if ((q.t - q.p) % 2 == 0) inst.g_quad[q] = add_scalar(inst, "g[" + to_string(q) + "]", true);

  for (const auto& q : quads) {
    LinearForm form;
    Rat inv_gamma = 1 / orbit_size(q, n);
    for (const auto& term : alpha_terms(q, n)) {
      auto bp = block_pos.find(term.block);
      if (bp == block_pos.end()) continue;
      const auto& labels = inst.blocks[bp->second].labels;
      auto r = std::find(labels.begin(), labels.end(), q.i);
      auto c = std::find(labels.begin(), labels.end(), q.j);
      if (r == labels.end() || c == labels.end()) continue;
      std::size_t coord = inst.block_coordinate(bp->second, r - labels.begin(), c - labels.begin());
      add_scaled(form, single(coord), term.coeff * QExt(inv_gamma));
    }
    auto g = inst.g_quad.find(q);
    if (g != inst.g_quad.end()) add_scaled(form, single(g->second), QExt(1));
    inst.y[q] = std::move(form);
  }
  auto y = [&](int i, int j, int t, int p) -> const LinearForm& { return inst.y.at({i, j, t, p}); };
  // y(i,0,0,0) + y(0,i,0,0) + y(i,i,i,i)
  auto diagonal_class = [&](int i) {
    if (i == 0) return sum({&y(0, 0, 0, 0)});
    return sum({&y(i, 0, 0, 0), &y(0, i, 0, 0), &y(i, i, i, i)});
  };

  if (selfdual) {
    LinearForm w;
    add_scaled(w, diagonal_class(n), QExt(-1));
    inst.w = w;
    for (int i = delta; i < n; ++i) {
      LinearForm f = diagonal_class(i);
      add_scaled(f, w, QExt(1));
      inst.equalities.push_back({"w + y[" + std::to_string(i) + "," + std::to_string(i) + "] + 2 y[" +
                                     std::to_string(i) + ",0] = 0",
                                 std::move(f)});
    }
    for (const auto& q : quads) {
      if (q.i == 0 || q.j == 0 || (q.t - q.p) % 2 != 0 || q.d() < delta) continue;
      const auto& f = inst.y.at(q);
      if (f.empty()) continue;
      inst.equalities.push_back({"y[" + to_string(q) + "] = 0", f});
    }
    add_scaled(inst.objective, w, QExt(two_n - 1));
    add_scaled(inst.objective, y(0, 0, 0, 0), QExt(-1));
    return inst;
  }

  inst.D.resize(n + 1);
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j < delta; ++j)
      add_scaled(inst.D[i], single(inst.c_coords[j]), QExt(krawtchouk(j, i, n) / two_n));
    if (inst.g_total && i % 2 == 0) {
      Rat f = variant == CodeVariant::additive_I ? Rat(2 / two_n) : Rat(1 / two_n);
      add_scaled(inst.D[i], single(*inst.g_total), QExt(f));
    }
  }

  Rat den = two_n / k_rat - 2;
  QExt inv_den(1 / den);
  for (int i = pure ? delta : 1; i <= n; ++i) {
    LinearForm f = diagonal_class(i);
    add_scaled(f, inst.D[i], QExt(-k_rat));
    if (i < delta) add_scaled(f, single(inst.c_coords[i]), QExt(1));
    LinearForm q;
    add_scaled(q, f, inv_den);
    inst.Q[i] = std::move(q);
  }

  for (const auto& q : quads) {
    auto rep = canonical_class(q, n);
    if (!rep || *rep != q) continue;
    int lo = std::min({q.i, q.j, q.d()});
    if (lo == 0) continue;
    if (pure && lo < delta) continue;
    LinearForm f;
    for (const auto& m : class_members(q, n)) {
      add_scaled(f, inst.y.at(m), QExt(1));
      add_scaled(f, inst.Q.at(m.d()), QExt(1));
    }
    if (f.empty()) continue;
    inst.equalities.push_back({"class[" + to_string(q) + "]", std::move(f)});
  }

  add_scaled(inst.objective, inst.D[0], QExt(k_rat));
  add_scaled(inst.objective, single(inst.c_coords[0]), QExt(-1));
  if (inst.g_total) add_scaled(inst.objective, single(*inst.g_total), QExt(-1));
  add_scaled(inst.objective, y(0, 0, 0, 0), QExt(-1));
  return inst;
}

Certificate zero_certificate(const DualInstance& inst) {
  return certificate_from_coordinates(inst, std::vector<QExt>(inst.coords.size()));
}

std::vector<QExt> certificate_coordinates(const DualInstance& inst, const Certificate& cert) {
  if (cert.n != inst.n || cert.K != inst.K || cert.delta != inst.delta || cert.variant != inst.variant)
    throw ShapeMismatch("certificate header does not match the instance parameters");
  std::vector<QExt> values(inst.coords.size());
  if (cert.Y.size() != inst.blocks.size()) throw ShapeMismatch("wrong number of Y blocks");
  for (std::size_t b = 0; b < inst.blocks.size(); ++b) {
    const auto& db = inst.blocks[b];
    auto it = cert.Y.find(db.index);
    if (it == cert.Y.end()) throw ShapeMismatch("missing block Y[" + to_string(db.index) + "]");
    if (it->second.dim() != db.dim())
      throw ShapeMismatch("block Y[" + to_string(db.index) + "] has dimension " + std::to_string(it->second.dim()) +
                          ", expected " + std::to_string(db.dim()));
    const auto& packed = it->second.packed();
    std::copy(packed.begin(), packed.end(), values.begin() + db.offset);
  }
  if (cert.C.size() != inst.c_coords.size()) throw ShapeMismatch("wrong number of C scalars");
  for (std::size_t j = 0; j < cert.C.size(); ++j) values[inst.c_coords[j]] = QExt(cert.C[j]);
  if (inst.g_total.has_value() != cert.G.has_value()) throw ShapeMismatch("G present/absent mismatch");
  if (inst.g_total) values[*inst.g_total] = QExt(*cert.G);
  if (cert.g.size() != inst.g_quad.size()) throw ShapeMismatch("wrong number of g scalars");
  for (const auto& [q, coord] : inst.g_quad) {
    auto it = cert.g.find(q);
    if (it == cert.g.end()) throw ShapeMismatch("missing scalar g[" + to_string(q) + "]");
    values[coord] = QExt(it->second);
  }
  return values;
}

Certificate certificate_from_coordinates(const DualInstance& inst, const std::vector<QExt>& values) {
  Certificate cert;
  cert.n = inst.n;
  cert.K = inst.K;
  cert.delta = inst.delta;
  cert.variant = inst.variant;
  for (const auto& db : inst.blocks) {
    SymMatrixQ m(db.dim());
    std::copy(values.begin() + db.offset, values.begin() + db.offset + m.packed().size(), m.packed().begin());
    cert.Y.emplace(db.index, std::move(m));
  }
  auto rational = [&](std::size_t c) {
    if (!values[c].is_rational()) throw ShapeMismatch("scalar " + inst.coords[c].name + " must be rational");
    return values[c].rational();
  };
  for (auto c : inst.c_coords) cert.C.push_back(rational(c));
  if (inst.g_total) cert.G = rational(*inst.g_total);
  for (const auto& [q, c] : inst.g_quad) cert.g[q] = rational(c);
  return cert;
}

std::optional<std::size_t> EvaluationReport::first_nonzero_residual() const {
  for (std::size_t i = 0; i < residuals.size(); ++i)
    if (!residuals[i].second.is_zero()) return i;
  return std::nullopt;
}

EvaluationReport evaluate_certificate(const DualInstance& inst, const Certificate& cert) {
  EvaluationReport rep;
  rep.coordinates = certificate_coordinates(inst, cert);
  const auto& v = rep.coordinates;
  for (const auto& [q, f] : inst.y) rep.y[q] = evaluate(f, v);
  for (const auto& f : inst.D) rep.D.push_back(evaluate(f, v));
  for (const auto& [i, f] : inst.Q) rep.Q[i] = evaluate(f, v);
  if (inst.w) rep.w = evaluate(*inst.w, v);
  rep.objective = evaluate(inst.objective, v);
  for (const auto& eq : inst.equalities) rep.residuals.emplace_back(eq.label, evaluate(eq.form, v));
  for (std::size_t c = 0; c < inst.coords.size(); ++c)
    if (inst.coords[c].nonnegative) rep.signs.emplace_back(inst.coords[c].name, v[c]);
  return rep;
}

Verdict verify_certificate(const DualInstance& inst, const Certificate& cert) {
  Verdict out;
  EvaluationReport rep;
  try {
    rep = evaluate_certificate(inst, cert);
  } catch (const ShapeMismatch& e) {
    out.reason = "shape";
    out.location = e.what();
    return out;
  }
  out.objective = rep.objective;
  if (auto bad = rep.first_nonzero_residual()) {
    out.reason = "equality";
    out.location = rep.residuals[*bad].first;
    return out;
  }
  for (const auto& [name, value] : rep.signs)
    if (sign(value) < 0) {
      out.reason = "sign";
      out.location = name;
      return out;
    }
  for (const auto& db : inst.blocks) {
    const auto& m = cert.Y.at(db.index);
    auto res = ldlt_decompose(m);
    if (auto* bad = std::get_if<NotPsd>(&res)) {
      out.reason = "psd";
      out.location = "Y[" + to_string(db.index) + "] pivot " + std::to_string(bad->pivot);
      return out;
    }
  }
  if (sign(rep.objective) <= 0) {
    out.reason = "objective";
    out.location = "objective " + to_string(rep.objective) + " is not strictly positive";
    return out;
  }
  out.status = Verdict::Status::verified;
  return out;
}

Verdict verify_certificate(const Certificate& cert) {
  DualInstance inst;
  try {
    inst = build_dual(cert.n, cert.K, cert.delta, cert.variant);
  } catch (const std::exception& e) {
    Verdict out;
    out.reason = "shape";
    out.location = e.what();
    return out;
  }
  return verify_certificate(inst, cert);
}

}  // namespace qcert
