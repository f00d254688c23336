#include <cmath>

#include "qcert/numeric.hpp"

namespace qcert {

QExt coordinate_scale(const DualInstance& inst, std::size_t c) {
  const auto& co = inst.coords.at(c);
  if (co.kind == Coordinate::Kind::scalar) return QExt(1);
  const auto& labels = inst.blocks[co.block].labels;
  int odd = labels[co.row] % 2 + labels[co.col] % 2;
  if (odd == 0) return QExt(1);
  return odd == 1 ? QExt::sqrt3() : QExt(3);
}

std::vector<std::map<std::size_t, Rat>> rational_equality_rows(const DualInstance& inst) {
  std::vector<std::map<std::size_t, Rat>> out;
  for (const auto& eq : inst.equalities) {
    std::map<std::size_t, Rat> rat, surd;
    for (const auto& [c, coeff] : eq.form) {
      QExt v = coeff * coordinate_scale(inst, c);
      if (sgn(v.rational()) != 0) rat[c] = v.rational();
      if (sgn(v.surd()) != 0) surd[c] = v.surd();
    }
    if (!rat.empty()) out.push_back(std::move(rat));
    if (!surd.empty()) out.push_back(std::move(surd));
  }
  return out;
}

namespace {

// rows that span the same space as all of them
std::vector<std::size_t> independent_rows(const std::vector<std::map<std::size_t, Rat>>& rows) {
  std::map<std::size_t, std::map<std::size_t, Rat>> basis;
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    auto r = rows[i];
    while (!r.empty()) {
      auto lead = *r.begin();
      auto it = basis.find(lead.first);
      if (it == basis.end()) {
        for (auto& [c, v] : r) v /= lead.second;
        basis.emplace(lead.first, std::move(r));
        keep.push_back(i);
        break;
      }
      for (const auto& [c, v] : it->second) {
        auto& e = r[c];
        e -= lead.second * v;
        if (sgn(e) == 0) r.erase(c);
      }
    }
  }
  return keep;
}

struct Embedding {
  StandardFormSdp sdp;
  std::vector<std::size_t> plus;   // per coordinate: flat index
  std::vector<std::optional<std::size_t>> minus;  // free scalars
  std::size_t tau = 0;
};

Embedding embed(const DualInstance& inst) {
  Embedding e;
  auto& sdp = e.sdp;
  std::size_t flat = 0;
  for (const auto& db : inst.blocks) {
    if (db.offset != flat) throw std::logic_error("dual blocks are not contiguous");
    sdp.psd_dims.push_back(db.dim());
    flat += db.dim() * (db.dim() + 1) / 2;
  }
  e.plus.resize(inst.coords.size());
  e.minus.resize(inst.coords.size());
  for (std::size_t c = 0; c < inst.coords.size(); ++c) {
    const auto& co = inst.coords[c];
    if (co.kind == Coordinate::Kind::block_entry) {
      e.plus[c] = c;
      continue;
    }
    e.plus[c] = flat + sdp.lp_dim++;
    if (!co.nonnegative) e.minus[c] = flat + sdp.lp_dim++;
  }
  e.tau = flat + sdp.lp_dim++;

  auto map_form = [&](const std::map<std::size_t, QExt>& form) {
    LinearForm out;
    for (const auto& [c, v] : form) {
      out[e.plus[c]] += v;
      if (e.minus[c]) out[*e.minus[c]] -= v;
    }
    return out;
  };

  auto rows = rational_equality_rows(inst);
  for (auto i : independent_rows(rows)) {
    std::map<std::size_t, QExt> form;
    for (const auto& [c, v] : rows[i]) form[c] = QExt(v);
    sdp.rows.push_back(map_form(form));
    sdp.rhs.push_back(0);
    sdp.labels.push_back("equality " + std::to_string(i));
  }
  LinearForm norm;
  for (std::size_t b = 0; b < inst.blocks.size(); ++b)
    for (std::size_t r = 0; r < inst.blocks[b].dim(); ++r) norm[inst.block_coordinate(b, r, r)] = QExt(1);
  for (std::size_t k = flat; k < flat + sdp.lp_dim; ++k) norm[k] = QExt(1);
  sdp.rows.push_back(norm);
  sdp.rhs.push_back(1);
  sdp.labels.push_back("normalization");

  std::map<std::size_t, QExt> obj;
  for (const auto& [c, v] : inst.objective) obj[c] = v * coordinate_scale(inst, c);
  sdp.objective = map_form(obj);
  return e;
}

Real evaluate_real(const LinearForm& form, const std::vector<Real>& values) {
  Real out(0);
  for (const auto& [c, v] : form) out += real_value(v) * values[c];
  return out;
}

}  // namespace

RealMatrix NumericPoint::block(const DualInstance& inst, std::size_t b) const {
  const auto& db = inst.blocks.at(b);
  RealMatrix m(db.dim(), db.dim());
  for (std::size_t r = 0; r < db.dim(); ++r)
    for (std::size_t c = 0; c <= r; ++c) m(r, c) = m(c, r) = values.at(inst.block_coordinate(b, r, c));
  return m;
}

NumericPoint solve_numeric(const DualInstance& inst, const NumericOptions& opts) {
  std::size_t total = 0;
  for (const auto& db : inst.blocks) total += db.dim();
  if (total > opts.max_total_dimension)
    throw ResourceCapExceeded("total block dimension " + std::to_string(total) + " exceeds the cap of " +
                              std::to_string(opts.max_total_dimension));

  const unsigned digits = std::max(opts.precision, 20u);
  PrecisionGuard guard(digits);
  Embedding e = embed(inst);
  SolverOptions so;
  so.precision = opts.precision;
  so.max_iterations = opts.max_iterations;
  SolverResult phase1 = solve_standard_form(e.sdp, so);

  NumericPoint pt;
  pt.precision = opts.precision;
  pt.optimum = phase1.primal_objective;
  pt.objective_history = phase1.objective_history;
  pt.iterations = phase1.iterations;
  pt.status = to_string(phase1.status);
  pt.converged = phase1.status == SolverResult::Status::optimal;

  const SolverResult* used = &phase1;
  SolverResult phase2;
  Real margin = pow(Real(10), -Real(opts.precision) / 2);
  // a maximization that stalls near the optimum still gives a usable floor
  bool usable = pt.converged || ((phase1.status == SolverResult::Status::max_iterations ||
                                  phase1.status == SolverResult::Status::numerical_failure) &&
                                 phase1.primal_residual < margin);
  if (usable && !pt.converged) pt.status = "near-optimal (" + pt.status + ")";
  if (opts.center && usable && phase1.primal_objective > margin) {
    StandardFormSdp centred = e.sdp;
    std::size_t sigma = centred.size();
    centred.lp_dim += 1;
    LinearForm row = centred.objective;
    row[sigma] = QExt(-1);
    centred.rows.push_back(row);
    centred.rhs.push_back(exact_value(Real(phase1.primal_objective / 2)));
    centred.labels.push_back("objective floor");
    centred.objective.clear();
    phase2 = solve_standard_form(centred, so);
    pt.iterations += phase2.iterations;
    if (phase2.status == SolverResult::Status::optimal) {
      used = &phase2;
      pt.centered = true;
    } else {
      pt.status += "; centring " + to_string(phase2.status);
    }
  }
  pt.solver_primal_residual = used->primal_residual;
  pt.solver_dual_residual = used->dual_residual;

  pt.values.resize(inst.coords.size());
  for (std::size_t c = 0; c < inst.coords.size(); ++c) {
    Real u = used->x[e.plus[c]];
    if (e.minus[c]) u -= used->x[*e.minus[c]];
    pt.values[c] = real_value(coordinate_scale(inst, c)) * u;
  }
  pt.objective = evaluate_real(inst.objective, pt.values);
  Real worst(0);
  for (const auto& eq : inst.equalities) worst = std::max(worst, Real(abs(evaluate_real(eq.form, pt.values))));
  pt.equality_residual = worst;
  return pt;
}

}  // namespace qcert
