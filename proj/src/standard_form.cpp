#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>

#include "qcert/numeric.hpp"

namespace qcert {

PrecisionGuard::PrecisionGuard(unsigned digits) : saved_(Real::default_precision()) {
  Real::default_precision(digits);
}

PrecisionGuard::~PrecisionGuard() { Real::default_precision(saved_); }

Rat exact_value(const Real& v) {
  Rat out;
  mpfr_get_q(out.get_mpq_t(), v.backend().data());
  return out;
}

Real real_value(const QExt& v) {
  Real a;
  mpfr_set_q(a.backend().data(), v.rational().get_mpq_t(), MPFR_RNDN);
  if (sgn(v.surd()) != 0) {
    Real b;
    mpfr_set_q(b.backend().data(), v.surd().get_mpq_t(), MPFR_RNDN);
    a += b * sqrt(Real(3));
  }
  return a;
}

std::size_t StandardFormSdp::psd_size() const {
  std::size_t out = 0;
  for (auto d : psd_dims) out += d * (d + 1) / 2;
  return out;
}

std::string to_string(SolverResult::Status s) {
  switch (s) {
    case SolverResult::Status::optimal:
      return "optimal";
    case SolverResult::Status::primal_infeasible:
      return "infeasible";
    case SolverResult::Status::dual_infeasible:
      return "unbounded";
    case SolverResult::Status::max_iterations:
      return "max-iterations";
    case SolverResult::Status::numerical_failure:
      return "numerical-failure";
  }
  return "?";
}

namespace {

template <class T>
using Mat = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;
template <class T>
using Vec = Eigen::Matrix<T, Eigen::Dynamic, 1>;

template <class T>
T from_qext(const QExt& v);
template <>
double from_qext<double>(const QExt& v) {
  return to_double(v);
}
template <>
Real from_qext<Real>(const QExt& v) {
  return real_value(v);
}

template <class T>
Real to_real(const T& v) {
  if constexpr (std::is_same_v<T, double>)
    return Real(v);
  else
    return v;
}

template <class T>
double dbl(const T& v) {
  return static_cast<double>(v);
}

template <class T>
struct Problem {
  std::vector<Eigen::Index> dims;
  Eigen::Index lp = 0;
  struct Part {
    std::size_t row;
    Mat<T> a;
  };
  std::vector<std::vector<Part>> block_parts;                             // per block
  std::vector<std::vector<std::pair<std::size_t, T>>> lp_parts;           // per LP entry: row, coefficient
  Vec<T> b;
  std::vector<Mat<T>> C;  // minimized
  Vec<T> c_lp;
  std::vector<double> row_scale;
  double objective_scale = 1;
};

struct Slot {
  std::size_t block;  // == psd_dims.size() for LP
  Eigen::Index r, c;
};

std::vector<Slot> slots(const StandardFormSdp& sdp) {
  std::vector<Slot> out;
  for (std::size_t b = 0; b < sdp.psd_dims.size(); ++b)
    for (std::size_t r = 0; r < sdp.psd_dims[b]; ++r)
      for (std::size_t c = 0; c <= r; ++c) out.push_back({b, Eigen::Index(r), Eigen::Index(c)});
  for (std::size_t k = 0; k < sdp.lp_dim; ++k) out.push_back({sdp.psd_dims.size(), Eigen::Index(k), 0});
  return out;
}

double power_of_two_scale(const LinearForm& form) {
  double big = 0;
  for (const auto& [c, v] : form) big = std::max(big, std::abs(to_double(v)));
  if (big == 0) return 1;
  return std::ldexp(1.0, -std::ilogb(big));
}

template <class T>
Problem<T> build_problem(const StandardFormSdp& sdp) {
  Problem<T> P;
  const auto slot = slots(sdp);
  const std::size_t nb = sdp.psd_dims.size();
  for (auto d : sdp.psd_dims) P.dims.push_back(Eigen::Index(d));
  P.lp = Eigen::Index(sdp.lp_dim);
  P.block_parts.resize(nb);
  P.lp_parts.resize(sdp.lp_dim);
  const std::size_t m = sdp.rows.size();
  P.b.resize(Eigen::Index(m));
  for (std::size_t i = 0; i < m; ++i) {
    double s = power_of_two_scale(sdp.rows[i]);
    P.row_scale.push_back(s);
    T ts(s);
    P.b(Eigen::Index(i)) = from_qext<T>(QExt(sdp.rhs[i])) * ts;
    std::map<std::size_t, Mat<T>> parts;
    for (const auto& [c, v] : sdp.rows[i]) {
      const Slot& sl = slot.at(c);
      T val = from_qext<T>(v) * ts;
      if (sl.block == nb) {
        P.lp_parts[sl.r].emplace_back(i, val);
        continue;
      }
      auto [it, fresh] = parts.try_emplace(sl.block);
      if (fresh) it->second = Mat<T>::Zero(P.dims[sl.block], P.dims[sl.block]);
      if (sl.r == sl.c) {
        it->second(sl.r, sl.c) += val;
      } else {
        T half = val / T(2);
        it->second(sl.r, sl.c) += half;
        it->second(sl.c, sl.r) += half;
      }
    }
    for (auto& [blk, a] : parts) P.block_parts[blk].push_back({i, std::move(a)});
  }
  P.objective_scale = power_of_two_scale(sdp.objective);
  T os(P.objective_scale);
  for (std::size_t b = 0; b < nb; ++b) P.C.push_back(Mat<T>::Zero(P.dims[b], P.dims[b]));
  P.c_lp = Vec<T>::Zero(P.lp);
  for (const auto& [c, v] : sdp.objective) {
    const Slot& sl = slot.at(c);
    T val = -from_qext<T>(v) * os;
    if (sl.block == nb) {
      P.c_lp(sl.r) += val;
    } else if (sl.r == sl.c) {
      P.C[sl.block](sl.r, sl.c) += val;
    } else {
      P.C[sl.block](sl.r, sl.c) += val / T(2);
      P.C[sl.block](sl.c, sl.r) += val / T(2);
    }
  }
  return P;
}

template <class T>
T inner(const Mat<T>& a, const Mat<T>& b) {
  return (a.array() * b.array()).sum();
}

template <class T>
Mat<T> sym(const Mat<T>& a) {
  return (a + a.transpose()) / T(2);
}

template <class T>
class Ipm {
 public:
  Ipm(const Problem<T>& p, double tol, int max_iter) : P(p), tol_(tol), max_iter_(max_iter) {}

  SolverResult run();

  std::vector<Mat<T>> X, Z;
  Vec<T> x, z, y;

 private:
  const Problem<T>& P;
  double tol_;
  int max_iter_;
  bool trace_ = std::getenv("QCERT_IPM_TRACE") != nullptr;
  std::vector<Mat<T>> Zinv;

  Eigen::Index m() const { return P.b.size(); }
  std::size_t nb() const { return P.dims.size(); }

  Vec<T> apply(const std::vector<Mat<T>>& Ms, const Vec<T>& v) const {
    Vec<T> out = Vec<T>::Zero(m());
    for (std::size_t b = 0; b < nb(); ++b)
      for (const auto& part : P.block_parts[b]) out(part.row) += inner(part.a, Ms[b]);
    for (Eigen::Index k = 0; k < P.lp; ++k)
      for (const auto& [row, a] : P.lp_parts[k]) out(row) += a * v(k);
    return out;
  }

  void adjoint(const Vec<T>& w, std::vector<Mat<T>>& Ms, Vec<T>& v) const {
    Ms.resize(nb());
    for (std::size_t b = 0; b < nb(); ++b) {
      Ms[b] = Mat<T>::Zero(P.dims[b], P.dims[b]);
      for (const auto& part : P.block_parts[b]) Ms[b] += w(part.row) * part.a;
    }
    v = Vec<T>::Zero(P.lp);
    for (Eigen::Index k = 0; k < P.lp; ++k)
      for (const auto& [row, a] : P.lp_parts[k]) v(k) += a * w(row);
  }

  // largest alpha with M + alpha dM still PSD, estimated in double and confirmed by Cholesky
  double max_step(const std::vector<Mat<T>>& Ms, const std::vector<Mat<T>>& dMs, const Vec<T>& v, const Vec<T>& dv) const {
    double alpha = std::numeric_limits<double>::infinity();
    for (std::size_t b = 0; b < nb(); ++b) {
      Eigen::LLT<Mat<T>> llt(Ms[b]);
      Mat<T> w = llt.matrixL().solve(dMs[b]);
      w = llt.matrixL().solve(Mat<T>(w.transpose()));
      Eigen::MatrixXd wd = w.unaryExpr([](const T& e) { return dbl(e); });
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(wd, Eigen::EigenvaluesOnly);
      double lo = es.eigenvalues().minCoeff();
      if (lo < 0) alpha = std::min(alpha, -1 / lo);
    }
    for (Eigen::Index k = 0; k < P.lp; ++k)
      if (dv(k) < 0) alpha = std::min(alpha, dbl(T(-v(k) / dv(k))));
    return alpha;
  }

  bool interior(const std::vector<Mat<T>>& Ms, const std::vector<Mat<T>>& dMs, const Vec<T>& v, const Vec<T>& dv,
                const T& alpha) const {
    for (Eigen::Index k = 0; k < P.lp; ++k)
      if (!(v(k) + alpha * dv(k) > 0)) return false;
    for (std::size_t b = 0; b < nb(); ++b) {
      Eigen::LLT<Mat<T>> llt(Mat<T>(Ms[b] + alpha * dMs[b]));
      if (llt.info() != Eigen::Success) return false;
    }
    return true;
  }

  T step(const std::vector<Mat<T>>& Ms, const std::vector<Mat<T>>& dMs, const Vec<T>& v, const Vec<T>& dv,
         double fraction) const {
    double a = std::min(1.0, fraction * max_step(Ms, dMs, v, dv));
    T alpha(a);
    for (int tries = 0; tries < 60 && !interior(Ms, dMs, v, dv, alpha); ++tries) alpha *= T(0.8);
    return alpha;
  }
};

template <class T>
SolverResult Ipm<T>::run() {
  SolverResult res;
  const std::size_t B = nb();
  Eigen::Index N = P.lp;
  for (auto d : P.dims) N += d;
  const T n_total(static_cast<double>(std::max<Eigen::Index>(N, 1)));

  X.resize(B);
  Z.resize(B);
  Zinv.resize(B);
  for (std::size_t b = 0; b < B; ++b) {
    X[b] = Mat<T>::Identity(P.dims[b], P.dims[b]) / n_total;
    Z[b] = Mat<T>::Identity(P.dims[b], P.dims[b]);
  }
  x = Vec<T>::Constant(P.lp, T(1) / n_total);
  z = Vec<T>::Ones(P.lp);
  y = Vec<T>::Zero(m());

  T bnorm(0), cnorm(0);
  for (Eigen::Index i = 0; i < m(); ++i) bnorm = std::max(bnorm, T(abs(P.b(i))));
  for (const auto& c : P.C)
    if (c.size()) cnorm = std::max(cnorm, T(c.cwiseAbs().maxCoeff()));
  if (P.lp) cnorm = std::max(cnorm, T(P.c_lp.cwiseAbs().maxCoeff()));
  const T tol(tol_);
  const T feasible_tol(std::max(tol_, 1e-9));
  const T merit_tol(std::sqrt(tol_));
  const T blowup(1e12);

  std::vector<Mat<T>> S, Rd, dX, dZ, dXa, dZa, Rc;
  Vec<T> s, rd, dx, dz, dxa, dza, dy, dya, rc;

  auto direction = [&](const Eigen::LLT<Mat<T>>& M, const Vec<T>& rp, const std::vector<Mat<T>>& Rcm,
                       const Vec<T>& rcv, std::vector<Mat<T>>& oX, std::vector<Mat<T>>& oZ, Vec<T>& ox, Vec<T>& oz,
                       Vec<T>& oy) {
    std::vector<Mat<T>> G(B);
    for (std::size_t b = 0; b < B; ++b) G[b] = X[b] * Rd[b] * Zinv[b] - Rcm[b];
    Vec<T> g(P.lp);
    for (Eigen::Index k = 0; k < P.lp; ++k) g(k) = x(k) * rd(k) / z(k) - rcv(k);
    Vec<T> rhs = rp + apply(G, g);
    oy = M.solve(rhs);
    std::vector<Mat<T>> Ay;
    Vec<T> ay;
    adjoint(oy, Ay, ay);
    oX.resize(B);
    oZ.resize(B);
    for (std::size_t b = 0; b < B; ++b) {
      oZ[b] = Rd[b] - Ay[b];
      oX[b] = Rcm[b] - sym<T>(X[b] * oZ[b] * Zinv[b]);
    }
    oz = rd - ay;
    ox.resize(P.lp);
    for (Eigen::Index k = 0; k < P.lp; ++k) ox(k) = rcv(k) - x(k) * oz(k) / z(k);
  };

  for (int iter = 0;; ++iter) {
    Vec<T> rp = P.b - apply(X, x);
    adjoint(y, S, s);
    Rd.resize(B);
    T pobj(0), dobj = P.b.dot(y), gapsum(0), dres(0);
    for (std::size_t b = 0; b < B; ++b) {
      Rd[b] = P.C[b] - S[b] - Z[b];
      pobj += inner(P.C[b], X[b]);
      gapsum += inner(X[b], Z[b]);
      if (Rd[b].size()) dres = std::max(dres, T(Rd[b].cwiseAbs().maxCoeff()));
    }
    rd = P.c_lp - s - z;
    if (P.lp) {
      pobj += P.c_lp.dot(x);
      gapsum += x.dot(z);
      dres = std::max(dres, T(rd.cwiseAbs().maxCoeff()));
    }
    T pres = m() ? T(rp.cwiseAbs().maxCoeff()) : T(0);
    T mu = gapsum / n_total;
    T pinf = pres / (1 + bnorm), dinf = dres / (1 + cnorm);
    T gap = abs(pobj - dobj) / (1 + abs(pobj) + abs(dobj));

    res.iterations = iter;
    const bool feasible = pinf <= feasible_tol;
    if (feasible) res.objective_history.push_back(to_real(T(-pobj / T(P.objective_scale))));
    res.primal_objective = to_real(T(-pobj / T(P.objective_scale)));
    res.dual_objective = to_real(T(-dobj / T(P.objective_scale)));
    res.dual_residual = to_real(dres);
    Real pr(0);
    for (Eigen::Index i = 0; i < m(); ++i) pr = std::max(pr, Real(abs(to_real(T(rp(i)))) / Real(P.row_scale[i])));
    res.primal_residual = pr;

    if (trace_)
      std::fprintf(stderr, "%4d pobj %+.12e pinf %.2e dinf %.2e gap %.2e mu %.2e\n", iter, -dbl(pobj), dbl(pinf),
                   dbl(dinf), dbl(gap), dbl(mu));
    if (pinf <= tol && dinf <= tol && gap <= tol) {
      res.status = SolverResult::Status::optimal;
      break;
    }
    if (dobj > blowup * (1 + cnorm)) {
      res.status = SolverResult::Status::primal_infeasible;
      break;
    }
    if (-pobj > blowup * (1 + bnorm)) {
      res.status = SolverResult::Status::dual_infeasible;
      break;
    }
    if (iter >= max_iter_) {
      res.status = SolverResult::Status::max_iterations;
      break;
    }

    bool ok = true;
    for (std::size_t b = 0; b < B && ok; ++b) {
      Eigen::LLT<Mat<T>> llt(Z[b]);
      ok = llt.info() == Eigen::Success;
      Zinv[b] = llt.solve(Mat<T>::Identity(P.dims[b], P.dims[b]));
    }
    Mat<T> M = Mat<T>::Zero(m(), m());
    for (std::size_t b = 0; b < B && ok; ++b) {
      const auto& parts = P.block_parts[b];
      for (std::size_t jj = 0; jj < parts.size(); ++jj) {
        Mat<T> W = (X[b] * parts[jj].a * Zinv[b]).transpose();
        for (std::size_t ii = 0; ii <= jj; ++ii) {
          T v = inner(parts[ii].a, W);
          M(parts[ii].row, parts[jj].row) += v;
          if (ii != jj) M(parts[jj].row, parts[ii].row) += v;
        }
      }
    }
    for (Eigen::Index k = 0; k < P.lp && ok; ++k) {
      T d = x(k) / z(k);
      for (const auto& [ri, ai] : P.lp_parts[k])
        for (const auto& [rj, aj] : P.lp_parts[k]) M(ri, rj) += ai * aj * d;
    }
    Eigen::LLT<Mat<T>> Mf(M);
    if (!ok || Mf.info() != Eigen::Success) {
      res.status = SolverResult::Status::numerical_failure;
      break;
    }

    Rc.resize(B);
    for (std::size_t b = 0; b < B; ++b) Rc[b] = -X[b];
    rc = -x;
    direction(Mf, rp, Rc, rc, dXa, dZa, dxa, dza, dya);
    T ap = step(X, dXa, x, dxa, 1.0), ad = step(Z, dZa, z, dza, 1.0);
    T mu_aff(0);
    for (std::size_t b = 0; b < B; ++b) mu_aff += inner(Mat<T>(X[b] + ap * dXa[b]), Mat<T>(Z[b] + ad * dZa[b]));
    for (Eigen::Index k = 0; k < P.lp; ++k) mu_aff += (x(k) + ap * dxa(k)) * (z(k) + ad * dza(k));
    mu_aff /= n_total;
    T sigma = mu > 0 ? T(mu_aff / mu) : T(0);
    sigma = std::min(T(1), sigma * sigma * sigma);

    for (std::size_t b = 0; b < B; ++b) Rc[b] = sigma * mu * Zinv[b] - X[b] - sym<T>(dXa[b] * dZa[b] * Zinv[b]);
    for (Eigen::Index k = 0; k < P.lp; ++k) rc(k) = sigma * mu / z(k) - x(k) - dxa(k) * dza(k) / z(k);
    direction(Mf, rp, Rc, rc, dX, dZ, dx, dz, dy);
    double fraction = 0.9 + 0.09 * std::min(dbl(ap), dbl(ad));
    ap = step(X, dX, x, dx, fraction);
    ad = step(Z, dZ, z, dz, fraction);
    if (feasible) {
      // merit check: a primal-feasible iterate may not lose objective beyond working precision
      T slope(0);
      for (std::size_t b = 0; b < B; ++b) slope += inner(P.C[b], dX[b]);
      if (P.lp) slope += P.c_lp.dot(dx);
      T slack = merit_tol * (1 + abs(pobj));
      for (int h = 0; h < 30 && ap * slope > slack; ++h) ap /= 2;
    }
    if (dbl(ap) < 1e-14 && dbl(ad) < 1e-14) {
      res.status = SolverResult::Status::numerical_failure;
      break;
    }
    for (std::size_t b = 0; b < B; ++b) {
      X[b] += ap * dX[b];
      Z[b] += ad * dZ[b];
    }
    x += ap * dx;
    z += ad * dz;
    y += ad * dy;
  }

  for (std::size_t b = 0; b < B; ++b)
    for (Eigen::Index r = 0; r < P.dims[b]; ++r)
      for (Eigen::Index c = 0; c <= r; ++c) res.x.push_back(to_real(T(X[b](r, c))));
  for (Eigen::Index k = 0; k < P.lp; ++k) res.x.push_back(to_real(T(x(k))));
  for (Eigen::Index i = 0; i < m(); ++i) res.y.push_back(to_real(T(y(i) * T(P.row_scale[i]) / T(P.objective_scale))));
  return res;
}

}  // namespace

SolverResult solve_standard_form(const StandardFormSdp& sdp, const SolverOptions& opts) {
  if (sdp.rows.size() != sdp.rhs.size()) throw std::invalid_argument("rows and rhs differ in length");
  const int max_iter = opts.max_iterations > 0 ? opts.max_iterations : 100 + 4 * static_cast<int>(opts.precision);
  if (opts.precision <= 15) {
    double tol = opts.tolerance.value_or(std::max(1e-7, std::pow(10.0, -(double(opts.precision) - 10))));
    PrecisionGuard guard(20);
    auto P = build_problem<double>(sdp);
    Ipm<double> ipm(P, tol, max_iter);
    return ipm.run();
  }
  PrecisionGuard guard(opts.precision);
  double tol = opts.tolerance.value_or(std::pow(10.0, -(double(opts.precision) - 10)));
  auto P = build_problem<Real>(sdp);
  Ipm<Real> ipm(P, tol, max_iter);
  return ipm.run();
}

}  // namespace qcert
