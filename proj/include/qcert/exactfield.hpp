#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace qcert {

using Rat = mpq_class;
using BigInt = mpz_class;

// gmpxx has no long long constructors
inline Rat to_rat(long long v) { return Rat(static_cast<long>(v)); }

int sign(const Rat& r);
std::string to_string(const Rat& r);
// Accepts "p", "p/q", "-p/q". Throws std::invalid_argument.
Rat parse_rat(std::string_view text);
double to_double(const Rat& r);

BigInt binomial(long n, long k);  // 0 outside 0 <= k <= n
BigInt power(long base, unsigned long e);

// a + b*sqrt(3)
class QExt {
 public:
  QExt() = default;
  QExt(long v) : a_(v) {}
  QExt(Rat a) : a_(std::move(a)) {}
  QExt(Rat a, Rat b) : a_(std::move(a)), b_(std::move(b)) {}

  static QExt sqrt3() { return QExt(Rat(0), Rat(1)); }

  const Rat& rational() const { return a_; }
  const Rat& surd() const { return b_; }
  bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }
  bool is_rational() const { return sgn(b_) == 0; }

  QExt conjugate() const { return QExt(a_, -b_); }
  Rat norm() const { return a_ * a_ - 3 * b_ * b_; }
  QExt inverse() const;

  QExt& operator+=(const QExt& o);
  QExt& operator-=(const QExt& o);
  QExt& operator*=(const QExt& o);
  QExt& operator/=(const QExt& o);

  friend QExt operator+(QExt l, const QExt& r) { return l += r; }
  friend QExt operator-(QExt l, const QExt& r) { return l -= r; }
  friend QExt operator*(QExt l, const QExt& r) { return l *= r; }
  friend QExt operator/(QExt l, const QExt& r) { return l /= r; }
  friend QExt operator-(const QExt& v) { return QExt(-v.a_, -v.b_); }
  friend bool operator==(const QExt& l, const QExt& r) { return l.a_ == r.a_ && l.b_ == r.b_; }

 private:
  Rat a_;
  Rat b_;
};

int sign(const QExt& v);
int qext_sign(const QExt& v);
// Alternative sign via rational brackets lo < sqrt(3) < hi, refined by
// Newton steps until the interval decides.
int qext_sign_bracketed(const QExt& v);
std::string to_string(const QExt& v);
double to_double(const QExt& v);

template <class Scalar>
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(std::size_t dim) : dim_(dim), data_(dim * (dim + 1) / 2) {}

  std::size_t dim() const { return dim_; }
  static std::size_t packed_index(std::size_t r, std::size_t c) {
    if (r < c) std::swap(r, c);
    return r * (r + 1) / 2 + c;
  }
  Scalar& operator()(std::size_t r, std::size_t c) { return data_[packed_index(r, c)]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[packed_index(r, c)]; }
  const std::vector<Scalar>& packed() const { return data_; }
  std::vector<Scalar>& packed() { return data_; }

  friend bool operator==(const SymMatrix& l, const SymMatrix& r) {
    return l.dim_ == r.dim_ && l.data_ == r.data_;
  }

 private:
  std::size_t dim_ = 0;
  std::vector<Scalar> data_;
};

using SymMatrixQ = SymMatrix<QExt>;

template <class Scalar>
struct LdltFactor {
  std::vector<Scalar> d;
  // unit lower triangular, row-major dense
  std::vector<std::vector<Scalar>> l;
};

struct NotPsd {
  std::size_t pivot;  // 1-based
  int sign;           // sign of the offending pivot; 0 for a zero pivot with nonzero column
};

template <class Scalar>
using LdltResult = std::variant<LdltFactor<Scalar>, NotPsd>;

// No pivoting. A zero pivot is accepted only if the rest of its column is zero.
template <class Scalar>
LdltResult<Scalar> ldlt_decompose(const SymMatrix<Scalar>& m) {
  const std::size_t n = m.dim();
  std::vector<std::vector<Scalar>> a(n, std::vector<Scalar>(n));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c <= r; ++c) a[r][c] = m(r, c);

  LdltFactor<Scalar> f;
  f.d.resize(n);
  f.l.assign(n, std::vector<Scalar>(n));
  for (std::size_t k = 0; k < n; ++k) {
    f.l[k][k] = Scalar(1);
    const Scalar& piv = a[k][k];
    int s = sign(piv);
    if (s < 0) return NotPsd{k + 1, -1};
    if (s == 0) {
      for (std::size_t r = k + 1; r < n; ++r)
        if (sign(a[r][k]) != 0) return NotPsd{k + 1, 0};
      f.d[k] = Scalar(0);
      continue;
    }
    f.d[k] = piv;
    for (std::size_t r = k + 1; r < n; ++r) {
      if (sign(a[r][k]) == 0) continue;
      f.l[r][k] = a[r][k] / piv;
    }
    for (std::size_t r = k + 1; r < n; ++r) {
      if (sign(f.l[r][k]) == 0) continue;
      for (std::size_t c = k + 1; c <= r; ++c) {
        if (sign(a[c][k]) == 0) continue;
        a[r][c] -= f.l[r][k] * a[c][k];
      }
    }
  }
  return f;
}

template <class Scalar>
bool is_psd(const SymMatrix<Scalar>& m) {
  return std::holds_alternative<LdltFactor<Scalar>>(ldlt_decompose(m));
}

}  // namespace qcert
