#include "qcert/exactfield.hpp"

#include <stdexcept>

namespace qcert {

int sign(const Rat& r) { return sgn(r); }

std::string to_string(const Rat& r) { return r.get_str(); }

Rat parse_rat(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty rational");
  std::size_t i = 0;
  if (s[0] == '-' || s[0] == '+') i = 1;
  bool slash = false;
  bool digits = false;
  for (; i < s.size(); ++i) {
    char c = s[i];
    if (c >= '0' && c <= '9') {
      digits = true;
    } else if (c == '/' && !slash && digits) {
      slash = true;
      digits = false;
    } else {
      throw std::invalid_argument("malformed rational: " + s);
    }
  }
  if (!digits) throw std::invalid_argument("malformed rational: " + s);
  if (s[0] == '+') s.erase(0, 1);
  Rat r;
  if (r.set_str(s, 10) != 0) throw std::invalid_argument("malformed rational: " + s);
  if (sgn(r.get_den()) == 0) throw std::invalid_argument("zero denominator: " + s);
  r.canonicalize();
  return r;
}

double to_double(const Rat& r) { return r.get_d(); }

BigInt binomial(long n, long k) {
  if (n < 0 || k < 0 || k > n) return 0;
  BigInt out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return out;
}

BigInt power(long base, unsigned long e) {
  BigInt out;
  BigInt b = base;
  mpz_pow_ui(out.get_mpz_t(), b.get_mpz_t(), e);
  return out;
}

QExt QExt::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero in Q(sqrt3)");
  Rat nrm = norm();
  return QExt(a_ / nrm, -b_ / nrm);
}

QExt& QExt::operator+=(const QExt& o) {
  a_ += o.a_;
  b_ += o.b_;
  return *this;
}

QExt& QExt::operator-=(const QExt& o) {
  a_ -= o.a_;
  b_ -= o.b_;
  return *this;
}

QExt& QExt::operator*=(const QExt& o) {
  if (o.is_rational()) {
    a_ *= o.a_;
    b_ *= o.a_;
    return *this;
  }
  Rat a = a_ * o.a_ + 3 * b_ * o.b_;
  Rat b = a_ * o.b_ + b_ * o.a_;
  a_ = std::move(a);
  b_ = std::move(b);
  return *this;
}

QExt& QExt::operator/=(const QExt& o) {
  if (o.is_rational()) {
    if (sgn(o.a_) == 0) throw std::domain_error("division by zero in Q(sqrt3)");
    a_ /= o.a_;
    b_ /= o.a_;
    return *this;
  }
  return *this *= o.inverse();
}

int sign(const QExt& v) {
  int sa = sgn(v.rational());
  int sb = sgn(v.surd());
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  Rat diff = 3 * v.surd() * v.surd() - v.rational() * v.rational();
  return sb * sgn(diff);
}

int qext_sign(const QExt& v) { return sign(v); }

int qext_sign_bracketed(const QExt& v) {
  int sa = sgn(v.rational());
  int sb = sgn(v.surd());
  if (sb == 0) return sa;
  // lo < sqrt(3) < hi; hi from Newton iteration, lo = 3/hi
  Rat hi(2);
  for (;;) {
    Rat lo = 3 / hi;
    Rat x = v.rational() + v.surd() * (sb > 0 ? lo : hi);
    Rat y = v.rational() + v.surd() * (sb > 0 ? hi : lo);
    if (sgn(x) > 0) return 1;
    if (sgn(y) < 0) return -1;
    hi = (hi + lo) / 2;
  }
}

std::string to_string(const QExt& v) {
  if (v.is_rational()) return to_string(v.rational());
  std::string out;
  if (sgn(v.rational()) != 0) out = to_string(v.rational()) + (sgn(v.surd()) > 0 ? "+" : "");
  return out + to_string(v.surd()) + "*sqrt3";
}

double to_double(const QExt& v) {
  return v.rational().get_d() + v.surd().get_d() * 1.7320508075688772;
}

}  // namespace qcert
