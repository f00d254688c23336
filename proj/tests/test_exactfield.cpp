#include <doctest.h>

#include <boost/multiprecision/mpfr.hpp>
#include <random>

#include "qcert/exactfield.hpp"

using namespace qcert;

namespace {

using Float100 = boost::multiprecision::mpfr_float_100;

int float_sign(const QExt& v) {
  auto f = [](const Rat& r) { return Float100(r.get_num().get_str()) / Float100(r.get_den().get_str()); };
  Float100 a = f(v.rational()), b = f(v.surd());
  Float100 x = a + b * boost::multiprecision::sqrt(Float100(3));
  return x > 0 ? 1 : (x < 0 ? -1 : 0);
}

Rat random_rat(std::mt19937_64& rng, long span) {
  std::uniform_int_distribution<long> num(-span, span), den(1, span);
  Rat r(num(rng), den(rng));
  r.canonicalize();
  return r;
}

}  // namespace

TEST_CASE("field arithmetic") {
  QExt a(1, 1), b(1, -1);
  CHECK(a * b == QExt(-2));
  CHECK(QExt::sqrt3() * QExt::sqrt3() == QExt(3));
  CHECK(a * a.inverse() == QExt(1));
  CHECK((a / b) * b == a);
  CHECK(a.norm() == Rat(-2));
  CHECK(to_string(QExt(Rat(1, 2), Rat(-3))) == "1/2-3*sqrt3");
  CHECK_THROWS(QExt().inverse());
}

TEST_CASE("sign agrees with 100 digit floating point") {
  // convergents of sqrt(3) give differences far below double resolution
  std::vector<std::pair<long, long>> conv{{2, 1}, {5, 3}, {7, 4}, {19, 11}, {26, 15}, {97, 56}, {265, 153},
                                          {362, 209}, {989, 571}, {1351, 780}, {50843527, 29354524}};
  for (auto [p, q] : conv) {
    QExt v(Rat(p, q), Rat(-1));
    CHECK(sign(v) == float_sign(v));
    CHECK(qext_sign_bracketed(v) == float_sign(v));
    CHECK(sign(-v) == -float_sign(v));
  }
  std::mt19937_64 rng(7);
  for (int k = 0; k < 2000; ++k) {
    QExt v(random_rat(rng, 1000), random_rat(rng, 1000));
    int s = float_sign(v);
    CHECK(sign(v) == s);
    CHECK(qext_sign(v) == s);
    CHECK(qext_sign_bracketed(v) == s);
  }
  CHECK(sign(QExt()) == 0);
}

TEST_CASE("rational parsing") {
  CHECK(parse_rat("-6/4") == Rat(-3, 2));
  CHECK(parse_rat("12") == Rat(12));
  CHECK(to_string(parse_rat("10/4")) == "5/2");
  for (const char* bad : {"", "1/0", "abc", "1/-2", "1.5", "2/"}) CHECK_THROWS_AS(parse_rat(bad), std::invalid_argument);
}

TEST_CASE("binomials and powers") {
  CHECK(binomial(19, 9) == 92378);
  CHECK(binomial(5, 6) == 0);
  CHECK(binomial(5, -1) == 0);
  CHECK(power(2, 70) == BigInt("1180591620717411303424"));
}

TEST_CASE("LDL reconstructs L D L^T") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + trial % 6;
    std::vector<std::vector<QExt>> l(n, std::vector<QExt>(n));
    std::vector<QExt> d(n);
    for (std::size_t r = 0; r < n; ++r) {
      l[r][r] = QExt(1);
      for (std::size_t c = 0; c < r; ++c) l[r][c] = QExt(random_rat(rng, 9), random_rat(rng, 9));
      // positive pivots a + b sqrt(3) with a > 2|b|
      Rat b = random_rat(rng, 5);
      d[r] = QExt(abs(b) * 2 + Rat(1, 3 + trial), b);
    }
    SymMatrixQ m(n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c <= r; ++c)
        for (std::size_t k = 0; k <= c; ++k) m(r, c) += l[r][k] * d[k] * l[c][k];
    auto f = ldlt_decompose(m);
    REQUIRE(std::holds_alternative<LdltFactor<QExt>>(f));
    const auto& fac = std::get<LdltFactor<QExt>>(f);
    CHECK(fac.d == d);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < r; ++c) CHECK(fac.l[r][c] == l[r][c]);
    CHECK(is_psd(m));
  }
}

TEST_CASE("LDL reports the failing pivot") {
  SymMatrixQ m(3);
  m(0, 0) = QExt(1);
  m(1, 1) = QExt(1);
  m(2, 2) = QExt(1);
  m(2, 1) = QExt(Rat(0), Rat(1));  // sqrt(3) > 1: second minor is 1 - 3 < 0
  auto f = ldlt_decompose(m);
  REQUIRE(std::holds_alternative<NotPsd>(f));
  CHECK(std::get<NotPsd>(f).pivot == 3);
  CHECK(std::get<NotPsd>(f).sign == -1);

  SymMatrixQ z(2);
  z(1, 0) = QExt(1);  // zero pivot with nonzero column
  auto g = ldlt_decompose(z);
  REQUIRE(std::holds_alternative<NotPsd>(g));
  CHECK(std::get<NotPsd>(g).pivot == 1);
  CHECK(std::get<NotPsd>(g).sign == 0);

  SymMatrixQ semi(2);  // rank one [[1,1],[1,1]]
  semi(0, 0) = semi(1, 0) = semi(1, 1) = QExt(1);
  CHECK(is_psd(semi));
}
