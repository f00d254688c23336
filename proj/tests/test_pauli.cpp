#include <doctest.h>

#include "oracles.hpp"
#include "qcert/pauli.hpp"

using namespace qcert;

TEST_CASE("single qubit products") {
  auto X = PauliString::parse("X"), Y = PauliString::parse("Y"), Z = PauliString::parse("Z");
  CHECK(X * Y == PauliString::parse("iZ"));
  CHECK(Y * X == PauliString::parse("-iZ"));
  CHECK(Z * X == PauliString::parse("iY"));
  CHECK(X * X == PauliString::parse("I"));
  CHECK(commute_sign(X, Y) == -1);
  CHECK(commute_sign(X, X) == 1);
}

TEST_CASE("products match dense monomials") {
  const int n = 3;
  for (std::uint64_t a = 0; a < 64; a += 5)
    for (std::uint64_t b = 0; b < 64; b += 3) {
      auto pa = PauliString::from_index(n, a), pb = PauliString::from_index(n, b);
      auto ma = oracle::monomial(pa), mb = oracle::monomial(pb), mab = oracle::monomial(pa * pb);
      for (std::size_t s = 0; s < 8; ++s) {
        CHECK(ma.target[mb.target[s]] == mab.target[s]);
        CHECK(ma.coeff[mb.target[s]] * mb.coeff[s] == mab.coeff[s]);
      }
    }
}

TEST_CASE("parsing and enumeration order") {
  auto p = PauliString::parse("-XIZY");
  CHECK(p.size() == 4);
  CHECK(p.weight() == 3);
  CHECK(p.phase() == 2);
  CHECK(p.phaseless().str() == "XIZY");
  CHECK(PauliString::from_index(4, 0) == PauliString(4));
  for (std::uint64_t idx = 0; idx < 256; ++idx) CHECK(PauliString::from_index(4, idx).index() == idx);
  CHECK_THROWS(PauliString::parse("XQ"));
  CHECK_THROWS(PauliString::parse(""));
}

TEST_CASE("pair profile against letter counting") {
  const int n = 3;
  for (std::uint64_t a = 0; a < 64; ++a)
    for (std::uint64_t b = 0; b < 64; ++b) {
      auto pa = PauliString::from_index(n, a), pb = PauliString::from_index(n, b);
      CHECK(pair_profile(pa, pb) == oracle::profile(pa, pb));
    }
  CHECK(pair_profile(PauliString::parse("XXI"), PauliString::parse("XZZ")) == IndexQuad{2, 3, 2, 1});
}
