#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "qcert/dualcert.hpp"

using namespace qcert;

namespace {

const std::string cert_dir = std::string(QCERT_DATA_DIR) + "/../certificates/";

Rat random_rat(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-20, 20), den(1, 7);
  Rat r(num(rng), den(rng));
  r.canonicalize();
  return r;
}

}  // namespace

TEST_CASE("adjoint identity between blocks and y forms") {
  // sum_b <Y_b, M_b(x)> = sum_q gamma_q x_q y_q(Y) for arbitrary Y and x; with
  // x from a feasible primal point this is the weak duality pairing
  std::mt19937_64 rng(3);
  for (int n : {3, 4, 5}) {
    CAPTURE(n);
    auto inst = build_dual(n, 2, 2, CodeVariant::general);
    std::vector<QExt> v(inst.coords.size());
    for (std::size_t c = 0; c < v.size(); ++c)
      if (inst.coords[c].kind == Coordinate::Kind::block_entry) v[c] = QExt(random_rat(rng), random_rat(rng));
    std::map<IndexQuad, Rat> x;
    for (const auto& q : index_set(n))
      if (auto rep = canonical_class(q, n); rep && *rep == q) x[q] = random_rat(rng);
    auto blocks = assemble_blocks(x, n);

    QExt lhs;
    for (const auto& [b, m] : blocks) {
      std::size_t pos = inst.block_position(b);
      const auto& db = inst.blocks[pos];
      REQUIRE(db.dim() == m.dim());
      for (std::size_t r = 0; r < m.dim(); ++r)
        for (std::size_t c = 0; c < m.dim(); ++c) lhs += v[inst.block_coordinate(pos, r, c)] * m(r, c);
    }
    QExt rhs;
    for (const auto& [q, form] : inst.y) {
      auto rep = canonical_class(q, n);
      if (!rep) continue;
      rhs += QExt(orbit_size(q, n) * x.at(*rep)) * evaluate(form, v);
    }
    CHECK(lhs == rhs);
  }
}

TEST_CASE("golden certificates verify") {
  for (const char* name : {"7-1-4-selfdual.json", "8-9-3-general.json"}) {
    CAPTURE(name);
    auto cert = read_certificate(cert_dir + name);
    CHECK(certificate_file_name(cert.n, cert.K, cert.delta, cert.variant) == name);
    auto v = verify_certificate(cert);
    CHECK(v.verified());
    CHECK(sign(v.objective) > 0);
    // round trip is exact and the encoding deterministic
    std::string text = certificate_to_json(cert);
    CHECK(certificate_from_json(text) == cert);
    CHECK(certificate_to_json(certificate_from_json(text)) == text);
  }
}

TEST_CASE("rejections carry a label") {
  auto cert = read_certificate(cert_dir + "8-9-3-general.json");
  auto inst = build_dual(cert.n, cert.K, cert.delta, cert.variant);

  SUBCASE("negated diagonal entry") {
    auto& m = cert.Y.begin()->second;
    m(0, 0) = -m(0, 0);
    auto v = verify_certificate(inst, cert);
    CHECK_FALSE(v.verified());
    CHECK(!v.location.empty());
  }
  SUBCASE("changed scalar") {
    cert.C[0] += 1;
    auto v = verify_certificate(inst, cert);
    CHECK_FALSE(v.verified());
    CHECK(v.reason == "equality");
  }
  SUBCASE("zero certificate has zero objective") {
    auto v = verify_certificate(inst, zero_certificate(inst));
    CHECK_FALSE(v.verified());
    CHECK(v.reason == "objective");
    CHECK(v.objective.is_zero());
  }
  SUBCASE("wrong header") {
    cert.K = 8;
    auto v = verify_certificate(inst, cert);
    CHECK(v.reason == "shape");
  }
  SUBCASE("missing block") {
    cert.Y.erase(cert.Y.begin());
    CHECK(verify_certificate(cert).reason == "shape");
  }
}

TEST_CASE("coordinates round trip") {
  auto cert = read_certificate(cert_dir + "7-1-4-selfdual.json");
  auto inst = build_dual(7, 1, 4, CodeVariant::selfdual);
  CHECK(certificate_from_coordinates(inst, certificate_coordinates(inst, cert)) == cert);
}

TEST_CASE("malformed files") {
  auto text = certificate_to_json(read_certificate(cert_dir + "7-1-4-selfdual.json"));
  CHECK_THROWS_AS(certificate_from_json(text.substr(0, text.size() / 2)), CertificateFormatError);
  CHECK_THROWS_AS(certificate_from_json("{}"), CertificateFormatError);
  CHECK_THROWS_AS(certificate_from_json("[1,2]"), CertificateFormatError);
  auto bump = text;
  bump.replace(bump.find("\"version\": 1"), 12, "\"version\": 2");
  CHECK_THROWS_AS(certificate_from_json(bump), CertificateFormatError);
  auto bad_number = text;
  auto pos = bad_number.find("[\"") + 2;
  bad_number.insert(pos, "1/0");
  CHECK_THROWS_AS(certificate_from_json(bad_number), CertificateFormatError);
  auto bad_variant = text;
  bad_variant.replace(bad_variant.find("selfdual"), 8, "selfish!");
  CHECK_THROWS_AS(certificate_from_json(bad_variant), CertificateFormatError);
}

TEST_CASE("dual construction") {
  CHECK_THROWS_AS(build_dual(4, 8, 2, CodeVariant::general), DegenerateDenominator);
  CHECK_NOTHROW(build_dual(4, 1, 2, CodeVariant::selfdual));
  auto inst = build_dual(6, 2, 3, CodeVariant::pure);
  for (const auto& db : inst.blocks)
    for (int i : db.labels) CHECK((i == 0 || i >= 3));
  auto add = build_dual(6, 4, 3, CodeVariant::additive_I);
  CHECK(add.g_total.has_value());
  CHECK(!add.g_quad.empty());
  CHECK(certificate_file_name(6, 4, 3, CodeVariant::additive_I) == "6-4-3-additive_I.json");
}
