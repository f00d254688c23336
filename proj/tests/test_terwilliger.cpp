#include <doctest.h>

#include <map>

#include "oracles.hpp"
#include "qcert/terwilliger.hpp"

using namespace qcert;

namespace {

std::map<IndexQuad, BigInt> pair_counts(int n) {
  std::map<IndexQuad, BigInt> counts;
  const std::uint64_t size = std::uint64_t(1) << (2 * n);
  std::vector<PauliString> all;
  for (std::uint64_t a = 0; a < size; ++a) all.push_back(PauliString::from_index(n, a));
  for (const auto& a : all)
    for (const auto& b : all) counts[oracle::profile(a, b)] += 1;
  return counts;
}

}  // namespace

TEST_CASE("index set matches its definition") {
  for (int n = 1; n <= 6; ++n) {
    std::vector<IndexQuad> ref;
    for (int i = 0; i <= n; ++i)
      for (int j = 0; j <= n; ++j)
        for (int t = 0; t <= std::min(i, j); ++t)
          for (int p = 0; p <= t; ++p)
            if (i + j <= t + n) ref.push_back({i, j, t, p});
    CHECK(index_set(n) == ref);
  }
}

TEST_CASE("orbit sizes against exhaustive pair counts") {
  for (int n = 1; n <= 4; ++n) {
    CAPTURE(n);
    auto counts = pair_counts(n);
    auto quads = index_set(n);
    CHECK(counts.size() == quads.size());
    Rat total = 0;
    for (const auto& q : quads) {
      CAPTURE(to_string(q));
      CHECK(orbit_size(q, n) == Rat(counts[q]));
      total += orbit_size(q, n);
    }
    CHECK(total == Rat(power(16, n)));
  }
}

TEST_CASE("orbit sizes sum to 16^n") {
  for (int n = 5; n <= 12; ++n) {
    Rat total = 0;
    for (const auto& q : index_set(n)) total += orbit_size(q, n);
    CHECK(total == Rat(power(16, n)));
  }
}

TEST_CASE("block decomposition dimension") {
  // the algebra dimension equals the number of basis quads
  for (int n = 1; n <= 10; ++n) {
    std::size_t dim = 0;
    for (const auto& b : block_indices(n)) dim += std::size_t(b.full_dim(n)) * b.full_dim(n);
    CHECK(dim == index_set(n).size());
  }
}

TEST_CASE("identification classes") {
  for (int n = 1; n <= 7; ++n)
    for (const auto& q : index_set(n)) {
      auto rep = canonical_class(q, n);
      if ((q.t - q.p) % 2) {
        CHECK_FALSE(rep.has_value());
        continue;
      }
      REQUIRE(rep.has_value());
      CHECK(*rep <= q);
      for (const auto& m : class_members(q, n)) {
        CHECK(in_index_set(m, n));
        CHECK(m.t - m.p == q.t - q.p);
        CHECK(canonical_class(m, n) == rep);
      }
    }
}

TEST_CASE("blocks assembled from corpus codes are PSD") {
  for (const auto& c : oracle::corpus(oracle_max_qubits)) {
    CAPTURE(c.n());
    CAPTURE(c.K());
    auto x = normalized_weights(matrix_weights_from_code(c));
    auto blocks = assemble_blocks(x, c.n());
    CHECK(blocks.size() == block_indices(c.n()).size());
    for (const auto& [b, m] : blocks) {
      CAPTURE(to_string(b));
      CHECK(m.dim() == static_cast<std::size_t>(b.full_dim(c.n())));
      CHECK(is_psd(m));
    }
  }
}

TEST_CASE("a perturbed point leaves the PSD cone") {
  auto c = StabilizerCode::from_file(std::string(QCERT_DATA_DIR) + "/codes/five_qubit.txt");
  auto x = normalized_weights(matrix_weights_from_code(c));
  // push the weight-3 diagonal moment negative
  x[*canonical_class({3, 3, 3, 3}, 5)] = -1;
  bool all_psd = true;
  for (const auto& [b, m] : assemble_blocks(x, 5)) all_psd = all_psd && is_psd(m);
  CHECK_FALSE(all_psd);
}

TEST_CASE("pure labels drop 0 < i < delta") {
  for (const auto& b : block_indices(6)) {
    auto labels = block_labels(b, 6, 3, CodeVariant::pure);
    for (int i : labels) CHECK((i == 0 || i >= 3));
    auto full = block_labels(b, 6, 3, CodeVariant::general);
    CHECK(full.size() == static_cast<std::size_t>(b.full_dim(6)));
  }
}
