#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qcert/exactfield.hpp"
#include "qcert/pauli.hpp"

namespace qcert {

class StabilizerCode {
 public:
  // Throws std::invalid_argument unless the generators are Hermitian,
  // mutually commuting and independent.
  static StabilizerCode from_generators(std::vector<PauliString> generators);
  // n is needed when there are no generators.
  static StabilizerCode trivial(int n);
  // One generator per line; blank lines and '#' comments ignored.
  static StabilizerCode parse(std::istream& in);
  static StabilizerCode from_file(const std::string& path);

  int n() const { return n_; }
  int k() const { return n_ - static_cast<int>(generators_.size()); }
  long long K() const { return 1LL << k(); }
  const std::vector<PauliString>& generators() const { return generators_; }

  // all 2^{n-k} signed group elements, identity first
  std::vector<PauliString> group() const;
  // Brute force over all 4^n Paulis; n <= 7.
  int distance() const;

 private:
  int n_ = 0;
  std::vector<PauliString> generators_;
};

struct WeightEnumerator {
  int n = 0;
  std::vector<Rat> values;  // index 0..n

  const Rat& operator[](int j) const { return values[j]; }
  Rat& operator[](int j) { return values[j]; }
  friend bool operator==(const WeightEnumerator&, const WeightEnumerator&) = default;
};

Rat krawtchouk(int j, int i, int n);
WeightEnumerator stabilizer_weight_distribution(const StabilizerCode& code);
WeightEnumerator macwilliams_transform(const WeightEnumerator& a);
WeightEnumerator shadow_transform(const WeightEnumerator& a);

// Real part of Gamma for rho = Pi/K, indexed by enumeration order of E_n.
class MomentMatrix {
 public:
  MomentMatrix(int n, std::map<std::pair<std::uint64_t, std::uint64_t>, Rat> entries)
      : n_(n), entries_(std::move(entries)) {}
  int n() const { return n_; }
  std::uint64_t dimension() const { return std::uint64_t(1) << (2 * n_); }
  Rat at(std::uint64_t a, std::uint64_t b) const;
  const std::map<std::pair<std::uint64_t, std::uint64_t>, Rat>& nonzeros() const { return entries_; }

 private:
  int n_;
  std::map<std::pair<std::uint64_t, std::uint64_t>, Rat> entries_;
};

constexpr int oracle_max_qubits = 5;

MomentMatrix gamma_moment_matrix(const StabilizerCode& code);

struct MatrixWeights {
  int n = 0;
  std::map<IndexQuad, Rat> values;  // absent quads are zero

  Rat at(const IndexQuad& q) const;
};

// lambda^{t,p}_{i,j} for rho = Pi/K
MatrixWeights matrix_weights_from_code(const StabilizerCode& code);

}  // namespace qcert
