#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace qcert {

// (i, j, t, p) profile of a Pauli pair; also the index type of the reduced SDP.
struct IndexQuad {
  int i = 0;
  int j = 0;
  int t = 0;
  int p = 0;

  int d() const { return i + j - t - p; }
  auto operator<=>(const IndexQuad&) const = default;
};

using PairProfile = IndexQuad;

std::string to_string(const IndexQuad& q);

class PauliString {
 public:
  static constexpr int max_qubits = 32;

  PauliString() = default;
  explicit PauliString(int n);
  static PauliString from_bits(int n, std::uint64_t x, std::uint64_t z, int phase = 0);
  // Enumeration order: index = (x << n) | z, identity first.
  static PauliString from_index(int n, std::uint64_t index);
  // Letters I/X/Y/Z with optional prefix "+", "-", "i", "-i", "+i".
  static PauliString parse(std::string_view text);

  int size() const { return n_; }
  std::uint64_t x_bits() const { return x_; }
  std::uint64_t z_bits() const { return z_; }
  // exponent of i in the overall phase, 0..3
  int phase() const { return phase_; }
  std::uint64_t support() const { return x_ | z_; }
  int weight() const;
  char letter(int site) const;
  std::uint64_t index() const { return (x_ << n_) | z_; }

  PauliString phaseless() const { return from_bits(n_, x_, z_, 0); }
  PauliString dagger() const;
  PauliString with_phase(int phase) const { return from_bits(n_, x_, z_, phase); }
  std::string str() const;

  friend bool operator==(const PauliString&, const PauliString&) = default;

 private:
  int n_ = 0;
  std::uint64_t x_ = 0;
  std::uint64_t z_ = 0;
  int phase_ = 0;
};

PauliString pauli_product(const PauliString& a, const PauliString& b);
inline PauliString operator*(const PauliString& a, const PauliString& b) { return pauli_product(a, b); }
int commute_sign(const PauliString& a, const PauliString& b);
PairProfile pair_profile(const PauliString& a, const PauliString& b);

}  // namespace qcert
