#include "qcert/pauli.hpp"

#include <bit>
#include <stdexcept>

namespace qcert {

std::string to_string(const IndexQuad& q) {
  return std::to_string(q.i) + "," + std::to_string(q.j) + "," + std::to_string(q.t) + "," +
         std::to_string(q.p);
}

namespace {

std::uint64_t mask(int n) { return n >= 64 ? ~std::uint64_t(0) : (std::uint64_t(1) << n) - 1; }

void check_size(int n) {
  if (n < 1 || n > PauliString::max_qubits) throw std::invalid_argument("qubit count out of range");
}

void check_same(const PauliString& a, const PauliString& b) {
  if (a.size() != b.size()) throw std::invalid_argument("Pauli length mismatch");
}

}  // namespace

PauliString::PauliString(int n) : n_(n) { check_size(n); }

PauliString PauliString::from_bits(int n, std::uint64_t x, std::uint64_t z, int phase) {
  check_size(n);
  PauliString p;
  p.n_ = n;
  p.x_ = x & mask(n);
  p.z_ = z & mask(n);
  p.phase_ = ((phase % 4) + 4) % 4;
  return p;
}

PauliString PauliString::from_index(int n, std::uint64_t index) {
  check_size(n);
  return from_bits(n, index >> n, index & mask(n));
}

PauliString PauliString::parse(std::string_view text) {
  int phase = 0;
  if (text.starts_with("-i")) {
    phase = 3;
    text.remove_prefix(2);
  } else if (text.starts_with("+i")) {
    phase = 1;
    text.remove_prefix(2);
  } else if (text.starts_with("i")) {
    phase = 1;
    text.remove_prefix(1);
  } else if (text.starts_with("-")) {
    phase = 2;
    text.remove_prefix(1);
  } else if (text.starts_with("+")) {
    text.remove_prefix(1);
  }
  int n = static_cast<int>(text.size());
  if (n < 1 || n > max_qubits) throw std::invalid_argument("Pauli string length out of range");
  std::uint64_t x = 0, z = 0;
  for (int k = 0; k < n; ++k) {
    std::uint64_t bit = std::uint64_t(1) << k;
    switch (text[k]) {
      case 'I': break;
      case 'X': x |= bit; break;
      case 'Z': z |= bit; break;
      case 'Y': x |= bit; z |= bit; break;
      default: throw std::invalid_argument("invalid Pauli letter in '" + std::string(text) + "'");
    }
  }
  return from_bits(n, x, z, phase);
}

int PauliString::weight() const { return std::popcount(support()); }

char PauliString::letter(int site) const {
  bool x = (x_ >> site) & 1, z = (z_ >> site) & 1;
  return x ? (z ? 'Y' : 'X') : (z ? 'Z' : 'I');
}

PauliString PauliString::dagger() const { return from_bits(n_, x_, z_, -phase_); }

std::string PauliString::str() const {
  static const char* prefix[] = {"", "i", "-", "-i"};
  std::string out = prefix[phase_];
  for (int k = 0; k < n_; ++k) out += letter(k);
  return out;
}

PauliString pauli_product(const PauliString& a, const PauliString& b) {
  check_same(a, b);
  std::uint64_t ax = a.x_bits(), az = a.z_bits(), bx = b.x_bits(), bz = b.z_bits();
  // per-site phase: X*Y = iZ, Y*Z = iX, Z*X = iY and the reverses give -i
  std::uint64_t ax_only = ax & ~az, az_only = az & ~ax, ay = ax & az;
  std::uint64_t bx_only = bx & ~bz, bz_only = bz & ~bx, by = bx & bz;
  int plus = std::popcount((ax_only & by) | (ay & bz_only) | (az_only & bx_only));
  int minus = std::popcount((ax_only & bz_only) | (ay & bx_only) | (az_only & by));
  return PauliString::from_bits(a.size(), ax ^ bx, az ^ bz, a.phase() + b.phase() + plus - minus);
}

int commute_sign(const PauliString& a, const PauliString& b) {
  check_same(a, b);
  int s = std::popcount((a.x_bits() & b.z_bits()) ^ (a.z_bits() & b.x_bits()));
  return s % 2 == 0 ? 1 : -1;
}

PairProfile pair_profile(const PauliString& a, const PauliString& b) {
  check_same(a, b);
  std::uint64_t overlap = a.support() & b.support();
  std::uint64_t same = ~(a.x_bits() ^ b.x_bits()) & ~(a.z_bits() ^ b.z_bits());
  return {a.weight(), b.weight(), std::popcount(overlap), std::popcount(overlap & same)};
}

}  // namespace qcert
