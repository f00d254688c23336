#pragma once

// Independent reference computations shared by the tests. Nothing here calls
// into the code under test beyond parsing and plain accessors.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "qcert/enumerators.hpp"
#include "qcert/pauli.hpp"

namespace oracle {

using qcert::Rat;

inline std::vector<std::string> corpus_files() {
  std::vector<std::string> out;
  for (const auto& e : std::filesystem::directory_iterator(std::string(QCERT_DATA_DIR) + "/codes"))
    if (e.path().extension() == ".txt") out.push_back(e.path().string());
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<qcert::StabilizerCode> corpus(int max_n) {
  std::vector<qcert::StabilizerCode> out;
  for (const auto& f : corpus_files()) {
    auto c = qcert::StabilizerCode::from_file(f);
    if (c.n() <= max_n) out.push_back(c);
  }
  return out;
}

// Letter at site s read back from the printed string, so the profile below
// does not reuse the bit layout of PauliString.
inline char letter_at(const qcert::PauliString& e, int s) { return e.phaseless().str()[s]; }

// (i, j, t, p): weights, overlap of supports, and sites where both letters agree.
inline qcert::IndexQuad profile(const qcert::PauliString& a, const qcert::PauliString& b) {
  qcert::IndexQuad q;
  for (int s = 0; s < a.size(); ++s) {
    char x = letter_at(a, s), y = letter_at(b, s);
    q.i += x != 'I';
    q.j += y != 'I';
    q.t += x != 'I' && y != 'I';
    q.p += x != 'I' && x == y;
  }
  return q;
}

// Gaussian rationals
struct G {
  Rat re, im;
  G() = default;
  G(Rat r, Rat i = 0) : re(std::move(r)), im(std::move(i)) {}
  friend G operator+(const G& a, const G& b) { return {a.re + b.re, a.im + b.im}; }
  friend G operator*(const G& a, const G& b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
  friend bool operator==(const G& a, const G& b) { return a.re == b.re && a.im == b.im; }
};

inline G ipow(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return {1, 0};
    case 1: return {0, 1};
    case 2: return {-1, 0};
    default: return {0, -1};
  }
}

// Monomial action of a Pauli on computational basis states built from its
// letters: X flips, Z signs, Y = iXZ.
struct Monomial {
  std::vector<std::size_t> target;
  std::vector<G> coeff;
};

inline Monomial monomial(const qcert::PauliString& e) {
  const int n = e.size();
  const std::size_t dim = std::size_t(1) << n;
  std::string s = e.phaseless().str();
  Monomial m{std::vector<std::size_t>(dim), std::vector<G>(dim)};
  for (std::size_t b = 0; b < dim; ++b) {
    std::size_t out = b;
    int k = e.phase();
    for (int site = 0; site < n; ++site) {
      bool bit = (b >> site) & 1;
      char c = s[site];
      if (c == 'X' || c == 'Y') out ^= std::size_t(1) << site;
      if ((c == 'Z' || c == 'Y') && bit) k += 2;
      if (c == 'Y') k += 1;
    }
    m.target[b] = out;
    m.coeff[b] = ipow(k);
  }
  return m;
}

using Dense = std::vector<std::vector<G>>;

inline Dense apply_left(const Monomial& m, const Dense& a) {
  Dense out(a.size(), std::vector<G>(a.size()));
  for (std::size_t b = 0; b < a.size(); ++b)
    for (std::size_t c = 0; c < a.size(); ++c) out[m.target[b]][c] = m.coeff[b] * a[b][c];
  return out;
}

// code projector prod (I + g)/2
inline Dense projector(const qcert::StabilizerCode& code) {
  const std::size_t dim = std::size_t(1) << code.n();
  Dense p(dim, std::vector<G>(dim));
  for (std::size_t b = 0; b < dim; ++b) p[b][b] = G(1);
  for (const auto& g : code.generators()) {
    Dense gp = apply_left(monomial(g), p);
    for (std::size_t r = 0; r < dim; ++r)
      for (std::size_t c = 0; c < dim; ++c) p[r][c] = (p[r][c] + gp[r][c]) * G(Rat(1, 2));
  }
  return p;
}

// tr(E P E^dagger P) for Hermitian phaseless E
inline Rat conjugated_overlap(const Monomial& e, const Dense& p) {
  // (E P E^dag)_{t(b), t(c)} = coeff_b conj(coeff_c) P_{b c}
  const std::size_t dim = p.size();
  G sum;
  for (std::size_t b = 0; b < dim; ++b)
    for (std::size_t c = 0; c < dim; ++c) {
      if (sgn(p[b][c].re) == 0 && sgn(p[b][c].im) == 0) continue;
      G conj_c{e.coeff[c].re, -e.coeff[c].im};
      G epe = e.coeff[b] * conj_c * p[b][c];
      sum = sum + epe * p[e.target[c]][e.target[b]];
    }
  return sum.re;
}

// B_j = sum_{wt E = j} tr(E P E^dag P), by dense matrices
inline std::vector<Rat> dense_b(const qcert::StabilizerCode& code) {
  const int n = code.n();
  Dense p = projector(code);
  std::vector<Rat> b(n + 1);
  for (std::uint64_t idx = 0; idx < (std::uint64_t(1) << (2 * n)); ++idx) {
    auto e = qcert::PauliString::from_index(n, idx);
    b[e.weight()] += conjugated_overlap(monomial(e), p);
  }
  return b;
}

// A_j = sum_{wt E = j} |tr(E P)|^2, by dense matrices
inline std::vector<Rat> dense_a(const qcert::StabilizerCode& code) {
  const int n = code.n();
  Dense p = projector(code);
  std::vector<Rat> a(n + 1);
  for (std::uint64_t idx = 0; idx < (std::uint64_t(1) << (2 * n)); ++idx) {
    auto e = qcert::PauliString::from_index(n, idx);
    Monomial m = monomial(e);
    G tr;
    for (std::size_t b = 0; b < p.size(); ++b) tr = tr + m.coeff[b] * p[b][m.target[b]];
    a[e.weight()] += tr.re * tr.re + tr.im * tr.im;
  }
  return a;
}

}  // namespace oracle
