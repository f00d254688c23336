#include <bit>
#include <ostream>
#include <stdexcept>

#include "qcert/terwilliger.hpp"

namespace qcert {

LovaszGraph::LovaszGraph(int n, int delta) : n_(n), delta_(delta) {
  if (n < 1 || n > max_qubits) throw std::invalid_argument("Lovasz graph limited to 1 <= n <= 8");
  std::uint64_t total = std::uint64_t(1) << (2 * n);
  for (std::uint64_t idx = 1; idx < total; ++idx) {
    PauliString e = PauliString::from_index(n, idx);
    if (e.weight() >= delta) vertices_.push_back(e);
  }
}

bool LovaszGraph::adjacent(std::size_t u, std::size_t v) const {
  if (u == v) return false;
  const auto& a = vertices_[u];
  const auto& b = vertices_[v];
  if (commute_sign(a, b) < 0) return true;
  int w = std::popcount((a.x_bits() ^ b.x_bits()) | (a.z_bits() ^ b.z_bits()));
  return w > 0 && w < delta_;
}

std::uint64_t LovaszGraph::edge_count() const {
  std::uint64_t count = 0;
  for (std::size_t u = 0; u < vertices_.size(); ++u)
    for (std::size_t v = u + 1; v < vertices_.size(); ++v)
      if (adjacent(u, v)) ++count;
  return count;
}

// Delta = [[1, m^T], [m, M]] with M_aa = m_a and M_ab = 0 on edges.
// Variables: m_a for each vertex, then M_ab for each non-adjacent pair a < b.
// SDPA form: minimize sum_a -m_a subject to sum_i x_i F_i - F_0 >= 0 with F_0 = -E_00.
void LovaszGraph::export_theta_sdpa(std::ostream& out, std::size_t max_vertices) const {
  const std::size_t nvert = vertices_.size();
  if (nvert > max_vertices) throw std::length_error("theta SDP exceeds the vertex cap");
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t u = 0; u < nvert; ++u)
    for (std::size_t v = u + 1; v < nvert; ++v)
      if (!adjacent(u, v)) pairs.emplace_back(u, v);
  const std::size_t m = nvert + pairs.size();
  out << "* Lovasz theta SDP, n=" << n_ << " delta=" << delta_ << ", vertices=" << nvert << "\n";
  out << m << "\n1\n" << nvert + 1 << "\n";
  for (std::size_t i = 0; i < m; ++i) out << (i < nvert ? "-1" : "0") << (i + 1 == m ? "\n" : " ");
  if (m == 0) out << "\n";
  out << "0 1 1 1 -1\n";
  for (std::size_t a = 0; a < nvert; ++a) {
    out << a + 1 << " 1 1 " << a + 2 << " 1\n";
    out << a + 1 << " 1 " << a + 2 << " " << a + 2 << " 1\n";
  }
  for (std::size_t i = 0; i < pairs.size(); ++i)
    out << nvert + i + 1 << " 1 " << pairs[i].first + 2 << " " << pairs[i].second + 2 << " 1\n";
}

}  // namespace qcert
