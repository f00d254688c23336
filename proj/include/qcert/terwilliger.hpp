#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qcert/enumerators.hpp"
#include "qcert/exactfield.hpp"
#include "qcert/lpbound.hpp"
#include "qcert/pauli.hpp"
#include "qcert/variant.hpp"

namespace qcert {

inline constexpr const char* beta_orientation = "printed";

bool in_index_set(const IndexQuad& q, int n);
// lexicographic in (i, j, t, p)
std::vector<IndexQuad> index_set(int n);

// Members of q's identification class: same t-p, (i, j, i+j-t-p) permuted, valid in I(n).
std::vector<IndexQuad> class_members(const IndexQuad& q, int n);
// Smallest member of the class, or nullopt when t-p is odd (the variable is forced to zero).
std::optional<IndexQuad> canonical_class(const IndexQuad& q, int n);

// number of ordered Pauli pairs with this profile
Rat orbit_size(const IndexQuad& q, int n);

BigInt beta_coeff(int m, int t, int i, int j, int k);
QExt alpha_coeff(int i, int j, int t, int p, int a, int k, int n);

struct BlockIndex {
  int a = 0;
  int k = 0;

  int first() const { return k; }
  int last(int n) const { return n + a - k; }
  int full_dim(int n) const { return n + a - 2 * k + 1; }
  auto operator<=>(const BlockIndex&) const = default;
};

std::string to_string(const BlockIndex& b);
std::vector<BlockIndex> block_indices(int n);

// Row/column labels i of block (a,k) kept for the variant; pure codes drop 0 < i < delta.
std::vector<int> block_labels(const BlockIndex& b, int n, int delta, CodeVariant variant);

// Nonzero alpha(q, a, k) over all blocks containing entry (q.i, q.j).
struct AlphaTerm {
  BlockIndex block;
  QExt coeff;
};
std::vector<AlphaTerm> alpha_terms(const IndexQuad& q, int n);

// x must hold a value for every class representative with a nonzero coefficient;
// forced-zero quads contribute nothing. Throws std::out_of_range on a missing class.
std::vector<std::pair<BlockIndex, SymMatrixQ>> assemble_blocks(const std::map<IndexQuad, Rat>& x, int n);

// x = lambda / gamma on every class representative (zeros included)
std::map<IndexQuad, Rat> normalized_weights(const MatrixWeights& lambda);

struct BlockEntryForm {
  std::vector<std::pair<std::size_t, QExt>> terms;  // variable index, coefficient
};

struct PrimalBlock {
  BlockIndex index;
  std::vector<int> labels;
  std::vector<BlockEntryForm> entries;  // packed lower triangle
};

struct SparseRow {
  std::map<std::size_t, Rat> coeffs;  // variable index -> coefficient
  RowSense sense = RowSense::equal;
  Rat rhs;
  std::string label;
};

bool row_holds(const SparseRow& row, const std::vector<Rat>& point);

struct PrimalOptions {
  bool lp_side_constraints = false;  // KB_i >= A_i and S_i >= 0 on diagonal sums
};

struct PrimalSDP {
  int n = 0;
  long long K = 0;
  int delta = 0;
  CodeVariant variant = CodeVariant::general;
  std::vector<IndexQuad> variables;  // all of I(n)
  std::vector<SparseRow> rows;
  std::vector<PrimalBlock> blocks;

  std::size_t variable_index(const IndexQuad& q) const;
};

PrimalSDP build_primal_sdp(int n, long long K, int delta, CodeVariant variant, const PrimalOptions& opts = {});

// values indexed like sdp.variables
std::vector<Rat> primal_point(const PrimalSDP& sdp, const std::map<IndexQuad, Rat>& x);
std::vector<SymMatrixQ> evaluate_primal_blocks(const PrimalSDP& sdp, const std::vector<Rat>& point);

void write_primal_json(const PrimalSDP& sdp, std::ostream& out);

class LovaszGraph {
 public:
  static constexpr int max_qubits = 8;

  LovaszGraph(int n, int delta);

  int n() const { return n_; }
  int delta() const { return delta_; }
  const std::vector<PauliString>& vertices() const { return vertices_; }
  bool adjacent(std::size_t u, std::size_t v) const;
  std::uint64_t edge_count() const;

  // theta SDP in SDPA sparse format; refuses graphs above max_vertices
  void export_theta_sdpa(std::ostream& out, std::size_t max_vertices = 1024) const;

 private:
  int n_;
  int delta_;
  std::vector<PauliString> vertices_;
};

inline LovaszGraph build_lovasz_graph(int n, int delta) { return LovaszGraph(n, delta); }

}  // namespace qcert
