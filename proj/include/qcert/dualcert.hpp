#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qcert/exactfield.hpp"
#include "qcert/terwilliger.hpp"
#include "qcert/variant.hpp"

namespace qcert {

// coordinate index -> coefficient
using LinearForm = std::map<std::size_t, QExt>;

QExt evaluate(const LinearForm& form, const std::vector<QExt>& values);
void add_scaled(LinearForm& into, const LinearForm& form, const QExt& scale);

struct DegenerateDenominator : std::domain_error {
  using std::domain_error::domain_error;
};

struct Coordinate {
  enum class Kind { block_entry, scalar };
  Kind kind = Kind::scalar;
  std::size_t block = 0;  // block entries: position in DualInstance::blocks
  std::size_t row = 0;    // row >= col, positions within the block
  std::size_t col = 0;
  std::string name;
  bool nonnegative = false;
  // 1 when every coefficient acting on this coordinate is a rational multiple of sqrt(3);
  // the value is then taken as sqrt(3) times a rational.
  int surd_parity = 0;
};

struct DualBlock {
  BlockIndex index;
  std::vector<int> labels;
  std::size_t offset = 0;  // first coordinate (packed lower triangle)

  std::size_t dim() const { return labels.size(); }
};

struct DualConstraint {
  std::string label;
  LinearForm form;  // must vanish
};

struct DualInstance {
  int n = 0;
  long long K = 0;
  int delta = 0;
  CodeVariant variant = CodeVariant::general;
  std::string zero_exclusion = "per-class";
  std::string beta = beta_orientation;

  std::vector<DualBlock> blocks;
  std::vector<Coordinate> coords;
  std::vector<std::size_t> c_coords;        // C_0 .. C_{delta-1}
  std::optional<std::size_t> g_total;       // G (additive type I/II)
  std::map<IndexQuad, std::size_t> g_quad;  // g^{t,p}_{i,j} >= 0 (additive)

  std::map<IndexQuad, LinearForm> y;
  std::vector<LinearForm> D;      // 0..n, empty for selfdual
  std::map<int, LinearForm> Q;
  std::optional<LinearForm> w;    // selfdual
  std::vector<DualConstraint> equalities;
  LinearForm objective;

  std::size_t block_coordinate(std::size_t block, std::size_t r, std::size_t c) const;
  std::size_t block_position(const BlockIndex& b) const;  // throws if absent
};

DualInstance build_dual(int n, long long K, int delta, CodeVariant variant);

struct Certificate {
  int version = 1;
  int n = 0;
  long long K = 0;
  int delta = 0;
  CodeVariant variant = CodeVariant::general;
  std::map<BlockIndex, SymMatrixQ> Y;
  std::vector<Rat> C;
  std::optional<Rat> G;
  std::map<IndexQuad, Rat> g;

  friend bool operator==(const Certificate&, const Certificate&) = default;
};

struct CertificateFormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ShapeMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Deterministic, versioned JSON; every number is an exact string.
std::string certificate_to_json(const Certificate& cert);
Certificate certificate_from_json(const std::string& text);  // throws CertificateFormatError
void write_certificate(const Certificate& cert, const std::string& path);
Certificate read_certificate(const std::string& path);
// n-K-delta-variant.json
std::string certificate_file_name(int n, long long K, int delta, CodeVariant variant);

Certificate zero_certificate(const DualInstance& inst);
std::vector<QExt> certificate_coordinates(const DualInstance& inst, const Certificate& cert);  // ShapeMismatch
Certificate certificate_from_coordinates(const DualInstance& inst, const std::vector<QExt>& values);

struct EvaluationReport {
  std::vector<QExt> coordinates;
  std::map<IndexQuad, QExt> y;
  std::vector<QExt> D;
  std::map<int, QExt> Q;
  std::optional<QExt> w;
  QExt objective;
  std::vector<std::pair<std::string, QExt>> residuals;  // one per equality, instance order
  std::vector<std::pair<std::string, QExt>> signs;      // sign-constrained scalars

  std::optional<std::size_t> first_nonzero_residual() const;
};

EvaluationReport evaluate_certificate(const DualInstance& inst, const Certificate& cert);

struct Verdict {
  enum class Status { verified, rejected };
  Status status = Status::rejected;
  QExt objective;
  std::string reason;    // shape, equality, sign, psd, objective
  std::string location;  // constraint label, scalar name or block

  bool verified() const { return status == Status::verified; }
};

Verdict verify_certificate(const DualInstance& inst, const Certificate& cert);
// rebuilds the instance from the certificate header
Verdict verify_certificate(const Certificate& cert);

}  // namespace qcert
