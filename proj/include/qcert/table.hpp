#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qcert/dualcert.hpp"
#include "qcert/enumerators.hpp"
#include "qcert/variant.hpp"

namespace qcert {

struct TableEntry {
  int n = 0;
  int delta = 0;
  CodeVariant variant = CodeVariant::general;
  std::optional<long long> lower;
  std::string lower_source;  // code file that attains the lower bound
  long long lp_upper = 0;
  long long upper = 0;
  std::string method;       // LP, SDP-cert or trivial (delta > n + 1)
  std::string certificate;  // store file name for SDP-cert entries
};

struct StoredCertificate {
  std::string file;  // name within the store
  Certificate cert;
};

// Verified certificates only; anything else is reported to log and skipped.
std::vector<StoredCertificate> load_store(const std::string& dir, std::ostream* log = nullptr);

struct NamedCode {
  std::string name;
  StabilizerCode code;
};

struct TableOptions {
  int n_min = 1;
  int n_max = 8;
  int delta_min = 2;
  int delta_max = 8;
  std::vector<CodeVariant> variants{CodeVariant::general};
  std::vector<StoredCertificate> store;
  std::vector<NamedCode> codes;  // lower bounds
  unsigned threads = 0;          // 0: hardware concurrency
};

// Overlay rule (general table only): a general certificate at K' bounds K <= K'-1,
// a self-dual certificate (K = 1) bounds K <= 0.
std::vector<TableEntry> build_table(const TableOptions& opts);
std::string table_tsv(const std::vector<TableEntry>& entries);

}  // namespace qcert
