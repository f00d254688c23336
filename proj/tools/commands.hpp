#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qcert/numeric.hpp"
#include "qcert/variant.hpp"

namespace qcert::cli {

enum Exit : int { ok = 0, rejected = 1, usage = 2, resource_cap = 3, malformed = 4 };

struct Instance {
  int n = 0;
  long long K = 1;
  int delta = 0;
  CodeVariant variant = CodeVariant::general;
};

int cmd_enum(const std::string& code_file, std::ostream& out);
int cmd_bound(int n, int delta, CodeVariant variant, const std::optional<std::string>& provenance, std::ostream& out);

struct CertifyOptions {
  Instance inst;
  unsigned precision = 60;
  RoundingPolicy policy;
  std::string out_dir = ".";
};
int cmd_certify(const CertifyOptions& opts, std::ostream& out);

int cmd_verify(const std::string& file, std::ostream& out);

struct TableCommand {
  int n_min = 1;
  int n_max = 8;
  int delta_min = 2;
  int delta_max = 8;
  std::vector<CodeVariant> variants{CodeVariant::general};
  std::optional<std::string> store;
  std::optional<std::string> codes;
  std::optional<std::string> out;
};
int cmd_table(const TableCommand& opts, std::ostream& out);

int cmd_sdp_build(const Instance& inst, const std::string& side, const std::optional<std::string>& out_path,
                  std::ostream& out);
int cmd_sdp_export(const Instance& inst, const std::string& side, const std::string& path, unsigned digits,
                   std::ostream& out);
int cmd_sdp_solve(const Instance& inst, unsigned precision, std::ostream& out);

int cmd_graph(int n, int delta, const std::optional<std::string>& out_path, std::ostream& out);

// "1000,1e6,1000000000" -> bounds
std::vector<BigInt> parse_schedule(const std::string& text);

}  // namespace qcert::cli
