#include "qcert/variant.hpp"

namespace qcert {

std::string to_string(CodeVariant v) {
  switch (v) {
    case CodeVariant::general: return "general";
    case CodeVariant::pure: return "pure";
    case CodeVariant::selfdual: return "selfdual";
    case CodeVariant::additive_I: return "additive_I";
    case CodeVariant::additive_II: return "additive_II";
    case CodeVariant::additive_any: return "additive_any";
  }
  return "unknown";
}

CodeVariant parse_variant(std::string_view tag) {
  for (auto v : {CodeVariant::general, CodeVariant::pure, CodeVariant::selfdual, CodeVariant::additive_I,
                 CodeVariant::additive_II, CodeVariant::additive_any})
    if (to_string(v) == tag) return v;
  throw std::invalid_argument("unknown code variant '" + std::string(tag) + "'");
}

bool is_additive(CodeVariant v) {
  return v == CodeVariant::additive_I || v == CodeVariant::additive_II || v == CodeVariant::additive_any;
}

bool is_pure_like(CodeVariant v) { return v == CodeVariant::pure || v == CodeVariant::selfdual; }

bool is_power_of_two(long long K) { return K > 0 && (K & (K - 1)) == 0; }

void check_variant_parameters(int n, long long K, int delta, CodeVariant v) {
  if (n < 1 || n > 62) throw std::invalid_argument("n out of range");
  if (delta < 1 || delta > n + 1) throw std::invalid_argument("delta must satisfy 1 <= delta <= n+1");
  if (K < 1 || K > (1LL << n)) throw std::invalid_argument("K must satisfy 1 <= K <= 2^n");
  if (v == CodeVariant::selfdual && K != 1) throw std::invalid_argument("selfdual variant requires K = 1");
  if (is_additive(v) && !is_power_of_two(K)) throw std::invalid_argument("additive variant requires K = 2^k");
}

}  // namespace qcert
