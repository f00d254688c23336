#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qcert {

enum class CodeVariant { general, pure, selfdual, additive_I, additive_II, additive_any };

std::string to_string(CodeVariant v);
// Throws std::invalid_argument for unknown tags.
CodeVariant parse_variant(std::string_view tag);

bool is_additive(CodeVariant v);
bool is_pure_like(CodeVariant v);  // pure or selfdual

// Throws std::invalid_argument when K does not fit the variant.
void check_variant_parameters(int n, long long K, int delta, CodeVariant v);

// true if K = 2^k for some k >= 0
bool is_power_of_two(long long K);

}  // namespace qcert
