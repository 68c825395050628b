#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <string_view>

#include "qtrellis/code.hpp"

namespace qtrellis {

// Copies of the definition files under codes/; the test suite keeps them in sync.
struct BuiltinCode {
  std::string_view name;
  std::string_view text;
};

inline constexpr std::array<BuiltinCode, 4> kBuiltinCodes{{
    {"code422", R"code(# [[4,2,2]] code, S = <XXXX, ZZZZ>
css 4
1111
--
1111
)code"},
    {"steane713", R"code(# [[7,1,3]] Steane code from the [7,4,3] Hamming code (h1 = h2).
css 7
1111000
0110011
0011110
--
1111000
0110011
0011110
)code"},
    {"shor913", R"code(# [[9,1,3]] Shor code; qubits ordered block by block (1-3, 4-6, 7-9).
# h1: X-type stabilizers, h2: Z-type stabilizers.
css 9
111111000
000111111
--
110000000
011000000
000110000
000011000
000000110
000000011
)code"},
    {"rm1513", R"code(# [[15,1,3]] quantum Reed-Muller code. Qubit j (1..15) is the column whose
# binary expansion is j, least significant bit in the first row.
# h1: the four weight-8 X-type stabilizers.
# h2: the same four rows plus their six pairwise products (Z-type).
css 15
101010101010101
011001100110011
000111100001111
000000011111111
--
101010101010101
011001100110011
000111100001111
000000011111111
001000100010001
000010100000101
000000001010101
000001100000011
000000000110011
000000000001111
)code"},
}};

inline bool is_builtin_code(std::string_view name) {
  for (const auto& c : kBuiltinCodes)
    if (c.name == name) return true;
  return false;
}

inline LoadedCode builtin_code(std::string_view name) {
  for (const auto& c : kBuiltinCodes)
    if (c.name == name) return parse_code_text(std::string(c.text), std::string(name));
  throw code_error("unknown code '" + std::string(name) + "'");
}

// Built-in name or path to a definition file.
inline LoadedCode resolve_code(const std::string& name_or_path) {
  if (is_builtin_code(name_or_path)) return builtin_code(name_or_path);
  return load_code_file(name_or_path);
}

}  // namespace qtrellis
