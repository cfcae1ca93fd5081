#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "umk/poly.hpp"

namespace umk {

// Infix polynomial over R's variables: integers, rationals, +, -, *, ^, parentheses,
// division by nonzero constants, and implicit products such as 5t or 2(x+1).
Poly parse_poly(const PolyRing& R, std::string_view text);

struct RingDescription {
  bool zmod = false;
  std::uint64_t modulus = 0;  // zmod modulus, or p for Fp; 0 for Q
  std::vector<std::string> vars;
  std::vector<std::string> relations;
  MonomialOrder order = MonomialOrder::Grevlex;
  std::size_t sdim = 0;
};

// `zmod <m> [sdim <d>]` | `poly <Q|Fp>[v1,...,vk]/(g1; g2; ...) [grevlex|lex] sdim <d>`
RingDescription parse_ring_description(std::string_view text);

// Splits "[a, b, [c, d]]" into its top-level items.
std::vector<std::string> split_bracket_list(std::string_view text);

std::string trim(std::string_view s);

}  // namespace umk
