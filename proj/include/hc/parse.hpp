#pragma once

#include <string>
#include <vector>

#include "hc/cube.hpp"
#include "hc/field.hpp"
#include "hc/fpset.hpp"

namespace hc {

// Set literals: "1,2,3", "all", "empty", "subgroup:t", "coset:t:lambda",
// "cube:a0;a1,...". Cube literals: "a0;a1,...,ad" ("a0" or "a0;" for d = 0).
// format_set and parse_set round-trip for any set.

FpSet parse_set(const PrimeField& f, const std::string& text);
HilbertCube parse_cube(const std::string& text);

std::string format_set(const FpSet& s);
std::string format_cube(const HilbertCube& c);

std::vector<std::uint32_t> parse_u32_list(const std::string& text);
std::vector<unsigned> parse_unsigned_list(const std::string& text);

}  // namespace hc
