#include "hc/parse.hpp"

#include <charconv>

namespace hc {

namespace {

std::uint32_t parse_u32(const std::string& text) {
  std::uint32_t v = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) throw ParseError("bad integer '" + text + "'");
  return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    if (pos == std::string::npos) {
      parts.push_back(text.substr(start));
      return parts;
    }
    parts.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
}

}  // namespace

std::vector<std::uint32_t> parse_u32_list(const std::string& text) {
  std::vector<std::uint32_t> out;
  if (text.empty()) return out;
  for (const auto& part : split(text, ',')) out.push_back(parse_u32(part));
  return out;
}

std::vector<unsigned> parse_unsigned_list(const std::string& text) {
  std::vector<unsigned> out;
  for (const auto v : parse_u32_list(text)) out.push_back(v);
  return out;
}

HilbertCube parse_cube(const std::string& text) {
  if (text.empty()) throw ParseError("empty cube literal");
  HilbertCube c;
  const std::size_t semi = text.find(';');
  if (semi == std::string::npos) {
    c.a0 = parse_u32(text);
    return c;
  }
  c.a0 = parse_u32(text.substr(0, semi));
  const std::string rest = text.substr(semi + 1);
  if (!rest.empty()) c.gens = parse_u32_list(rest);
  if (c.gens.size() > max_cube_dim) throw DimensionTooLarge("cube dimension capped at 30");
  return c;
}

FpSet parse_set(const PrimeField& f, const std::string& text) {
  if (text == "all") return FpSet::all(f.p());
  if (text == "empty" || text.empty()) return FpSet(f.p());
  if (text.rfind("subgroup:", 0) == 0) {
    return f.subgroup_of_order(parse_u32(text.substr(9))).elements;
  }
  if (text.rfind("coset:", 0) == 0) {
    const auto parts = split(text.substr(6), ':');
    if (parts.size() != 2) throw ParseError("coset literal needs coset:t:lambda");
    const Subgroup g = f.subgroup_of_order(parse_u32(parts[0]));
    return f.coset(g, parse_u32(parts[1]));
  }
  if (text.rfind("cube:", 0) == 0) {
    return expand(f, parse_cube(text.substr(5)));
  }
  FpSet s(f.p());
  for (const auto x : parse_u32_list(text)) {
    if (x >= f.p()) throw ParseError("residue " + std::to_string(x) + " out of range");
    s.insert(x);
  }
  return s;
}

std::string format_set(const FpSet& s) {
  if (s.empty()) return "empty";
  std::string out;
  s.for_each([&](std::uint32_t x) {
    if (!out.empty()) out += ',';
    out += std::to_string(x);
  });
  return out;
}

std::string format_cube(const HilbertCube& c) {
  std::string out = std::to_string(c.a0) + ";";
  for (std::size_t i = 0; i < c.gens.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(c.gens[i]);
  }
  return out;
}

}  // namespace hc
