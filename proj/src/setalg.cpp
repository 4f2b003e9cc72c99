#include "hc/setalg.hpp"

namespace hc {

namespace {

void check_same(const FpSet& x, const FpSet& y) {
  if (x.modulus() != y.modulus()) throw ModulusMismatch("sets over different moduli");
}

void check_no_zero(const FpSet& s, const char* what) {
  if (s.contains(0)) throw ContainsZero(what);
}

}  // namespace

FpSet sumset(const FpSet& x, const FpSet& y) {
  check_same(x, y);
  const std::uint32_t p = x.modulus();
  FpSet out(p);
  if (x.empty() || y.empty()) return out;
  // Rotate the larger set by each element of the smaller one.
  const FpSet& small = x.card() <= y.card() ? x : y;
  const FpSet& large = x.card() <= y.card() ? y : x;
  auto dst = out.mutable_words();
  small.for_each([&](std::uint32_t s) {
    kern::rotate_or(dst.data(), large.words().data(), s, p);
  });
  out.recount();
  return out;
}

FpSet product_set(const PrimeField& f, const FpSet& a, const FpSet& b) {
  check_same(a, b);
  if (a.modulus() != f.p()) throw ModulusMismatch("set modulus differs from field");
  const std::uint32_t p = f.p();
  FpSet out(p);
  if (a.empty() || b.empty()) return out;
  if ((a.contains(0) && !b.empty()) || (b.contains(0) && !a.empty())) out.insert(0);

  const std::uint32_t an = a.card() - a.contains(0);
  const std::uint32_t bn = b.card() - b.contains(0);
  if (an == 0 || bn == 0) return out;

  if (f.has_tables()) {
    // Map the nonzero parts into exponent space, where products are rotations.
    const std::uint32_t m = p - 1;
    const std::size_t nw = (m + 63) / 64;
    std::vector<std::uint64_t> logs_large(nw, 0), acc(nw, 0);
    const FpSet& small = an <= bn ? a : b;
    const FpSet& large = an <= bn ? b : a;
    large.for_each([&](std::uint32_t x) {
      if (x == 0) return;
      const std::uint32_t k = f.dlog(x);
      logs_large[k / 64] |= 1ull << (k % 64);
    });
    small.for_each([&](std::uint32_t x) {
      if (x == 0) return;
      kern::rotate_or(acc.data(), logs_large.data(), f.dlog(x), m);
    });
    for (std::size_t w = 0; w < nw; ++w) {
      std::uint64_t bits = acc[w];
      while (bits) {
        const int bpos = __builtin_ctzll(bits);
        out.insert(f.pow_g(static_cast<std::uint32_t>(w * 64 + static_cast<std::size_t>(bpos))));
        bits &= bits - 1;
      }
    }
  } else {
    a.for_each([&](std::uint32_t x) {
      if (x == 0) return;
      b.for_each([&](std::uint32_t y) {
        if (y != 0) out.insert(f.mul(x, y));
      });
    });
  }
  return out;
}

FpSet reciprocal_sumset(const PrimeField& f, const FpSet& a, const FpSet& b) {
  check_same(a, b);
  if (a.modulus() != f.p()) throw ModulusMismatch("set modulus differs from field");
  FpSet sums = sumset(a, b);
  FpSet out(f.p());
  sums.for_each([&](std::uint32_t t) {
    if (t != 0) out.insert(f.inv(t));
  });
  return out;
}

FpSet inverse_set(const PrimeField& f, const FpSet& a) {
  if (a.modulus() != f.p()) throw ModulusMismatch("set modulus differs from field");
  check_no_zero(a, "inverse_set: set contains 0");
  FpSet out(f.p());
  a.for_each([&](std::uint32_t x) { out.insert(f.inv(x)); });
  return out;
}

FpSet ratio_set(const PrimeField& f, const FpSet& x, const FpSet& y) {
  check_no_zero(y, "ratio_set: denominator set contains 0");
  return product_set(f, x, inverse_set(f, y));
}

FpSet complement(const FpSet& x) { return x.complemented(); }

std::vector<std::uint32_t> sum_multiplicities(const FpSet& x, const FpSet& y) {
  check_same(x, y);
  const std::uint32_t p = x.modulus();
  std::vector<std::uint32_t> m(p, 0);
  const auto xs = x.elements();
  const auto ys = y.elements();
  for (const std::uint32_t xv : xs) {
    for (const std::uint32_t yv : ys) {
      std::uint32_t t = xv + yv;
      if (t >= p) t -= p;
      ++m[t];
    }
  }
  return m;
}

std::vector<std::uint32_t> product_multiplicities(const PrimeField& f, const FpSet& a,
                                                  const FpSet& b) {
  check_same(a, b);
  if (a.modulus() != f.p()) throw ModulusMismatch("set modulus differs from field");
  check_no_zero(a, "product_multiplicities: set contains 0");
  check_no_zero(b, "product_multiplicities: set contains 0");
  const std::uint32_t p = f.p();
  std::vector<std::uint32_t> m(p, 0);
  const auto as = a.elements();
  const auto bs = b.elements();
  if (f.has_tables()) {
    const std::uint32_t mod = p - 1;
    std::vector<std::uint32_t> la(as.size()), lb(bs.size());
    for (std::size_t i = 0; i < as.size(); ++i) la[i] = f.dlog(as[i]);
    for (std::size_t i = 0; i < bs.size(); ++i) lb[i] = f.dlog(bs[i]);
    std::vector<std::uint32_t> c(mod, 0);
    for (const std::uint32_t x : la) {
      for (const std::uint32_t y : lb) {
        std::uint32_t k = x + y;
        if (k >= mod) k -= mod;
        ++c[k];
      }
    }
    for (std::uint32_t k = 0; k < mod; ++k) {
      if (c[k]) m[f.pow_g(k)] = c[k];
    }
  } else {
    for (const std::uint32_t x : as)
      for (const std::uint32_t y : bs) ++m[f.mul(x, y)];
  }
  return m;
}

std::uint64_t count_solutions_product(const PrimeField& f, const FpSet& a, const FpSet& b,
                                      const FpSet& u, const FpSet& v) {
  check_same(u, v);
  if (u.modulus() != f.p()) throw ModulusMismatch("set modulus differs from field");
  const auto m_uv = sum_multiplicities(u, v);
  const auto m_ab = product_multiplicities(f, a, b);
  std::uint64_t n = 0;
  for (std::uint32_t t = 0; t < f.p(); ++t)
    n += static_cast<std::uint64_t>(m_uv[t]) * m_ab[t];
  return n;
}

std::uint64_t count_solutions_reciprocal(const PrimeField& f, const FpSet& a, const FpSet& b,
                                         const FpSet& u, const FpSet& v) {
  check_same(u, v);
  check_same(a, b);
  if (a.modulus() != f.p() || u.modulus() != f.p())
    throw ModulusMismatch("set modulus differs from field");
  const auto m_uv = sum_multiplicities(u, v);
  const auto m_ab = sum_multiplicities(a, b);
  std::uint64_t n = 0;
  for (std::uint32_t t = 1; t < f.p(); ++t)
    n += static_cast<std::uint64_t>(m_uv[t]) * m_ab[f.inv(t)];
  return n;
}

}  // namespace hc
