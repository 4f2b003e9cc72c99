#include "hc/field.hpp"

#include <cmath>
#include <numbers>

namespace hc {

namespace {

std::uint64_t mulmod64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod64(r, a, m);
    a = mulmod64(a, a, m);
    e >>= 1;
  }
  return r;
}

std::vector<std::uint32_t> prime_factors(std::uint32_t n) {
  std::vector<std::uint32_t> fs;
  for (std::uint32_t q = 2; static_cast<std::uint64_t>(q) * q <= n; ++q) {
    if (n % q == 0) {
      fs.push_back(q);
      while (n % q == 0) n /= q;
    }
  }
  if (n > 1) fs.push_back(n);
  return fs;
}

std::vector<cplx> unit_roots(std::uint32_t order) {
  std::vector<cplx> roots(order);
  const double tau = 2.0 * std::numbers::pi;
  for (std::uint32_t k = 0; k < order; ++k) {
    const double a = tau * static_cast<double>(k) / static_cast<double>(order);
    roots[k] = {std::cos(a), std::sin(a)};
  }
  return roots;
}

}  // namespace

bool PrimeField::is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // This witness set is deterministic below 2^64.
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod64(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

PrimeField::PrimeField(std::uint32_t p, TableMode mode) : p_(p) {
  if (p < 3 || p > 0x80000000u) throw RangeError("modulus must satisfy 3 <= p <= 2^31");
  if (!is_prime(p)) throw CompositeModulus("modulus is not prime");

  const auto factors = prime_factors(p - 1);
  for (std::uint32_t g = 2; g < p; ++g) {
    bool primitive = true;
    for (std::uint32_t q : factors) {
      if (powmod64(g, (p - 1) / q, p) == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) {
      g_ = g;
      break;
    }
  }

  const bool want_tables =
      mode == TableMode::Require || (mode == TableMode::Auto && p <= table_cap);
  if (mode == TableMode::Require && p > table_cap)
    throw TableTooLarge("dlog tables capped at p <= 2^26");
  if (!want_tables) return;

  pow_.assign(p, 0);
  dlog_.assign(p, 0);
  std::uint32_t x = 1;
  for (std::uint32_t k = 0; k + 1 < p; ++k) {
    pow_[k] = x;
    dlog_[x] = k;
    x = mul(x, g_);
  }

  // inv[x] = -(p/x) * inv[p mod x], the standard linear-time recurrence.
  inv_.assign(p, 0);
  inv_[1] = 1;
  for (std::uint32_t v = 2; v < p; ++v) {
    inv_[v] = static_cast<std::uint32_t>(
        static_cast<std::uint64_t>(p - p / v) * inv_[p % v] % p);
  }
}

std::uint32_t PrimeField::pow(std::uint32_t a, std::uint64_t e) const {
  return static_cast<std::uint32_t>(powmod64(a, e, p_));
}

std::uint32_t PrimeField::inv(std::uint32_t a) const {
  if (a == 0) throw ZeroScalar("zero has no inverse");
  if (a >= p_) throw RangeError("residue out of range");
  if (!inv_.empty()) return inv_[a];
  return pow(a, p_ - 2);
}

std::uint32_t PrimeField::dlog(std::uint32_t x) const {
  require_tables();
  if (x == 0 || x >= p_) throw RangeError("dlog defined on 1..p-1");
  return dlog_[x];
}

std::uint32_t PrimeField::pow_g(std::uint32_t k) const {
  require_tables();
  if (k >= p_ - 1) throw RangeError("exponent out of range");
  return pow_[k];
}

void PrimeField::require_tables() const {
  if (!has_tables()) throw TablesUnavailable("operation needs dlog tables (p <= 2^26)");
}

const std::vector<cplx>& PrimeField::mult_roots() const {
  std::call_once(mult_roots_once_, [this] { mult_roots_ = unit_roots(p_ - 1); });
  return mult_roots_;
}

const std::vector<cplx>& PrimeField::add_roots() const {
  std::call_once(add_roots_once_, [this] { add_roots_ = unit_roots(p_); });
  return add_roots_;
}

cplx PrimeField::character(CharacterIndex j, std::uint32_t x) const {
  require_tables();
  if (j.j >= p_ - 1) throw RangeError("character index out of range");
  if (x >= p_) throw RangeError("residue out of range");
  if (x == 0) return {0.0, 0.0};  // the convention chi(0) = 0
  const std::uint64_t k = static_cast<std::uint64_t>(j.j) * dlog_[x] % (p_ - 1);
  return mult_roots()[k];
}

cplx PrimeField::additive_character(std::uint32_t lambda, std::uint32_t z) const {
  if (lambda >= p_ || z >= p_) throw RangeError("residue out of range");
  const std::uint64_t k = static_cast<std::uint64_t>(lambda) * z % p_;
  return add_roots()[k];
}

Subgroup PrimeField::subgroup_of_order(std::uint32_t t) const {
  if (t == 0 || (p_ - 1) % t != 0) throw NotADivisor("order must divide p-1");
  Subgroup g;
  g.order = t;
  g.generator = pow(g_, (p_ - 1) / t);
  g.elements = FpSet(p_);
  std::uint32_t x = 1;
  for (std::uint32_t i = 0; i < t; ++i) {
    g.elements.insert(x);
    x = mul(x, g.generator);
  }
  return g;
}

FpSet PrimeField::coset(const Subgroup& g, std::uint32_t lambda) const {
  if (lambda == 0) throw ZeroScalar("coset scalar must be nonzero");
  if (lambda >= p_) throw RangeError("residue out of range");
  FpSet out(p_);
  g.elements.for_each([&](std::uint32_t x) { out.insert(mul(lambda, x)); });
  return out;
}

}  // namespace hc
