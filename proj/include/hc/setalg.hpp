#pragma once

#include <cstdint>
#include <vector>

#include "hc/field.hpp"
#include "hc/fpset.hpp"

namespace hc {

// Set algebra over F_p. Zero handling is explicit per operation: the product
// and counting operations state exactly when 0 is allowed, nothing strips it
// silently.

// {x + y mod p}
FpSet sumset(const FpSet& x, const FpSet& y);

// {a*b mod p}; 0 is in the result iff one side contains 0 and the other is
// nonempty. Uses index additions in dlog space when the field has tables.
FpSet product_set(const PrimeField& f, const FpSet& a, const FpSet& b);

// {(a+b)^{-1} : a+b != 0}
FpSet reciprocal_sumset(const PrimeField& f, const FpSet& a, const FpSet& b);

// {a^{-1}}; ContainsZero if 0 is a member.
FpSet inverse_set(const PrimeField& f, const FpSet& a);

// product_set(x, inverse_set(y)); ContainsZero if 0 in y.
FpSet ratio_set(const PrimeField& f, const FpSet& x, const FpSet& y);

// F_p \ x
FpSet complement(const FpSet& x);

// m[t] = #{(x,y) : x + y = t mod p}
std::vector<std::uint32_t> sum_multiplicities(const FpSet& x, const FpSet& y);

// m[t] = #{(a,b) : a*b = t mod p}; ContainsZero if 0 in a or b.
std::vector<std::uint32_t> product_multiplicities(const PrimeField& f, const FpSet& a,
                                                  const FpSet& b);

// Number of quadruples (a,b,u,v) with u + v = a*b. A,B must avoid 0.
std::uint64_t count_solutions_product(const PrimeField& f, const FpSet& a, const FpSet& b,
                                      const FpSet& u, const FpSet& v);

// Number of quadruples with u + v != 0 and (u+v)^{-1} = a + b.
std::uint64_t count_solutions_reciprocal(const PrimeField& f, const FpSet& a, const FpSet& b,
                                         const FpSet& u, const FpSet& v);

}  // namespace hc
