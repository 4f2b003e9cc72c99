#pragma once

#include <stdexcept>

namespace hc {

// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define HC_ERROR_TYPE(Name) \
  struct Name : Error {     \
    using Error::Error;     \
  }

HC_ERROR_TYPE(CompositeModulus);   // modulus failed the primality check
HC_ERROR_TYPE(TableTooLarge);      // lookup tables requested beyond the size cap
HC_ERROR_TYPE(TablesUnavailable);  // operation needs dlog tables that were not built
HC_ERROR_TYPE(NotADivisor);
HC_ERROR_TYPE(ZeroScalar);
HC_ERROR_TYPE(DimensionTooLarge);
HC_ERROR_TYPE(RangeError);
HC_ERROR_TYPE(EnumerationTooLarge);
HC_ERROR_TYPE(ModulusMismatch);
HC_ERROR_TYPE(ContainsZero);
HC_ERROR_TYPE(ZeroLambda);
HC_ERROR_TYPE(BadR);
HC_ERROR_TYPE(BadEta);
HC_ERROR_TYPE(NotProper);
HC_ERROR_TYPE(RoundingError);
HC_ERROR_TYPE(Overflow);
HC_ERROR_TYPE(ParseError);

#undef HC_ERROR_TYPE

}  // namespace hc
