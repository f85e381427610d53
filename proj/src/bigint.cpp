#include "cover_spectra/bigint.hpp"

#include <cmath>
#include <limits>

namespace cover_spectra {

double log_of(const BigInt& value) {
  if (value <= 0) return -std::numeric_limits<double>::infinity();
  const std::size_t bits = boost::multiprecision::msb(value) + 1;
  if (bits <= 1000) return std::log(value.convert_to<double>());
  // Keep the top 64 bits and account for the shift separately.
  const std::size_t shift = bits - 64;
  BigInt top = value >> shift;
  return std::log(top.convert_to<double>()) + static_cast<double>(shift) * std::log(2.0);
}

double root_of(const BigInt& value, unsigned root) {
  if (value <= 0) return 0.0;
  return std::exp(log_of(value) / root);
}

}  // namespace cover_spectra
