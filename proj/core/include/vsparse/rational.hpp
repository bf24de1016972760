#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace vsp {

using Q = mpq_class;

// mpq_class(n, d) does not reduce; every fraction built from parts goes
// through here.
inline Q frac(long num, long den) {
  Q q(num, den);
  q.canonicalize();
  return q;
}

// Accepts integers, decimals ("2.5", "-0.125") and fractions ("7/3").
Q parse_rational(std::string_view text);

// Canonical form: "a" for integers, "a/b" otherwise.
std::string to_string(const Q& q);

double to_double(const Q& q);
mpz_class ceil_div(const Q& q);
bool is_integer(const Q& q);

// Exact int64 conversion; throws InternalError if q is not an integer that fits.
std::int64_t to_int64(const Q& q);

}  // namespace vsp
