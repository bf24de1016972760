#include "vsparse/rational.hpp"

#include <cctype>

#include "vsparse/errors.hpp"

namespace vsp {

Q parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw InputError("empty number");
  auto bad = [&] { return InputError("malformed number '" + s + "'"); };
  Q out;
  if (auto slash = s.find('/'); slash != std::string::npos) {
    mpz_class num, den;
    if (num.set_str(s.substr(0, slash), 10) != 0) throw bad();
    if (den.set_str(s.substr(slash + 1), 10) != 0) throw bad();
    if (den == 0) throw InputError("zero denominator in '" + s + "'");
    out = Q(num, den);
    out.canonicalize();
    return out;
  }
  std::size_t i = 0;
  bool neg = false;
  if (s[i] == '+' || s[i] == '-') neg = s[i++] == '-';
  std::string digits;
  long frac = -1;
  for (; i < s.size(); ++i) {
    char c = s[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits += c;
      if (frac >= 0) ++frac;
    } else if (c == '.' && frac < 0) {
      frac = 0;
    } else {
      throw bad();
    }
  }
  if (digits.empty()) throw bad();
  mpz_class num(digits, 10);
  mpz_class den = 1;
  if (frac > 0) mpz_ui_pow_ui(den.get_mpz_t(), 10, static_cast<unsigned long>(frac));
  out = Q(neg ? mpz_class(-num) : num, den);
  out.canonicalize();
  return out;
}

std::string to_string(const Q& q) { return q.get_str(10); }

double to_double(const Q& q) { return q.get_d(); }

mpz_class ceil_div(const Q& q) {
  mpz_class r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

bool is_integer(const Q& q) { return q.get_den() == 1; }

std::int64_t to_int64(const Q& q) {
  if (!is_integer(q) || !q.get_num().fits_slong_p())
    throw InternalError("value " + to_string(q) + " is not a 64-bit integer");
  return q.get_num().get_si();
}

}  // namespace vsp
