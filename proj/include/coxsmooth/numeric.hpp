#ifndef COXSMOOTH_NUMERIC_HPP
#define COXSMOOTH_NUMERIC_HPP

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace coxsmooth {

using Integer = mpz_class;
using Rational = mpq_class;

// FNV-1a style combiner; stable across platforms (we never persist hashes).
inline void hash_combine(std::size_t& seed, std::size_t v) {
  seed ^= v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

inline std::size_t hash_integer(const mpz_class& z) {
  // Hash the limbs plus the sign; mpz_get_si would truncate.
  const mpz_srcptr p = z.get_mpz_t();
  std::size_t h = static_cast<std::size_t>(mpz_sgn(p)) + 0x51ed270b;
  const std::size_t n = mpz_size(p);
  for (std::size_t i = 0; i < n; ++i)
    hash_combine(h, static_cast<std::size_t>(mpz_getlimbn(p, i)));
  return h;
}

inline std::size_t hash_rational(const mpq_class& q) {
  std::size_t h = hash_integer(q.get_num());
  hash_combine(h, hash_integer(q.get_den()));
  return h;
}

// Canonical decimal rendering: "p/q" when the denominator is not 1, else "p".
inline std::string rational_to_string(const mpq_class& q) {
  return q.get_str();
}

inline Integer factorial(unsigned n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

}  // namespace coxsmooth

#endif
