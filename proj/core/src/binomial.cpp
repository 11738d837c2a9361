#include "kmono/binomial.hpp"

#include <stdexcept>
#include <string>

namespace kmono {
namespace {

u128 gcd(u128 a, u128 b) {
  while (b != 0) {
    u128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace

u128 binomial(std::uint64_t n, std::uint64_t r) {
  if (r > n) return 0;
  if (r > n - r) r = n - r;
  u128 result = 1;
  // result holds C(n - r + i, i) after step i; divide before multiplying
  for (std::uint64_t i = 1; i <= r; ++i) {
    const u128 num = n - r + i;
    const u128 g = gcd(result, i);
    const u128 den = i / g;
    u128 next;
    if (__builtin_mul_overflow(result / g, num / den, &next)) {
      throw std::overflow_error("binomial(" + std::to_string(n) + ", " +
                                std::to_string(r) + ") exceeds 128 bits");
    }
    result = next;
  }
  return result;
}

double to_double(u128 v) noexcept { return static_cast<double>(v); }

}  // namespace kmono
