#pragma once

#include <cstdint>

namespace kmono {

__extension__ typedef unsigned __int128 u128;

/// Exact binomial coefficient C(n, r), zero when r > n.
/// Throws std::overflow_error if the value does not fit in 128 bits.
u128 binomial(std::uint64_t n, std::uint64_t r);

double to_double(u128 v) noexcept;

}  // namespace kmono
