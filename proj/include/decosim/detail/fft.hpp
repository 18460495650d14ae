#pragma once

#include <vector>

#include "decosim/types.hpp"

namespace decosim::detail {

/// In-place radix-2 FFT; size must be a power of two. The inverse
/// transform includes the 1/n factor.
void fft_inplace(std::vector<Complex>& a, bool inverse);

bool is_power_of_two(std::size_t n);
std::size_t next_power_of_two(std::size_t n);

}  // namespace decosim::detail
