#ifndef SMOOTHFEM_COMBINATORICS_HPP
#define SMOOTHFEM_COMBINATORICS_HPP

#include <cstdint>
#include <vector>

namespace sfem {

/// Binomial coefficient C(n, k) as an exact 64-bit integer.
/// Safe for the ranges used here (n <= 64 or so before overflow matters).
std::int64_t binom(int n, int k);

/// Falling factorial n * (n-1) * ... * (n-r+1); by convention 1 for r = 0.
std::int64_t falling_factorial(int n, int r);

/// Multinomial coefficient |a|! / (a_0! a_1! ... a_m!) computed as a
/// product of binomials of partial sums, which keeps every intermediate
/// value bounded by the final result.
std::int64_t multinomial(const std::vector<int>& a);

} // namespace sfem

#endif
