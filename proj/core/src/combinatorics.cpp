#include "smoothfem/combinatorics.hpp"

#include <stdexcept>

namespace sfem {

std::int64_t binom(int n, int k)
{
    if (k < 0 || n < 0 || k > n)
        return 0;
    k = std::min(k, n - k);
    std::int64_t num = 1;
    for (int i = 1; i <= k; ++i) {
        // exact at every step: num is divisible by i after multiplying n-k+i
        num = num * (n - k + i) / i;
    }
    return num;
}

std::int64_t falling_factorial(int n, int r)
{
    if (r < 0)
        throw std::invalid_argument("falling_factorial: negative order");
    std::int64_t v = 1;
    for (int i = 0; i < r; ++i)
        v *= (n - i);
    return v;
}

std::int64_t multinomial(const std::vector<int>& a)
{
    std::int64_t v = 1;
    int total = 0;
    for (int ai : a) {
        if (ai < 0)
            throw std::invalid_argument("multinomial: negative entry");
        total += ai;
        v *= binom(total, ai);
    }
    return v;
}

} // namespace sfem
