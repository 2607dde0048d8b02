#pragma once

#include <complex>
#include <cstddef>
#include <span>

namespace lw {

// Pairwise (cascade) summation. Error grows like O(log n) instead of O(n)
// for plain accumulation, and the result is independent of thread count
// because the split points depend only on the length.
namespace detail {

template <typename T>
T pairwise_sum_impl(std::span<const T> xs) {
    if (xs.size() <= 16) {
        T acc{};
        for (const T& x : xs) acc += x;
        return acc;
    }
    const std::size_t half = xs.size() / 2;
    return pairwise_sum_impl(xs.first(half)) + pairwise_sum_impl(xs.subspan(half));
}

} // namespace detail

inline double pairwise_sum(std::span<const double> xs) {
    return detail::pairwise_sum_impl(xs);
}

inline std::complex<double> pairwise_sum(std::span<const std::complex<double>> xs) {
    return detail::pairwise_sum_impl(xs);
}

} // namespace lw
