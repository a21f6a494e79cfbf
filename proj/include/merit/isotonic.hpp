#pragma once

#include <span>
#include <vector>

namespace merit {

/*
 * Weighted pool-adjacent-violators fit: the nondecreasing sequence
 * minimising sum w_i (x_i - y_i)^2. Throws std::invalid_argument on empty
 * input, length mismatch or non-positive weights.
 */
std::vector<double> pava_adjust(std::span<const double> values, std::span<const double> weights);

// Equal-weight PAVA on integer counts, kept as exact rationals: position i
// takes the mean block_sum[i] / block_size[i] of its pooled block.
struct IsotonicCounts {
    std::vector<int> block_sum;
    std::vector<int> block_size;

    // Smallest integer m with fitted value <= m.
    int ceil_at(std::size_t i) const {
        return (block_sum[i] + block_size[i] - 1) / block_size[i];
    }
    // Largest integer m with fitted value >= m.
    int floor_at(std::size_t i) const { return block_sum[i] / block_size[i]; }
};

IsotonicCounts isotonic_counts(std::span<const int> counts);

}  // namespace merit
