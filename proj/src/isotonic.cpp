#include "merit/isotonic.hpp"

#include <stdexcept>

namespace merit {

std::vector<double> pava_adjust(std::span<const double> values, std::span<const double> weights) {
    if (values.empty()) throw std::invalid_argument("pava_adjust: empty input");
    if (values.size() != weights.size())
        throw std::invalid_argument("pava_adjust: values and weights differ in length");

    struct Block {
        double mean;
        double weight;
        std::size_t size;
    };
    std::vector<Block> stack;
    stack.reserve(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!(weights[i] > 0.0)) throw std::invalid_argument("pava_adjust: weights must be positive");
        stack.push_back({values[i], weights[i], 1});
        while (stack.size() > 1 && stack[stack.size() - 2].mean > stack.back().mean) {
            const Block top = stack.back();
            stack.pop_back();
            Block& prev = stack.back();
            const double w = prev.weight + top.weight;
            prev.mean = (prev.mean * prev.weight + top.mean * top.weight) / w;
            prev.weight = w;
            prev.size += top.size;
        }
    }

    std::vector<double> out;
    out.reserve(values.size());
    for (const auto& b : stack) out.insert(out.end(), b.size, b.mean);
    return out;
}

IsotonicCounts isotonic_counts(std::span<const int> counts) {
    struct Block {
        int sum;
        int size;
    };
    // Small fixed-size stack; J rarely exceeds a handful of arms.
    std::vector<Block> stack;
    stack.reserve(counts.size());
    for (int c : counts) {
        stack.push_back({c, 1});
        // prev.sum / prev.size > top.sum / top.size, compared exactly
        while (stack.size() > 1) {
            const Block& top = stack.back();
            const Block& prev = stack[stack.size() - 2];
            if (static_cast<long long>(prev.sum) * top.size <=
                static_cast<long long>(top.sum) * prev.size)
                break;
            const Block merged{prev.sum + top.sum, prev.size + top.size};
            stack.pop_back();
            stack.back() = merged;
        }
    }
    IsotonicCounts out;
    out.block_sum.reserve(counts.size());
    out.block_size.reserve(counts.size());
    for (const auto& b : stack) {
        out.block_sum.insert(out.block_sum.end(), static_cast<std::size_t>(b.size), b.sum);
        out.block_size.insert(out.block_size.end(), static_cast<std::size_t>(b.size), b.size);
    }
    return out;
}

}  // namespace merit
