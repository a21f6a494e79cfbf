#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace merit {

/*
 * Reproducible random stream. A stream is identified by a master seed plus a
 * path of integers (hypothesis index, block index, ...), so independent
 * pieces of work can be drawn in any order and still give identical results.
 */
class Stream {
  public:
    Stream(std::uint64_t seed, std::initializer_list<std::uint64_t> path);

    // Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    std::uint64_t bits() { return engine_(); }

  private:
    std::mt19937_64 engine_;
};

}  // namespace merit
