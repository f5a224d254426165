#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <vector>

namespace streamnet {

// Deterministic RNG used for the train/validation split.
//
// The generator is std::mt19937_64, whose output sequence is fully specified
// by the C++ standard, and bounded draws use rejection sampling, so the same
// seed reproduces bit-identical splits on every platform. The
// implementation-defined std::uniform_int_distribution and std::shuffle are
// deliberately not used.
class PortableRng {
public:
    explicit PortableRng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    // Unbiased draw in [0, bound); bound must be nonzero.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t reject = (0 - bound) % bound;
        std::uint64_t x = engine_();
        while (x < reject) x = engine_();
        return x % bound;
    }

    // [0, 1) with 53 random mantissa bits.
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    // Fisher-Yates
    template <typename T>
    void shuffle(std::vector<T>& v) {
        if (v.size() < 2) return;
        for (std::size_t i = v.size() - 1; i > 0; --i) {
            const auto j = static_cast<std::size_t>(below(i + 1));
            std::swap(v[i], v[j]);
        }
    }

private:
    std::mt19937_64 engine_;
};

} // namespace streamnet
