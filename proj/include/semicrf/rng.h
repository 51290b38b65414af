#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace semicrf {

// Deterministic random source. All draws go through the raw engine output
// so that results are bit-identical across standard library implementations.
struct rng {
    std::mt19937_64 engine;

    explicit rng(std::uint64_t seed) : engine(seed) {}

    // uniform in [0, 1)
    double uniform() {
        return static_cast<double>(engine() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform();
    }

    // uniform in [0, n)
    std::size_t below(std::size_t n) {
        return static_cast<std::size_t>(engine() % n);
    }

    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = below(i);
            std::swap(v[i - 1], v[j]);
        }
    }
};

}
