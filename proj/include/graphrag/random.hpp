#pragma once

#include <cstdint>
#include <vector>

namespace graphrag {

// Seeded splitmix64 generator. The standard <random> distributions are
// implementation-defined, so anything that must reproduce bit-for-bit
// (community detection, test generators) goes through this.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, n). Modulo bias is negligible for the small n used here.
    std::size_t bounded(std::size_t n) {
        return n == 0 ? 0 : static_cast<std::size_t>(next_u64() % n);
    }

    double next_unit() {
        return static_cast<double>(next_u64() >> 11) * (1.0 / 9007199254740992.0);
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = bounded(i);
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::uint64_t state_;
};

}  // namespace graphrag
