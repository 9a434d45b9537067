#pragma once

#include <cstdint>
#include <vector>

namespace mafia {

// splitmix64: tiny, well-mixed, and stable across platforms. Used everywhere
// determinism matters (role shuffles, scripted agents, per-match seed
// derivation) instead of distribution-dependent <random> facilities.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, n). Modulo bias is irrelevant for game-sized n.
    std::uint64_t bounded(std::uint64_t n) { return n == 0 ? 0 : next_u64() % n; }

    double unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    bool chance(double p) { return unit() < p; }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(bounded(i));
            std::swap(v[i - 1], v[j]);
        }
    }

    template <typename T>
    const T& pick(const std::vector<T>& v) {
        return v[static_cast<std::size_t>(bounded(v.size()))];
    }

private:
    std::uint64_t state_;
};

// Derives an independent child seed; fixed scheme so any match in a
// tournament can be reproduced from (root_seed, index) alone.
inline std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index) {
    Rng r(root ^ (0xA0761D6478BD642FULL + index * 0xE7037ED1A0B428DBULL));
    return r.next_u64();
}

} // namespace mafia
