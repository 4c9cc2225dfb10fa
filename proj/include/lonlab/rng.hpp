#pragma once

#include <cstdint>
#include <vector>

namespace lonlab {

// splitmix64, used for seeding and for deriving per-run seed streams.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// xoshiro256** seeded through splitmix64. Portable and bit-stable across
// platforms, unlike the standard library distributions.
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& word : state_) word = splitmix64(sm);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform integer in [0, bound) by rejection, bound >= 1.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t threshold = -bound % bound;
        for (;;) {
            const std::uint64_t r = next_u64();
            if (r >= threshold) return r % bound;
        }
    }

    // Uniform double in [0, 1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    bool coin() { return (next_u64() & 1ULL) != 0; }

    // Fisher-Yates shuffle.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::swap(v[i - 1], v[below(i)]);
        }
    }

    // k distinct values from [0, n) in selection order.
    std::vector<int> sample_distinct(int n, int k) {
        std::vector<int> pool(n);
        for (int i = 0; i < n; ++i) pool[i] = i;
        std::vector<int> out;
        out.reserve(k);
        for (int i = 0; i < k; ++i) {
            const std::uint64_t j = i + below(n - i);
            std::swap(pool[i], pool[j]);
            out.push_back(pool[i]);
        }
        return out;
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }
    std::uint64_t state_[4];
};

// Fixed seed-derivation discipline: every (instance, run) cell owns a seed
// computed from the root seed alone, so partial re-runs match full runs.
inline std::uint64_t derive_seed(std::uint64_t root, std::uint64_t instance_index,
                                 std::uint64_t run_index) {
    std::uint64_t s = root;
    std::uint64_t a = splitmix64(s);
    s ^= (instance_index + 1) * 0x9e3779b97f4a7c15ULL;
    std::uint64_t b = splitmix64(s);
    s ^= (run_index + 1) * 0xd1b54a32d192ed03ULL;
    std::uint64_t c = splitmix64(s);
    return a ^ (b << 1) ^ c;
}

}  // namespace lonlab
