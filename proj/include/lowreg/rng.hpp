#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

namespace lowreg {

// Every random choice in the library flows from one 64-bit seed through this
// wrapper. mt19937_64 raw output is specified by the standard, and the
// bounded-draw below avoids std::uniform_int_distribution (whose mapping is
// implementation-defined), so identical seeds give identical results on any
// platform.
inline constexpr const char* kRngVersion = "splitmix64+mt19937_64/v1";

inline uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

class Rng {
public:
    explicit Rng(uint64_t seed) : seed_(seed), eng_(splitmix64(seed)) {}

    uint64_t next() { return eng_(); }

    // Uniform in [0, n); rejection sampling, n >= 1.
    uint64_t below(uint64_t n) {
        uint64_t threshold = (0 - n) % n;
        while (true) {
            uint64_t r = eng_();
            if (r >= threshold) return r % n;
        }
    }

    // Uniform in [0, 1) with 53 random bits.
    double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return unit() < p; }

    // Independent substream; substreams commute with evaluation order.
    Rng fork(uint64_t stream) const { return Rng(splitmix64(seed_ ^ splitmix64(stream + 1))); }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (size_t i = v.size(); i > 1; --i) {
            size_t j = static_cast<size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

    // k distinct values from [0, n), ascending.
    std::vector<int> sample_indices(int n, int k) {
        std::vector<int> pool(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) pool[static_cast<size_t>(i)] = i;
        for (int i = 0; i < k; ++i) {
            int j = i + static_cast<int>(below(static_cast<uint64_t>(n - i)));
            std::swap(pool[static_cast<size_t>(i)], pool[static_cast<size_t>(j)]);
        }
        pool.resize(static_cast<size_t>(k));
        std::sort(pool.begin(), pool.end());
        return pool;
    }

    uint64_t seed() const { return seed_; }

private:
    uint64_t seed_;
    std::mt19937_64 eng_;
};

}  // namespace lowreg
