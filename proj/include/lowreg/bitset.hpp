#pragma once

#include <bit>
#include <cassert>
#include <cstdint>
#include <vector>

namespace lowreg {

// Fixed-size packed bitset. The adjacency rows and every vertex subset in the
// library are one of these, so the hot operation is and_count (intersection
// popcount) without a temporary.
class Bitset {
public:
    Bitset() = default;
    explicit Bitset(int n) : n_(n), w_((n + 63) / 64, 0) {}

    static Bitset full(int n) {
        Bitset b(n);
        for (auto& w : b.w_) w = ~0ULL;
        b.trim();
        return b;
    }

    int size() const { return n_; }

    bool test(int i) const {
        assert(i >= 0 && i < n_);
        return (w_[static_cast<size_t>(i) >> 6] >> (i & 63)) & 1ULL;
    }

    void set(int i) {
        assert(i >= 0 && i < n_);
        w_[static_cast<size_t>(i) >> 6] |= 1ULL << (i & 63);
    }

    void reset(int i) {
        assert(i >= 0 && i < n_);
        w_[static_cast<size_t>(i) >> 6] &= ~(1ULL << (i & 63));
    }

    int count() const {
        int c = 0;
        for (auto w : w_) c += std::popcount(w);
        return c;
    }

    bool any() const {
        for (auto w : w_)
            if (w) return true;
        return false;
    }

    bool none() const { return !any(); }

    Bitset& operator&=(const Bitset& o) {
        assert(n_ == o.n_);
        for (size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
        return *this;
    }

    Bitset& operator|=(const Bitset& o) {
        assert(n_ == o.n_);
        for (size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
        return *this;
    }

    // this \ o
    Bitset& subtract(const Bitset& o) {
        assert(n_ == o.n_);
        for (size_t i = 0; i < w_.size(); ++i) w_[i] &= ~o.w_[i];
        return *this;
    }

    friend Bitset operator&(Bitset a, const Bitset& b) { return a &= b; }
    friend Bitset operator|(Bitset a, const Bitset& b) { return a |= b; }

    static long long and_count(const Bitset& a, const Bitset& b) {
        assert(a.n_ == b.n_);
        long long c = 0;
        for (size_t i = 0; i < a.w_.size(); ++i) c += std::popcount(a.w_[i] & b.w_[i]);
        return c;
    }

    bool intersects(const Bitset& o) const {
        assert(n_ == o.n_);
        for (size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & o.w_[i]) return true;
        return false;
    }

    bool is_subset_of(const Bitset& o) const {
        assert(n_ == o.n_);
        for (size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & ~o.w_[i]) return false;
        return true;
    }

    // -1 when exhausted
    int find_first() const { return find_from(0); }

    int find_next(int i) const { return find_from(i + 1); }

    std::vector<int> to_vector() const {
        std::vector<int> out;
        out.reserve(static_cast<size_t>(count()));
        for (int i = find_first(); i >= 0; i = find_next(i)) out.push_back(i);
        return out;
    }

    bool operator==(const Bitset&) const = default;

private:
    void trim() {
        if (n_ & 63) w_.back() &= (~0ULL) >> (64 - (n_ & 63));
    }

    int find_from(int i) const {
        if (i >= n_) return -1;
        size_t word = static_cast<size_t>(i) >> 6;
        uint64_t cur = w_[word] & (~0ULL << (i & 63));
        while (true) {
            if (cur) return static_cast<int>((word << 6) + std::countr_zero(cur));
            if (++word >= w_.size()) return -1;
            cur = w_[word];
        }
    }

    int n_ = 0;
    std::vector<uint64_t> w_;
};

}  // namespace lowreg
