#pragma once

#include <bit>
#include <cstdint>
#include <cstddef>
#include <vector>

namespace ducba {

// Fixed-size bit vector over record indices; mining and coverage pruning use
// these as vertical tid-sets.
class BitVec {
public:
    BitVec() = default;
    explicit BitVec(size_t n) : n_(n), w_((n + 63) / 64, 0) {}

    void set(size_t i) { w_[i >> 6] |= uint64_t(1) << (i & 63); }
    bool get(size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
    size_t size() const { return n_; }

    size_t count() const {
        size_t c = 0;
        for (uint64_t w : w_) c += static_cast<size_t>(std::popcount(w));
        return c;
    }

    static BitVec intersect(const BitVec& a, const BitVec& b) {
        BitVec out(a.n_);
        for (size_t i = 0; i < a.w_.size(); ++i) out.w_[i] = a.w_[i] & b.w_[i];
        return out;
    }

    static size_t intersect_count(const BitVec& a, const BitVec& b) {
        size_t c = 0;
        for (size_t i = 0; i < a.w_.size(); ++i)
            c += static_cast<size_t>(std::popcount(a.w_[i] & b.w_[i]));
        return c;
    }

    void intersect_with(const BitVec& other) {
        for (size_t i = 0; i < w_.size(); ++i) w_[i] &= other.w_[i];
    }

    void subtract(const BitVec& other) {
        for (size_t i = 0; i < w_.size(); ++i) w_[i] &= ~other.w_[i];
    }

    bool any() const {
        for (uint64_t w : w_) if (w) return true;
        return false;
    }

    // Iterate set bits in ascending order.
    template <class Fn>
    void for_each(Fn&& fn) const {
        for (size_t wi = 0; wi < w_.size(); ++wi) {
            uint64_t w = w_[wi];
            while (w) {
                int b = std::countr_zero(w);
                fn(wi * 64 + static_cast<size_t>(b));
                w &= w - 1;
            }
        }
    }

private:
    size_t n_ = 0;
    std::vector<uint64_t> w_;
};

}  // namespace ducba
