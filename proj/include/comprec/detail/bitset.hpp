#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace comprec {

// Fixed-capacity dynamic bitset used for supernode sets in the Steiner DP.
class NodeBitset {
public:
    NodeBitset() = default;
    explicit NodeBitset(std::size_t capacity) : words_((capacity + 63) / 64, 0) {}

    void set(std::size_t i) { words_[i >> 6] |= (1ULL << (i & 63)); }
    bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1ULL; }

    void union_with(const NodeBitset& other) {
        for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= other.words_[w];
    }

    std::size_t count() const {
        std::size_t c = 0;
        for (std::uint64_t w : words_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }

    bool empty_storage() const { return words_.empty(); }

    // Calls fn(index) for every set bit, ascending.
    template <typename Fn>
    void for_each(Fn&& fn) const {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            std::uint64_t bits = words_[w];
            while (bits) {
                unsigned b = static_cast<unsigned>(std::countr_zero(bits));
                fn(w * 64 + b);
                bits &= bits - 1;
            }
        }
    }

    // Calls fn(index) for bits set in both this and other.
    template <typename Fn>
    void for_each_common(const NodeBitset& other, Fn&& fn) const {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            std::uint64_t bits = words_[w] & other.words_[w];
            while (bits) {
                unsigned b = static_cast<unsigned>(std::countr_zero(bits));
                fn(w * 64 + b);
                bits &= bits - 1;
            }
        }
    }

    bool operator==(const NodeBitset& other) const { return words_ == other.words_; }

private:
    std::vector<std::uint64_t> words_;
};

}  // namespace comprec
