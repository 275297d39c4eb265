#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace locc {

/// Fixed-length packed bit vector over GF(2).
class BitVector {
   public:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    BitVector() = default;
    explicit BitVector(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

    std::size_t size() const noexcept { return size_; }

    bool get(std::size_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1u; }

    void set(std::size_t i, bool value = true) noexcept {
        std::uint64_t mask = std::uint64_t{1} << (i & 63);
        if (value) {
            words_[i >> 6] |= mask;
        } else {
            words_[i >> 6] &= ~mask;
        }
    }

    void flip(std::size_t i) noexcept { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

    void clear() noexcept { std::fill(words_.begin(), words_.end(), 0); }

    BitVector &operator^=(const BitVector &other) noexcept {
        for (std::size_t w = 0; w < words_.size(); w++) {
            words_[w] ^= other.words_[w];
        }
        return *this;
    }

    BitVector &operator&=(const BitVector &other) noexcept {
        for (std::size_t w = 0; w < words_.size(); w++) {
            words_[w] &= other.words_[w];
        }
        return *this;
    }

    friend BitVector operator^(BitVector a, const BitVector &b) noexcept { return a ^= b; }
    friend BitVector operator&(BitVector a, const BitVector &b) noexcept { return a &= b; }

    std::size_t popcount() const noexcept {
        std::size_t total = 0;
        for (auto w : words_) {
            total += static_cast<std::size_t>(std::popcount(w));
        }
        return total;
    }

    bool any() const noexcept {
        return std::any_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w != 0; });
    }

    /// popcount(a & b), without materialising the intersection.
    static std::size_t and_popcount(const BitVector &a, const BitVector &b) noexcept {
        std::size_t total = 0;
        for (std::size_t w = 0; w < a.words_.size(); w++) {
            total += static_cast<std::size_t>(std::popcount(a.words_[w] & b.words_[w]));
        }
        return total;
    }

    /// First set bit at index >= from, or npos.
    std::size_t find_next(std::size_t from) const noexcept {
        if (from >= size_) {
            return npos;
        }
        std::size_t w = from >> 6;
        std::uint64_t word = words_[w] & (~std::uint64_t{0} << (from & 63));
        while (true) {
            if (word != 0) {
                return (w << 6) + static_cast<std::size_t>(std::countr_zero(word));
            }
            if (++w >= words_.size()) {
                return npos;
            }
            word = words_[w];
        }
    }

    std::vector<std::size_t> ones() const {
        std::vector<std::size_t> out;
        for (std::size_t i = find_next(0); i != npos; i = find_next(i + 1)) {
            out.push_back(i);
        }
        return out;
    }

    friend bool operator==(const BitVector &a, const BitVector &b) noexcept {
        return a.size_ == b.size_ && a.words_ == b.words_;
    }

   private:
    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

/// Rank over GF(2) of the given rows. The rows are consumed.
inline std::size_t gf2_rank(std::vector<BitVector> rows) {
    std::size_t rank = 0;
    if (rows.empty()) {
        return 0;
    }
    std::size_t cols = rows[0].size();
    for (std::size_t c = 0; c < cols && rank < rows.size(); c++) {
        std::size_t pivot = rank;
        while (pivot < rows.size() && !rows[pivot].get(c)) {
            pivot++;
        }
        if (pivot == rows.size()) {
            continue;
        }
        std::swap(rows[rank], rows[pivot]);
        for (std::size_t r = 0; r < rows.size(); r++) {
            if (r != rank && rows[r].get(c)) {
                rows[r] ^= rows[rank];
            }
        }
        rank++;
    }
    return rank;
}

}  // namespace locc
