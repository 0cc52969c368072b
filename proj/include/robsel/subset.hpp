#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "robsel/errors.hpp"

namespace robsel {

// Fixed-width bit-vector subset of {0, ..., width-1}, width <= 64. The tag
// keeps source subsets and hypothesis subsets from mixing at compile time.
// Bits at or above the universe width must stay zero; the factory helpers
// below guarantee that.
template <typename Tag>
class BitSubset {
public:
    static constexpr int max_width = 64;

    constexpr BitSubset() = default;

    static constexpr BitSubset from_mask(std::uint64_t bits) { return BitSubset(bits); }

    static constexpr BitSubset full(int width) {
        check_width(width);
        if (width == 0) return BitSubset(0);
        return BitSubset(~std::uint64_t{0} >> (max_width - width));
    }

    static constexpr BitSubset single(int index) {
        check_index(index);
        return BitSubset(std::uint64_t{1} << index);
    }

    static BitSubset from_indices(const std::vector<int>& indices) {
        std::uint64_t bits = 0;
        for (int i : indices) {
            check_index(i);
            bits |= std::uint64_t{1} << i;
        }
        return BitSubset(bits);
    }

    constexpr std::uint64_t mask() const { return bits_; }
    constexpr bool empty() const { return bits_ == 0; }
    constexpr int count() const { return std::popcount(bits_); }

    constexpr bool contains(int index) const {
        return index >= 0 && index < max_width && (bits_ >> index & 1) != 0;
    }

    constexpr BitSubset with(int index) const { return BitSubset(bits_ | single(index).bits_); }
    constexpr BitSubset without(int index) const { return BitSubset(bits_ & ~single(index).bits_); }

    constexpr bool subset_of(BitSubset other) const { return (bits_ & ~other.bits_) == 0; }

    friend constexpr BitSubset operator&(BitSubset a, BitSubset b) { return BitSubset(a.bits_ & b.bits_); }
    friend constexpr BitSubset operator|(BitSubset a, BitSubset b) { return BitSubset(a.bits_ | b.bits_); }
    // Set difference.
    friend constexpr BitSubset operator-(BitSubset a, BitSubset b) { return BitSubset(a.bits_ & ~b.bits_); }

    friend constexpr bool operator==(BitSubset a, BitSubset b) { return a.bits_ == b.bits_; }
    friend constexpr bool operator!=(BitSubset a, BitSubset b) { return a.bits_ != b.bits_; }

    // Iterates set indices in ascending order.
    class iterator {
    public:
        constexpr explicit iterator(std::uint64_t rest) : rest_(rest) {}
        constexpr int operator*() const { return std::countr_zero(rest_); }
        constexpr iterator& operator++() {
            rest_ &= rest_ - 1;
            return *this;
        }
        constexpr bool operator!=(const iterator& other) const { return rest_ != other.rest_; }

    private:
        std::uint64_t rest_;
    };

    constexpr iterator begin() const { return iterator(bits_); }
    constexpr iterator end() const { return iterator(0); }

    std::vector<int> indices() const {
        std::vector<int> out;
        out.reserve(static_cast<std::size_t>(count()));
        for (int i : *this) out.push_back(i);
        return out;
    }

private:
    constexpr explicit BitSubset(std::uint64_t bits) : bits_(bits) {}

    static constexpr void check_width(int width) {
        if (width < 0 || width > max_width) {
            throw InvalidInputError("subset width out of range: " + std::to_string(width));
        }
    }
    static constexpr void check_index(int index) {
        if (index < 0 || index >= max_width) {
            throw InvalidInputError("subset index out of range: " + std::to_string(index));
        }
    }

    std::uint64_t bits_ = 0;
};

struct SourceTag {};
struct HypothesisTag {};

using SourceSet = BitSubset<SourceTag>;
using HypothesisSet = BitSubset<HypothesisTag>;

}  // namespace robsel
