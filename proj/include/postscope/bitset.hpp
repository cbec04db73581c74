#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace postscope {

// Flat bitset over [0, size) used as a union accumulator for victim index
// sets. set() reports whether the bit was newly set so distinct counts can
// be maintained incrementally.
class DenseBitset {
public:
    DenseBitset() = default;
    explicit DenseBitset(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

    std::size_t size() const { return size_; }

    bool set(std::size_t i) {
        std::uint64_t& w = words_[i >> 6];
        const std::uint64_t mask = std::uint64_t{1} << (i & 63);
        if (w & mask) return false;
        w |= mask;
        ++count_;
        return true;
    }

    bool test(std::size_t i) const {
        return (words_[i >> 6] >> (i & 63)) & 1;
    }

    std::size_t count() const { return count_; }

    void clear() {
        std::fill(words_.begin(), words_.end(), 0);
        count_ = 0;
    }

private:
    std::size_t size_ = 0;
    std::size_t count_ = 0;
    std::vector<std::uint64_t> words_;
};

}  // namespace postscope
