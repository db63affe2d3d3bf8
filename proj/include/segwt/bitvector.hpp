#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "segwt/byte_io.hpp"
#include "segwt/space.hpp"

namespace segwt {

// Immutable packed bitstring with rank and select.
//
// Positions are 1-based. rank(b, i) counts b in the first i bits and accepts
// i = 0; select(b, j) returns the position of the j-th b.
//
// Rank directory: absolute counts every 2^16 bits (superblocks) and 16-bit
// counts relative to the enclosing superblock every 512 bits (blocks); the
// remainder is at most eight popcounts. Select keeps the superblock of every
// 2^16-th occurrence of each bit value, then binary-searches superblock and
// block counts and finishes with an in-word select. The directory costs about
// 1/32 bit per stored bit.
class BitVector {
public:
    static constexpr std::size_t kWordBits = 64;
    static constexpr std::size_t kBlockBits = 512;
    static constexpr std::size_t kSuperblockBits = std::size_t{1} << 16;
    static constexpr std::size_t kSelectSample = std::size_t{1} << 16;

    BitVector() = default;
    explicit BitVector(const std::vector<bool>& bits);
    // Bits beyond `length` in the last word are ignored.
    BitVector(std::vector<std::uint64_t> words, std::size_t length);

    std::size_t size() const noexcept { return length_; }
    std::size_t count(bool b) const noexcept { return b ? ones_ : length_ - ones_; }

    bool access(std::size_t i) const;
    std::size_t rank(bool b, std::size_t i) const;
    std::size_t select(bool b, std::size_t j) const;

    // Unchecked 0-based bit read.
    bool bit(std::size_t pos) const noexcept { return (words_[pos / kWordBits] >> (pos % kWordBits)) & 1U; }

    std::span<const std::uint64_t> words() const noexcept { return words_; }
    SpaceCount space() const noexcept;

    void serialize(ByteWriter& out) const;
    static BitVector load(ByteReader& in);

    friend bool operator==(const BitVector& a, const BitVector& b) {
        return a.length_ == b.length_ && a.words_ == b.words_;
    }

private:
    void build_directories();
    std::size_t rank1(std::size_t i) const noexcept;
    std::size_t ones_before_superblock(std::size_t sb) const noexcept {
        return sb == 0 ? 0 : static_cast<std::size_t>(superblock_counts_[sb - 1]);
    }

    std::vector<std::uint64_t> words_;
    std::size_t length_ = 0;
    std::size_t ones_ = 0;
    std::vector<std::uint64_t> superblock_counts_;  // ones before superblock k, k >= 1
    std::vector<std::uint16_t> block_counts_;       // ones from superblock start to block start
    std::vector<std::uint64_t> select_samples_[2];  // superblock of occurrence t*S+1, t >= 1
};

// Position (0-based) of the r-th set bit of w, 1 <= r <= popcount(w).
unsigned select_in_word(std::uint64_t w, unsigned r) noexcept;

}  // namespace segwt
