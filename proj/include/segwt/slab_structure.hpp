#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "segwt/bitvector.hpp"
#include "segwt/wavelet_tree.hpp"

namespace segwt {

enum class SlabBackend : std::uint8_t {
    wavelet = 0,      // two wavelet trees over the labels, split by endpoint kind
    block_table = 1,  // packed labels plus per-block cumulative counts
};

const char* to_string(SlabBackend b) noexcept;

// Contiguous run of endpoints belonging to one tree node: positions
// begin+1 .. begin+size of the level (begin is a prefix length).
struct SlabNode {
    std::size_t begin = 0;
    std::size_t size = 0;
};

// Fixed-width unsigned integers packed into 64-bit words.
class PackedInts {
public:
    PackedInts() = default;
    PackedInts(std::span<const std::size_t> values, unsigned width);

    std::size_t size() const noexcept { return size_; }
    unsigned width() const noexcept { return width_; }
    std::size_t operator[](std::size_t p) const noexcept;
    std::span<const std::uint64_t> words() const noexcept { return words_; }

    void serialize(ByteWriter& out) const;
    static PackedInts load(ByteReader& in);
    friend bool operator==(const PackedInts&, const PackedInts&) = default;

private:
    std::vector<std::uint64_t> words_;
    std::size_t size_ = 0;
    unsigned width_ = 1;
};

// One level of the Delta-ary segment wavelet tree.
//
// Every endpoint of the level carries a label in [1, delta], the child slab
// of its segment within its node, and a kind (0 left, 1 right). The four
// operations are relative to a node's endpoint run; local prefix lengths and
// positions count endpoints of that node in x-order. The node's run must hold
// both endpoints of each of its segments.
class SlabStructure {
public:
    SlabStructure() = default;
    // block_width is the block length in endpoints (block_table only).
    SlabStructure(std::span<const std::size_t> labels, const std::vector<bool>& kinds, std::size_t delta,
                  SlabBackend backend, std::size_t block_width);

    std::size_t delta() const noexcept { return delta_; }
    std::size_t size() const noexcept { return kinds_.size(); }
    SlabBackend backend() const noexcept { return static_cast<SlabBackend>(impl_.index()); }
    const BitVector& kinds() const noexcept { return kinds_; }
    std::size_t label(std::size_t pos) const;  // 1-based level position

    // Crossing segments of the node among slabs [1, j], given the node's
    // first i endpoints.
    std::size_t slab_rank(SlabNode node, std::size_t i, std::size_t j) const;
    // Slab holding the j-th lowest crossing segment.
    std::size_t slab_select(SlabNode node, std::size_t i, std::size_t j) const;
    // Label-k endpoints among the node's first i endpoints.
    std::size_t endpoint_rank(SlabNode node, std::size_t k, std::size_t i) const;
    // Local position of the node's i-th label-k endpoint.
    std::size_t endpoint_select(SlabNode node, std::size_t k, std::size_t i) const;

    SpaceCount space() const noexcept;
    void serialize(ByteWriter& out) const;
    static SlabStructure load(ByteReader& in);

    friend bool operator==(const SlabStructure&, const SlabStructure&) = default;

private:
    struct WaveletLabels {
        WaveletTree lefts;   // labels of left endpoints in level order
        WaveletTree rights;  // labels of right endpoints in level order
        friend bool operator==(const WaveletLabels&, const WaveletLabels&) = default;
    };
    struct BlockTable {
        PackedInts labels;  // label - 1 per endpoint
        std::size_t width = 1;
        // Per block start p = b * width and slab j: crossing[b * delta + j - 1]
        // is the left-minus-right count of labels <= j among the first p
        // endpoints, counts[b * delta + k - 1] the number of label-k endpoints.
        std::vector<std::int32_t> crossing;
        std::vector<std::uint32_t> counts;
        friend bool operator==(const BlockTable&, const BlockTable&) = default;
    };

    void check_node(SlabNode node) const;
    void check_prefix(SlabNode node, std::size_t i) const;
    void check_slab(std::size_t k, std::size_t lowest) const;

    // Left-minus-right count of labels <= j among the first p level endpoints.
    long long crossing_prefix(std::size_t p, std::size_t j) const;
    // Per-slab left-minus-right counts among the first p level endpoints.
    void crossing_by_slab(std::size_t p, std::span<long long> out) const;
    std::size_t label_prefix(std::size_t p, std::size_t k) const;
    std::size_t label_select_global(std::size_t k, std::size_t g) const;
    std::size_t endpoint_select_merged(SlabNode node, std::size_t k, std::size_t i) const;

    std::size_t delta_ = 2;
    BitVector kinds_;
    std::variant<WaveletLabels, BlockTable> impl_;
};

}  // namespace segwt
