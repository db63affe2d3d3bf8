#pragma once

#include <cstddef>

#include "segwt/bitvector.hpp"
#include "segwt/query.hpp"
#include "segwt/segments.hpp"
#include "segwt/space.hpp"
#include "segwt/wavelet_tree.hpp"

namespace segwt {

// Binary segment wavelet tree.
//
// The tree recursively halves the y-range [1, n] (node [a, b] splits at
// m = (a + b) / 2). Each internal node v has bitstrings B^L(v) and B^R(v)
// telling, for the node's segments ordered by left (resp. right) endpoint,
// which child each belongs to. These are stored superimposed as the levels of
// two wavelet trees over Y^L and Y^R (left- and right-endpoint y's ordered by
// x): because both strings are permutations of [1, n], node [a, b] occupies
// positions a..b of every level, so node-local rank and select are plain
// level rank and select offset by a - 1. E marks left (0) and right (1)
// endpoints by x.
//
// Space: 2n ceil(lg n) + 2n payload bits plus directory overhead. Every query
// visits ceil(lg n) + 1 nodes.
class SegmentIndex {
public:
    SegmentIndex() = default;
    explicit SegmentIndex(const RankSpaceInstance& inst);

    std::size_t n() const noexcept { return n_; }
    // Number of internal levels, ceil(lg n).
    std::size_t height() const noexcept { return left_.levels(); }

    // Segment with y-coordinate y.
    Segment access(std::size_t y, QueryStats* stats = nullptr) const;
    // y of the j-th lowest segment crossing x = i. NotFoundError carries the
    // crossing count when j exceeds it.
    std::size_t select(std::size_t i, std::size_t j, QueryStats* stats = nullptr) const;
    // Segments crossing x = i with y-coordinate <= y.
    std::size_t rank(std::size_t i, std::size_t y, QueryStats* stats = nullptr) const;
    // Segments crossing x = i: rank(E, 0, i) - rank(E, 1, i).
    std::size_t crossing_count(std::size_t i) const;

    const WaveletTree& left_tree() const noexcept { return left_; }
    const WaveletTree& right_tree() const noexcept { return right_; }
    const BitVector& endpoints() const noexcept { return endpoints_; }

    SpaceReport space_report() const;

    void serialize(ByteWriter& out) const;
    static SegmentIndex load(ByteReader& in);

    friend bool operator==(const SegmentIndex&, const SegmentIndex&) = default;

private:
    void check_x(std::size_t i) const;
    void check_y(std::size_t y) const;

    std::size_t n_ = 0;
    WaveletTree left_;
    WaveletTree right_;
    BitVector endpoints_;
};

}  // namespace segwt
