#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "segwt/bitvector.hpp"
#include "segwt/query.hpp"
#include "segwt/segments.hpp"
#include "segwt/slab_structure.hpp"
#include "segwt/space.hpp"

namespace segwt {

// Delta-ary segment wavelet tree.
//
// Node [a, b] with s = b - a + 1 segments has children
// c = 0 .. delta-1 covering [a + floor(s c / delta), a + floor(s (c+1) / delta) - 1];
// some are empty when s < delta, and a singleton's only child is itself
// (c = delta - 1). Every leaf therefore sits at depth height(), the least h
// with delta^h >= n, and level d lays out the nodes of depth d side by side,
// node [a, b] owning endpoint positions 2(a-1)+1 .. 2b. One SlabStructure per
// level labels each endpoint with its segment's child slab.
class DeltaSegmentIndex {
public:
    struct Options {
        std::size_t delta = 0;  // 0: default_delta(n, epsilon)
        double epsilon = 0.5;
        SlabBackend backend = SlabBackend::wavelet;
        std::size_t block_multiplier = 1;  // block_table: width = multiplier * delta * ceil(lg n)
    };

    DeltaSegmentIndex() = default;
    explicit DeltaSegmentIndex(const RankSpaceInstance& inst) : DeltaSegmentIndex(inst, Options{}) {}
    DeltaSegmentIndex(const RankSpaceInstance& inst, const Options& opt);

    // max(2, ceil((lg n)^epsilon)).
    static std::size_t default_delta(std::size_t n, double epsilon);
    static std::pair<std::size_t, std::size_t> child_range(std::size_t a, std::size_t b, std::size_t c,
                                                           std::size_t delta);
    // Index c of the child of [a, b] whose range holds y.
    static std::size_t child_containing(std::size_t a, std::size_t b, std::size_t y, std::size_t delta);

    std::size_t n() const noexcept { return n_; }
    std::size_t delta() const noexcept { return delta_; }
    double epsilon() const noexcept { return epsilon_; }
    SlabBackend backend() const noexcept { return backend_; }
    std::size_t height() const noexcept { return levels_.size(); }
    const SlabStructure& level(std::size_t d) const { return levels_.at(d); }

    Segment access(std::size_t y, QueryStats* stats = nullptr) const;
    std::size_t select(std::size_t i, std::size_t j, QueryStats* stats = nullptr) const;
    std::size_t rank(std::size_t i, std::size_t y, QueryStats* stats = nullptr) const;
    std::size_t crossing_count(std::size_t i) const;

    SpaceReport space_report() const;

    void serialize(ByteWriter& out) const;
    static DeltaSegmentIndex load(ByteReader& in);

    friend bool operator==(const DeltaSegmentIndex&, const DeltaSegmentIndex&) = default;

private:
    void check_x(std::size_t i) const;
    void check_y(std::size_t y) const;

    std::size_t n_ = 0;
    std::size_t delta_ = 2;
    double epsilon_ = 0.5;
    SlabBackend backend_ = SlabBackend::wavelet;
    std::vector<SlabStructure> levels_;
    BitVector endpoints_;  // only when height() == 0
};

}  // namespace segwt
