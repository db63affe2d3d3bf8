#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "segwt/bitvector.hpp"

namespace segwt {

// Number of levels of a midpoint-split tree over [1, sigma]: ceil(lg sigma).
std::size_t ceil_log2(std::size_t x) noexcept;

// Balanced binary wavelet tree over symbols in [1, sigma], stored level-wise.
//
// Level d is one bitvector of length size(): the nodes of depth d laid side by
// side in alphabet order, each node spanning the positions of its symbols.
// A node with alphabet [lo, hi] sends symbols <= (lo + hi) / 2 left. A node
// whose range is already a single symbol keeps splitting into itself (all
// zero bits) so that every leaf sits at depth levels() = ceil(lg sigma) and
// every level has exactly size() bits.
class WaveletTree {
public:
    using Symbol = std::size_t;

    // One node of the tree: alphabet [lo, hi], positions [begin, end) on level `depth`.
    struct Node {
        Symbol lo = 1;
        Symbol hi = 1;
        std::size_t begin = 0;
        std::size_t end = 0;
        std::size_t depth = 0;

        std::size_t size() const noexcept { return end - begin; }
        Symbol split() const noexcept { return (lo + hi) / 2; }
    };

    WaveletTree() = default;
    WaveletTree(std::span<const Symbol> seq, std::size_t sigma);

    std::size_t size() const noexcept { return n_; }
    std::size_t sigma() const noexcept { return sigma_; }
    std::size_t levels() const noexcept { return levels_.size(); }
    const BitVector& level(std::size_t depth) const { return levels_.at(depth); }

    Symbol access(std::size_t i) const;
    std::size_t rank(Symbol a, std::size_t i) const;
    std::size_t select(Symbol a, std::size_t j) const;
    // Symbols <= c among the first i; c = 0 gives 0, c >= sigma gives i.
    std::size_t prefix_range_count(std::size_t i, Symbol c) const;
    // Symbols <= c among positions begin+1 .. end (both prefix lengths).
    std::size_t range_count(std::size_t begin, std::size_t end, Symbol c) const;

    Node root() const noexcept { return Node{1, sigma_, 0, n_, 0}; }
    bool is_leaf(const Node& v) const noexcept { return v.depth == levels_.size(); }
    Node child(const Node& v, bool b) const;
    // Local prefix length p of v mapped to the local prefix length in child b.
    std::size_t map_down(const Node& v, bool b, std::size_t p) const {
        const BitVector& bits = levels_[v.depth];
        return bits.rank(b, v.begin + p) - bits.rank(b, v.begin);
    }
    // Zeros among the first p positions of v.
    std::size_t zeros(const Node& v, std::size_t p) const { return map_down(v, false, p); }

    // Root-to-leaf path of one symbol, for repeated ranks of that symbol.
    struct PathStep {
        std::size_t begin;   // node start on the level
        std::size_t before;  // rank(bit, begin) on the level
        bool bit;
    };
    std::vector<PathStep> symbol_path(Symbol a) const;
    // rank(a, i) given a's path; i is not checked.
    std::size_t rank_on_path(std::span<const PathStep> path, std::size_t i) const noexcept {
        for (std::size_t d = 0; d < path.size(); ++d)
            i = levels_[d].rank(path[d].bit, path[d].begin + i) - path[d].before;
        return i;
    }

    SpaceCount space() const noexcept;
    void serialize(ByteWriter& out) const;
    static WaveletTree load(ByteReader& in);

    friend bool operator==(const WaveletTree& a, const WaveletTree& b) {
        return a.n_ == b.n_ && a.sigma_ == b.sigma_ && a.levels_ == b.levels_;
    }

private:
    void check_symbol(Symbol a) const;
    void check_prefix(std::size_t i) const;

    std::size_t n_ = 0;
    std::size_t sigma_ = 1;
    std::vector<BitVector> levels_;
};

}  // namespace segwt
