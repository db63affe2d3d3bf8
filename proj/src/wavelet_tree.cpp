#include "segwt/wavelet_tree.hpp"

#include <algorithm>
#include <string>

namespace segwt {

std::size_t ceil_log2(std::size_t x) noexcept {
    std::size_t levels = 0;
    while ((std::size_t{1} << levels) < x) ++levels;
    return levels;
}

WaveletTree::WaveletTree(std::span<const Symbol> seq, std::size_t sigma) : n_(seq.size()), sigma_(sigma) {
    if (sigma < 1) throw ValidationError(ValidationKind::bad_parameter, sigma, "wavelet tree alphabet must be non-empty");
    for (std::size_t p = 0; p < seq.size(); ++p)
        if (seq[p] < 1 || seq[p] > sigma)
            throw ValidationError(ValidationKind::symbol_out_of_alphabet, seq[p],
                                  "symbol " + std::to_string(seq[p]) + " at position " + std::to_string(p + 1) +
                                      " outside [1," + std::to_string(sigma) + "]");

    struct Item {
        Symbol sym;
        Symbol lo;
        Symbol hi;
    };
    std::vector<Item> cur(n_);
    for (std::size_t p = 0; p < n_; ++p) cur[p] = Item{seq[p], 1, sigma};

    const std::size_t depth = ceil_log2(sigma);
    levels_.reserve(depth);
    for (std::size_t d = 0; d < depth; ++d) {
        std::vector<bool> bits(n_);
        for (std::size_t p = 0; p < n_; ++p) {
            Item& it = cur[p];
            const Symbol m = (it.lo + it.hi) / 2;
            bits[p] = it.sym > m;
            if (bits[p]) it.lo = m + 1;
            else it.hi = m;
        }
        levels_.emplace_back(bits);
        std::stable_sort(cur.begin(), cur.end(), [](const Item& a, const Item& b) { return a.lo < b.lo; });
    }
}

void WaveletTree::check_symbol(Symbol a) const {
    if (a < 1 || a > sigma_)
        throw RangeError("symbol " + std::to_string(a) + " outside [1," + std::to_string(sigma_) + "]");
}

std::vector<WaveletTree::PathStep> WaveletTree::symbol_path(Symbol a) const {
    check_symbol(a);
    std::vector<PathStep> path;
    for (Node v = root(); !is_leaf(v);) {
        const bool b = a > v.split();
        path.push_back({v.begin, levels_[v.depth].rank(b, v.begin), b});
        v = child(v, b);
    }
    return path;
}

void WaveletTree::check_prefix(std::size_t i) const {
    if (i > n_) throw RangeError("prefix length " + std::to_string(i) + " exceeds " + std::to_string(n_));
}

WaveletTree::Node WaveletTree::child(const Node& v, bool b) const {
    const Symbol m = v.split();
    const std::size_t z = zeros(v, v.size());
    if (b) return Node{m + 1, v.hi, v.begin + z, v.end, v.depth + 1};
    return Node{v.lo, m, v.begin, v.begin + z, v.depth + 1};
}

WaveletTree::Symbol WaveletTree::access(std::size_t i) const {
    if (i < 1 || i > n_) throw RangeError("position " + std::to_string(i) + " outside [1," + std::to_string(n_) + "]");
    Node v = root();
    std::size_t pos = i - 1;
    while (!is_leaf(v)) {
        const bool b = levels_[v.depth].bit(v.begin + pos);
        pos = map_down(v, b, pos);
        v = child(v, b);
    }
    return v.lo;
}

std::size_t WaveletTree::rank(Symbol a, std::size_t i) const {
    check_symbol(a);
    check_prefix(i);
    Node v = root();
    std::size_t p = i;
    while (!is_leaf(v) && p > 0) {
        const bool b = a > v.split();
        p = map_down(v, b, p);
        v = child(v, b);
    }
    return p;
}

std::size_t WaveletTree::select(Symbol a, std::size_t j) const {
    check_symbol(a);
    std::vector<Node> path;
    path.reserve(levels_.size() + 1);
    path.push_back(root());
    while (!is_leaf(path.back())) path.push_back(child(path.back(), a > path.back().split()));
    const std::size_t occurrences = path.back().size();
    if (j < 1 || j > occurrences)
        throw NotFoundError("select(" + std::to_string(a) + ", " + std::to_string(j) + "): only " +
                                std::to_string(occurrences) + " occurrences",
                            occurrences);

    std::size_t pos = j;
    for (std::size_t d = path.size() - 1; d-- > 0;) {
        const Node& parent = path[d];
        const bool b = a > parent.split();
        const BitVector& bits = levels_[d];
        pos = bits.select(b, bits.rank(b, parent.begin) + pos) - parent.begin;
    }
    return pos;
}

std::size_t WaveletTree::prefix_range_count(std::size_t i, Symbol c) const { return range_count(0, i, c); }

std::size_t WaveletTree::range_count(std::size_t begin, std::size_t end, Symbol c) const {
    check_prefix(end);
    if (begin > end) throw RangeError("range begin " + std::to_string(begin) + " after end " + std::to_string(end));
    if (c == 0 || begin == end) return 0;
    if (c >= sigma_) return end - begin;

    Node v = root();
    std::size_t lo = begin, hi = end;
    std::size_t acc = 0;
    while (lo < hi) {
        if (c >= v.hi) return acc + (hi - lo);
        if (is_leaf(v)) break;  // leaf with c < lo
        const bool b = c > v.split();
        const std::size_t lo0 = map_down(v, false, lo);
        const std::size_t hi0 = map_down(v, false, hi);
        if (b) {
            acc += hi0 - lo0;
            lo -= lo0;
            hi -= hi0;
        } else {
            lo = lo0;
            hi = hi0;
        }
        v = child(v, b);
    }
    return acc;
}

SpaceCount WaveletTree::space() const noexcept {
    SpaceCount s;
    for (const auto& l : levels_) s += l.space();
    return s;
}

void WaveletTree::serialize(ByteWriter& out) const {
    out.u64(n_);
    out.u64(sigma_);
    out.u64(levels_.size());
    for (const auto& l : levels_) l.serialize(out);
}

WaveletTree WaveletTree::load(ByteReader& in) {
    WaveletTree t;
    t.n_ = static_cast<std::size_t>(in.u64());
    t.sigma_ = static_cast<std::size_t>(in.u64());
    const std::uint64_t depth = in.u64();
    if (t.sigma_ < 1 || depth != ceil_log2(t.sigma_)) throw FormatError("wavelet tree level count mismatch");
    t.levels_.reserve(depth);
    for (std::uint64_t d = 0; d < depth; ++d) {
        t.levels_.push_back(BitVector::load(in));
        if (t.levels_.back().size() != t.n_) throw FormatError("wavelet tree level length mismatch");
    }
    return t;
}

}  // namespace segwt
