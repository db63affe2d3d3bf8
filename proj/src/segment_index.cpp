#include "segwt/segment_index.hpp"

#include <string>
#include <utility>
#include <vector>

namespace segwt {

namespace {

// Rank of bit b among the first p bits of the node starting at `offset`.
std::size_t local_rank(const BitVector& level, std::size_t offset, bool b, std::size_t p) {
    return level.rank(b, offset + p) - level.rank(b, offset);
}

// Position within the node of its p-th b.
std::size_t local_select(const BitVector& level, std::size_t offset, bool b, std::size_t p) {
    return level.select(b, level.rank(b, offset) + p) - offset;
}

void record(QueryStats* stats, const QueryCursor& c) {
    if (!stats) return;
    ++stats->node_visits;
    if (stats->record_trace) stats->trace.push_back(c);
}

}  // namespace

SegmentIndex::SegmentIndex(const RankSpaceInstance& inst) : n_(inst.n()) {
    if (n_ == 0) throw ValidationError(ValidationKind::bad_parameter, 0, "segment index needs at least one segment");
    const auto yl = left_endpoint_ys(inst);
    const auto yr = right_endpoint_ys(inst);
    left_ = WaveletTree(yl, n_);
    right_ = WaveletTree(yr, n_);
    endpoints_ = BitVector(endpoint_bitstring(inst));
}

void SegmentIndex::check_x(std::size_t i) const {
    if (i < 1 || i > 2 * n_)
        throw RangeError("x-coordinate " + std::to_string(i) + " outside [1," + std::to_string(2 * n_) + "]");
}

void SegmentIndex::check_y(std::size_t y) const {
    if (y < 1 || y > n_) throw RangeError("y-coordinate " + std::to_string(y) + " outside [1," + std::to_string(n_) + "]");
}

std::size_t SegmentIndex::crossing_count(std::size_t i) const {
    check_x(i);
    return endpoints_.rank(false, i) - endpoints_.rank(true, i);
}

Segment SegmentIndex::access(std::size_t y, QueryStats* stats) const {
    check_y(y);
    const std::size_t levels = height();
    // Top-down path to leaf y: ranges[d] is the node on level d.
    std::vector<std::pair<std::size_t, std::size_t>> ranges(levels + 1);
    ranges[0] = {1, n_};
    for (std::size_t d = 0; d < levels; ++d) {
        const auto [a, b] = ranges[d];
        const std::size_t m = (a + b) / 2;
        ranges[d + 1] = y > m ? std::pair{m + 1, b} : std::pair{a, m};
    }

    std::size_t l = 1, r = 1;
    record(stats, QueryCursor{y, y, l, r, l + r, 0, 0});
    for (std::size_t d = levels; d-- > 0;) {
        const auto [a, b] = ranges[d];
        const bool right_child = y > (a + b) / 2;
        l = local_select(left_.level(d), a - 1, right_child, l);
        r = local_select(right_.level(d), a - 1, right_child, r);
        record(stats, QueryCursor{a, b, l, r, l + r, 0, 0});
    }
    return Segment{endpoints_.select(false, l), endpoints_.select(true, r), y};
}

std::size_t SegmentIndex::select(std::size_t i, std::size_t j, QueryStats* stats) const {
    check_x(i);
    std::size_t r = endpoints_.rank(true, i);
    std::size_t l = i - r;
    const std::size_t crossing = l - r;
    if (j < 1 || j > crossing)
        throw NotFoundError("segment-select(" + std::to_string(i) + ", " + std::to_string(j) + "): only " +
                                std::to_string(crossing) + " segments cross x=" + std::to_string(i),
                            crossing);

    std::size_t a = 1, b = n_, jbar = 0;
    for (std::size_t d = 0; d < height(); ++d) {
        record(stats, QueryCursor{a, b, l, r, l + r, jbar, j - jbar});
        const BitVector& bl = left_.level(d);
        const BitVector& br = right_.level(d);
        const std::size_t offset = a - 1;
        const std::size_t l0 = local_rank(bl, offset, false, l);
        const std::size_t r0 = local_rank(br, offset, false, r);
        const std::size_t k = l0 - r0;  // crossing segments in the lower child
        const std::size_t m = (a + b) / 2;
        if (j - jbar <= k) {
            l = l0;
            r = r0;
            b = m;
        } else {
            l -= l0;
            r -= r0;
            jbar += k;
            a = m + 1;
        }
    }
    record(stats, QueryCursor{a, b, l, r, l + r, jbar, j - jbar});
    return a;
}

std::size_t SegmentIndex::rank(std::size_t i, std::size_t y, QueryStats* stats) const {
    check_x(i);
    check_y(y);
    std::size_t r = endpoints_.rank(true, i);
    std::size_t l = i - r;
    std::size_t a = 1, b = n_, jbar = 0;
    for (std::size_t d = 0; d < height(); ++d) {
        record(stats, QueryCursor{a, b, l, r, l + r, jbar, 0});
        const BitVector& bl = left_.level(d);
        const BitVector& br = right_.level(d);
        const std::size_t offset = a - 1;
        const std::size_t l0 = local_rank(bl, offset, false, l);
        const std::size_t r0 = local_rank(br, offset, false, r);
        const std::size_t m = (a + b) / 2;
        if (y <= m) {
            l = l0;
            r = r0;
            b = m;
        } else {
            jbar += l0 - r0;
            l -= l0;
            r -= r0;
            a = m + 1;
        }
    }
    record(stats, QueryCursor{a, b, l, r, l + r, jbar, 0});
    return jbar + (l - r);
}

SpaceReport SegmentIndex::space_report() const {
    SpaceReport rep;
    rep.n = n_;
    for (std::size_t d = 0; d < height(); ++d) {
        const SpaceCount level = left_.level(d).space() + right_.level(d).space();
        rep.levels.push_back({"level " + std::to_string(d), level});
        rep.total += level;
    }
    rep.levels.push_back({"E", endpoints_.space()});
    rep.total += endpoints_.space();
    return rep;
}

void SegmentIndex::serialize(ByteWriter& out) const {
    out.u64(n_);
    left_.serialize(out);
    right_.serialize(out);
    endpoints_.serialize(out);
}

SegmentIndex SegmentIndex::load(ByteReader& in) {
    SegmentIndex idx;
    idx.n_ = static_cast<std::size_t>(in.u64());
    idx.left_ = WaveletTree::load(in);
    idx.right_ = WaveletTree::load(in);
    idx.endpoints_ = BitVector::load(in);
    if (idx.n_ == 0 || idx.left_.size() != idx.n_ || idx.right_.size() != idx.n_ || idx.left_.sigma() != idx.n_ ||
        idx.right_.sigma() != idx.n_ || idx.endpoints_.size() != 2 * idx.n_ || idx.endpoints_.count(true) != idx.n_)
        throw FormatError("segment index components disagree on n");
    return idx;
}

}  // namespace segwt
