#include "segwt/delta_segment_index.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <tuple>

#include "segwt/wavelet_tree.hpp"

namespace segwt {

namespace {

SlabNode run_of(std::size_t a, std::size_t b) { return SlabNode{2 * (a - 1), 2 * (b - a + 1)}; }

void record(QueryStats* stats, const QueryCursor& c) {
    if (!stats) return;
    ++stats->node_visits;
    if (stats->record_trace) stats->trace.push_back(c);
}

void count_ops(QueryStats* stats, std::size_t ops) {
    if (stats) stats->slab_ops += ops;
}

}  // namespace

std::size_t DeltaSegmentIndex::default_delta(std::size_t n, double epsilon) {
    if (n < 2) return 2;
    const double d = std::ceil(std::pow(std::log2(static_cast<double>(n)), epsilon));
    return std::max<std::size_t>(2, static_cast<std::size_t>(d));
}

std::pair<std::size_t, std::size_t> DeltaSegmentIndex::child_range(std::size_t a, std::size_t b, std::size_t c,
                                                                   std::size_t delta) {
    const std::size_t s = b - a + 1;
    return {a + s * c / delta, a + s * (c + 1) / delta - 1};
}

std::size_t DeltaSegmentIndex::child_containing(std::size_t a, std::size_t b, std::size_t y, std::size_t delta) {
    const std::size_t s = b - a + 1;
    const std::size_t t = y - a;
    return ((t + 1) * delta + s - 1) / s - 1;
}

DeltaSegmentIndex::DeltaSegmentIndex(const RankSpaceInstance& inst, const Options& opt)
    : n_(inst.n()), epsilon_(opt.epsilon), backend_(opt.backend) {
    if (n_ == 0) throw ValidationError(ValidationKind::bad_parameter, 0, "segment index needs at least one segment");
    delta_ = opt.delta == 0 ? default_delta(n_, opt.epsilon) : opt.delta;
    if (delta_ < 2) throw ValidationError(ValidationKind::bad_parameter, delta_, "delta must be at least 2");
    if (opt.block_multiplier == 0)
        throw ValidationError(ValidationKind::bad_parameter, 0, "block multiplier must be positive");

    std::size_t height = 0;
    for (std::size_t reach = 1; reach < n_; ++height) reach = reach > n_ / delta_ ? n_ : reach * delta_;

    if (height == 0) {
        endpoints_ = BitVector(endpoint_bitstring(inst));
        return;
    }

    // Endpoints in level order: (y, is_right), initially by x.
    struct End {
        std::size_t y;
        bool right;
    };
    std::vector<End> order(2 * n_);
    for (const Segment& s : inst.segments()) {
        order[s.x_left - 1] = {s.y, false};
        order[s.x_right - 1] = {s.y, true};
    }
    std::vector<std::pair<std::size_t, std::size_t>> node_of(n_ + 1, {1, n_});
    const std::size_t block_width = opt.block_multiplier * delta_ * std::max<std::size_t>(1, ceil_log2(n_));

    std::vector<std::size_t> labels(2 * n_);
    std::vector<bool> kinds(2 * n_);
    for (std::size_t d = 0; d < height; ++d) {
        for (std::size_t p = 0; p < order.size(); ++p) {
            const auto [a, b] = node_of[order[p].y];
            labels[p] = child_containing(a, b, order[p].y, delta_) + 1;
            kinds[p] = order[p].right;
        }
        levels_.emplace_back(labels, kinds, delta_, backend_, block_width);
        for (std::size_t y = 1; y <= n_; ++y) {
            const auto [a, b] = node_of[y];
            node_of[y] = child_range(a, b, child_containing(a, b, y, delta_), delta_);
        }
        std::stable_sort(order.begin(), order.end(),
                         [&](const End& u, const End& v) { return node_of[u.y].first < node_of[v.y].first; });
    }
}

void DeltaSegmentIndex::check_x(std::size_t i) const {
    if (i < 1 || i > 2 * n_)
        throw RangeError("x-coordinate " + std::to_string(i) + " outside [1," + std::to_string(2 * n_) + "]");
}

void DeltaSegmentIndex::check_y(std::size_t y) const {
    if (y < 1 || y > n_) throw RangeError("y-coordinate " + std::to_string(y) + " outside [1," + std::to_string(n_) + "]");
}

std::size_t DeltaSegmentIndex::crossing_count(std::size_t i) const {
    check_x(i);
    if (levels_.empty()) return endpoints_.rank(false, i) - endpoints_.rank(true, i);
    return levels_[0].slab_rank(run_of(1, n_), i, delta_);
}

Segment DeltaSegmentIndex::access(std::size_t y, QueryStats* stats) const {
    check_y(y);
    std::vector<std::pair<std::size_t, std::size_t>> ranges(height() + 1);
    std::vector<std::size_t> slab(height());
    ranges[0] = {1, n_};
    for (std::size_t d = 0; d < height(); ++d) {
        const auto [a, b] = ranges[d];
        slab[d] = child_containing(a, b, y, delta_);
        ranges[d + 1] = child_range(a, b, slab[d], delta_);
    }

    // Local positions of the segment's two endpoints in the leaf.
    std::size_t l = 1, r = 2;
    record(stats, QueryCursor{y, y, l, r, 0, 0, 0});
    for (std::size_t d = height(); d-- > 0;) {
        const auto [a, b] = ranges[d];
        const SlabNode node = run_of(a, b);
        l = levels_[d].endpoint_select(node, slab[d] + 1, l);
        r = levels_[d].endpoint_select(node, slab[d] + 1, r);
        count_ops(stats, 2);
        record(stats, QueryCursor{a, b, l, r, 0, 0, 0});
    }
    return Segment{l, r, y};
}

std::size_t DeltaSegmentIndex::select(std::size_t i, std::size_t j, QueryStats* stats) const {
    const std::size_t crossing = crossing_count(i);
    if (j < 1 || j > crossing)
        throw NotFoundError("segment-select(" + std::to_string(i) + ", " + std::to_string(j) + "): only " +
                                std::to_string(crossing) + " segments cross x=" + std::to_string(i),
                            crossing);

    std::size_t a = 1, b = n_, iv = i, jbar = 0;
    for (std::size_t d = 0; d < height(); ++d) {
        record(stats, QueryCursor{a, b, 0, 0, iv, jbar, j - jbar});
        const SlabNode node = run_of(a, b);
        const SlabStructure& level = levels_[d];
        const std::size_t k = level.slab_select(node, iv, j - jbar);
        jbar += level.slab_rank(node, iv, k - 1);
        iv = level.endpoint_rank(node, k, iv);
        count_ops(stats, 3);
        std::tie(a, b) = child_range(a, b, k - 1, delta_);
    }
    record(stats, QueryCursor{a, b, 0, 0, iv, jbar, j - jbar});
    return a;
}

std::size_t DeltaSegmentIndex::rank(std::size_t i, std::size_t y, QueryStats* stats) const {
    check_x(i);
    check_y(y);
    std::size_t a = 1, b = n_, iv = i, jbar = 0;
    for (std::size_t d = 0; d < height(); ++d) {
        record(stats, QueryCursor{a, b, 0, 0, iv, jbar, 0});
        const SlabNode node = run_of(a, b);
        const SlabStructure& level = levels_[d];
        const std::size_t c = child_containing(a, b, y, delta_);
        jbar += level.slab_rank(node, iv, c);
        iv = level.endpoint_rank(node, c + 1, iv);
        count_ops(stats, 2);
        std::tie(a, b) = child_range(a, b, c, delta_);
    }
    record(stats, QueryCursor{a, b, 0, 0, iv, jbar, 0});
    return jbar + (iv == 1);
}

SpaceReport DeltaSegmentIndex::space_report() const {
    SpaceReport rep;
    rep.n = n_;
    for (std::size_t d = 0; d < height(); ++d) {
        const SpaceCount s = levels_[d].space();
        rep.levels.push_back({"level " + std::to_string(d), s});
        rep.total += s;
    }
    if (levels_.empty()) {
        rep.levels.push_back({"E", endpoints_.space()});
        rep.total += endpoints_.space();
    }
    return rep;
}

void DeltaSegmentIndex::serialize(ByteWriter& out) const {
    out.u64(n_);
    out.u64(delta_);
    out.f64(epsilon_);
    out.u8(static_cast<std::uint8_t>(backend_));
    out.u64(levels_.size());
    for (const auto& level : levels_) level.serialize(out);
    if (levels_.empty()) endpoints_.serialize(out);
}

DeltaSegmentIndex DeltaSegmentIndex::load(ByteReader& in) {
    DeltaSegmentIndex idx;
    idx.n_ = static_cast<std::size_t>(in.u64());
    idx.delta_ = static_cast<std::size_t>(in.u64());
    idx.epsilon_ = in.f64();
    const std::uint8_t backend = in.u8();
    if (backend > 1) throw FormatError("unknown slab backend tag");
    idx.backend_ = static_cast<SlabBackend>(backend);
    const std::uint64_t height = in.u64();
    if (idx.n_ == 0 || idx.delta_ < 2 || height > 64) throw FormatError("delta index header is inconsistent");
    for (std::uint64_t d = 0; d < height; ++d) {
        idx.levels_.push_back(SlabStructure::load(in));
        const SlabStructure& level = idx.levels_.back();
        if (level.size() != 2 * idx.n_ || level.delta() != idx.delta_ || level.backend() != idx.backend_ ||
            level.kinds().count(true) != idx.n_)
            throw FormatError("delta index level " + std::to_string(d) + " disagrees with header");
    }
    std::size_t expect = 0;
    for (std::size_t reach = 1; reach < idx.n_; ++expect) reach = reach > idx.n_ / idx.delta_ ? idx.n_ : reach * idx.delta_;
    if (expect != height) throw FormatError("delta index height does not match n and delta");
    if (height == 0) {
        idx.endpoints_ = BitVector::load(in);
        if (idx.endpoints_.size() != 2 * idx.n_ || idx.endpoints_.count(true) != idx.n_)
            throw FormatError("endpoint bitstring disagrees with n");
    }
    return idx;
}

}  // namespace segwt
