#include "segwt/slab_structure.hpp"

#include <algorithm>
#include <string>

namespace segwt {

const char* to_string(SlabBackend b) noexcept {
    switch (b) {
        case SlabBackend::wavelet: return "wavelet";
        case SlabBackend::block_table: return "block";
    }
    return "?";
}

// ---------------------------------------------------------------- PackedInts

PackedInts::PackedInts(std::span<const std::size_t> values, unsigned width)
    : words_((values.size() * width + 63) / 64, 0), size_(values.size()), width_(width) {
    for (std::size_t p = 0; p < values.size(); ++p) {
        const std::size_t bit = p * width_;
        const std::uint64_t v = values[p];
        words_[bit / 64] |= v << (bit % 64);
        if (bit % 64 + width_ > 64) words_[bit / 64 + 1] |= v >> (64 - bit % 64);
    }
}

std::size_t PackedInts::operator[](std::size_t p) const noexcept {
    const std::size_t bit = p * width_;
    const std::uint64_t mask = width_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width_) - 1;
    std::uint64_t v = words_[bit / 64] >> (bit % 64);
    if (bit % 64 + width_ > 64) v |= words_[bit / 64 + 1] << (64 - bit % 64);
    return static_cast<std::size_t>(v & mask);
}

void PackedInts::serialize(ByteWriter& out) const {
    out.u32(width_);
    out.u64(size_);
    out.u64_array<std::uint64_t>(words_);
}

PackedInts PackedInts::load(ByteReader& in) {
    PackedInts p;
    p.width_ = in.u32();
    p.size_ = static_cast<std::size_t>(in.u64());
    p.words_ = in.u64_array();
    if (p.width_ < 1 || p.width_ > 64 || p.words_.size() != (p.size_ * p.width_ + 63) / 64)
        throw FormatError("packed integer array size mismatch");
    return p;
}

// ------------------------------------------------------------- SlabStructure

SlabStructure::SlabStructure(std::span<const std::size_t> labels, const std::vector<bool>& kinds, std::size_t delta,
                             SlabBackend backend, std::size_t block_width)
    : delta_(delta), kinds_(kinds) {
    if (delta < 2) throw ValidationError(ValidationKind::bad_parameter, delta, "slab count must be at least 2");
    if (labels.size() != kinds.size())
        throw ValidationError(ValidationKind::bad_parameter, labels.size(), "labels and kinds differ in length");
    for (std::size_t p = 0; p < labels.size(); ++p)
        if (labels[p] < 1 || labels[p] > delta)
            throw ValidationError(ValidationKind::symbol_out_of_alphabet, labels[p],
                                  "slab label " + std::to_string(labels[p]) + " at position " +
                                      std::to_string(p + 1) + " outside [1," + std::to_string(delta) + "]");

    if (backend == SlabBackend::wavelet) {
        std::vector<std::size_t> lefts, rights;
        for (std::size_t p = 0; p < labels.size(); ++p) (kinds[p] ? rights : lefts).push_back(labels[p]);
        impl_ = WaveletLabels{WaveletTree(lefts, delta), WaveletTree(rights, delta)};
        return;
    }

    BlockTable t;
    t.width = std::max<std::size_t>(1, block_width);
    std::vector<std::size_t> shifted(labels.begin(), labels.end());
    for (auto& v : shifted) --v;
    t.labels = PackedInts(shifted, static_cast<unsigned>(std::max<std::size_t>(1, ceil_log2(delta))));
    const std::size_t blocks = labels.size() / t.width + 1;
    t.crossing.assign(blocks * delta, 0);
    t.counts.assign(blocks * delta, 0);
    std::vector<long long> per_slab(delta, 0);
    std::vector<std::uint32_t> per_label(delta, 0);
    for (std::size_t b = 0; b < blocks; ++b) {
        long long running = 0;
        for (std::size_t k = 0; k < delta; ++k) {
            running += per_slab[k];
            t.crossing[b * delta + k] = static_cast<std::int32_t>(running);
            t.counts[b * delta + k] = per_label[k];
        }
        const std::size_t end = std::min(labels.size(), (b + 1) * t.width);
        for (std::size_t q = b * t.width; q < end; ++q) {
            per_slab[labels[q] - 1] += kinds[q] ? -1 : 1;
            ++per_label[labels[q] - 1];
        }
    }
    impl_ = std::move(t);
}

std::size_t SlabStructure::label(std::size_t pos) const {
    if (pos < 1 || pos > size()) throw RangeError("slab label position " + std::to_string(pos) + " out of range");
    if (const auto* t = std::get_if<BlockTable>(&impl_)) return t->labels[pos - 1] + 1;
    const auto& w = std::get<WaveletLabels>(impl_);
    const bool right = kinds_.bit(pos - 1);
    const std::size_t q = kinds_.rank(right, pos);
    return right ? w.rights.access(q) : w.lefts.access(q);
}

void SlabStructure::check_node(SlabNode node) const {
    if (node.begin > size() || node.size > size() - node.begin)
        throw RangeError("node run [" + std::to_string(node.begin + 1) + ", " + std::to_string(node.begin + node.size) +
                         "] outside level of " + std::to_string(size()) + " endpoints");
}

void SlabStructure::check_prefix(SlabNode node, std::size_t i) const {
    check_node(node);
    if (i > node.size)
        throw RangeError("endpoint prefix " + std::to_string(i) + " exceeds node size " + std::to_string(node.size));
}

void SlabStructure::check_slab(std::size_t k, std::size_t lowest) const {
    if (k < lowest || k > delta_)
        throw RangeError("slab " + std::to_string(k) + " outside [" + std::to_string(lowest) + "," +
                         std::to_string(delta_) + "]");
}

long long SlabStructure::crossing_prefix(std::size_t p, std::size_t j) const {
    const auto& t = std::get<BlockTable>(impl_);
    const std::size_t b = p / t.width;
    long long acc = t.crossing[b * delta_ + j - 1];
    for (std::size_t q = b * t.width; q < p; ++q)
        if (t.labels[q] < j) acc += kinds_.bit(q) ? -1 : 1;
    return acc;
}

void SlabStructure::crossing_by_slab(std::size_t p, std::span<long long> out) const {
    const auto& t = std::get<BlockTable>(impl_);
    const std::size_t b = p / t.width;
    const std::int32_t* row = &t.crossing[b * delta_];
    out[0] = row[0];
    for (std::size_t k = 1; k < delta_; ++k) out[k] = row[k] - row[k - 1];
    for (std::size_t q = b * t.width; q < p; ++q) out[t.labels[q]] += kinds_.bit(q) ? -1 : 1;
}

std::size_t SlabStructure::label_prefix(std::size_t p, std::size_t k) const {
    const auto& t = std::get<BlockTable>(impl_);
    const std::size_t b = p / t.width;
    std::size_t acc = t.counts[b * delta_ + k - 1];
    for (std::size_t q = b * t.width; q < p; ++q) acc += t.labels[q] + 1 == k;
    return acc;
}

std::size_t SlabStructure::label_select_global(std::size_t k, std::size_t g) const {
    const auto& t = std::get<BlockTable>(impl_);
    const std::size_t blocks = t.counts.size() / delta_;
    // Last block whose starting count is below g.
    std::size_t lo = 0, hi = blocks - 1;
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo + 1) / 2;
        if (t.counts[mid * delta_ + k - 1] < g) lo = mid;
        else hi = mid - 1;
    }
    std::size_t seen = t.counts[lo * delta_ + k - 1];
    for (std::size_t q = lo * t.width;; ++q)
        if (t.labels[q] + 1 == k && ++seen == g) return q + 1;
}

std::size_t SlabStructure::slab_rank(SlabNode node, std::size_t i, std::size_t j) const {
    check_prefix(node, i);
    check_slab(j, 0);
    if (j == 0 || i == 0) return 0;
    long long result;
    if (const auto* w = std::get_if<WaveletLabels>(&impl_)) {
        const std::size_t lb = kinds_.rank(false, node.begin), le = kinds_.rank(false, node.begin + i);
        const std::size_t rb = node.begin - lb, re = node.begin + i - le;
        result = static_cast<long long>(w->lefts.range_count(lb, le, j)) -
                 static_cast<long long>(w->rights.range_count(rb, re, j));
    } else {
        result = crossing_prefix(node.begin + i, j) - crossing_prefix(node.begin, j);
    }
    if (result < 0) throw RangeError("endpoint run is not a tree node");
    return static_cast<std::size_t>(result);
}

std::size_t SlabStructure::slab_select(SlabNode node, std::size_t i, std::size_t j) const {
    const std::size_t total = slab_rank(node, i, delta_);
    if (j < 1 || j > total)
        throw NotFoundError("slab-select: j=" + std::to_string(j) + " but only " + std::to_string(total) +
                                " crossing segments",
                            total);

    if (const auto* w = std::get_if<WaveletLabels>(&impl_)) {
        // Descend both trees together; the lower half's crossing count is its
        // left endpoints minus its right endpoints in the prefix.
        std::size_t lb = kinds_.rank(false, node.begin), le = kinds_.rank(false, node.begin + i);
        std::size_t rb = node.begin - lb, re = node.begin + i - le;
        WaveletTree::Node vl = w->lefts.root(), vr = w->rights.root();
        std::size_t want = j;
        while (!w->lefts.is_leaf(vl)) {
            const std::size_t zlb = w->lefts.zeros(vl, lb), zle = w->lefts.zeros(vl, le);
            const std::size_t zrb = w->rights.zeros(vr, rb), zre = w->rights.zeros(vr, re);
            const std::size_t lower = (zle - zlb) - (zre - zrb);
            const bool up = want > lower;
            if (up) {
                want -= lower;
                lb -= zlb;
                le -= zle;
                rb -= zrb;
                re -= zre;
            } else {
                lb = zlb;
                le = zle;
                rb = zrb;
                re = zre;
            }
            vl = w->lefts.child(vl, up);
            vr = w->rights.child(vr, up);
        }
        return vl.lo;
    }

    std::vector<long long> at_end(delta_), at_begin(delta_);
    crossing_by_slab(node.begin + i, at_end);
    crossing_by_slab(node.begin, at_begin);
    long long running = 0;
    for (std::size_t k = 0; k < delta_; ++k) {
        running += at_end[k] - at_begin[k];
        if (running >= static_cast<long long>(j)) return k + 1;
    }
    return delta_;  // unreachable: j <= total
}

std::size_t SlabStructure::endpoint_rank(SlabNode node, std::size_t k, std::size_t i) const {
    check_prefix(node, i);
    check_slab(k, 1);
    if (const auto* w = std::get_if<WaveletLabels>(&impl_)) {
        const std::size_t lb = kinds_.rank(false, node.begin), le = kinds_.rank(false, node.begin + i);
        const std::size_t rb = node.begin - lb, re = node.begin + i - le;
        return w->lefts.rank(k, le) - w->lefts.rank(k, lb) + w->rights.rank(k, re) - w->rights.rank(k, rb);
    }
    return label_prefix(node.begin + i, k) - label_prefix(node.begin, k);
}

std::size_t SlabStructure::endpoint_select(SlabNode node, std::size_t k, std::size_t i) const {
    const std::size_t total = endpoint_rank(node, k, node.size);
    if (i < 1 || i > total)
        throw NotFoundError("endpoint-select: slab " + std::to_string(k) + " has only " + std::to_string(total) +
                                " endpoints in the node",
                            total);
    if (std::holds_alternative<WaveletLabels>(impl_)) return endpoint_select_merged(node, k, i);
    return label_select_global(k, label_prefix(node.begin, k) + i) - node.begin;
}

// Smallest local position p whose prefix holds i label-k endpoints. The
// kind-split trees lose the merged order, so search on p with ranks.
std::size_t SlabStructure::endpoint_select_merged(SlabNode node, std::size_t k, std::size_t i) const {
    const auto& w = std::get<WaveletLabels>(impl_);
    const std::size_t lb = kinds_.rank(false, node.begin), rb = node.begin - lb;
    const auto lpath = w.lefts.symbol_path(k), rpath = w.rights.symbol_path(k);
    const std::size_t left_before = w.lefts.rank_on_path(lpath, lb), right_before = w.rights.rank_on_path(rpath, rb);
    std::size_t lo = i, hi = node.size;  // answer in [lo, hi]
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        const std::size_t le = kinds_.rank(false, node.begin + mid), re = node.begin + mid - le;
        const std::size_t seen = w.lefts.rank_on_path(lpath, le) - left_before +
                                 w.rights.rank_on_path(rpath, re) - right_before;
        if (seen >= i) hi = mid;
        else lo = mid + 1;
    }
    return lo;
}

SpaceCount SlabStructure::space() const noexcept {
    SpaceCount s = kinds_.space();
    if (const auto* w = std::get_if<WaveletLabels>(&impl_)) {
        s += w->lefts.space();
        s += w->rights.space();
        return s;
    }
    const auto& t = std::get<BlockTable>(impl_);
    const std::uint64_t label_bits = std::uint64_t{t.labels.size()} * t.labels.width();
    s.payload_bits += label_bits;
    s.overhead_bits += t.labels.words().size() * 64 - label_bits;
    s.overhead_bits += (t.crossing.size() + t.counts.size()) * 32;
    return s;
}

void SlabStructure::serialize(ByteWriter& out) const {
    out.u8(static_cast<std::uint8_t>(backend()));
    out.u64(delta_);
    kinds_.serialize(out);
    if (const auto* w = std::get_if<WaveletLabels>(&impl_)) {
        w->lefts.serialize(out);
        w->rights.serialize(out);
        return;
    }
    const auto& t = std::get<BlockTable>(impl_);
    t.labels.serialize(out);
    out.u64(t.width);
    out.u64(t.crossing.size());
    for (auto v : t.crossing) out.u32(static_cast<std::uint32_t>(v));
    out.u64(t.counts.size());
    for (auto v : t.counts) out.u32(v);
}

SlabStructure SlabStructure::load(ByteReader& in) {
    SlabStructure s;
    const std::uint8_t tag = in.u8();
    s.delta_ = static_cast<std::size_t>(in.u64());
    if (s.delta_ < 2) throw FormatError("slab count below 2");
    s.kinds_ = BitVector::load(in);
    if (tag == static_cast<std::uint8_t>(SlabBackend::wavelet)) {
        WaveletLabels w{WaveletTree::load(in), WaveletTree::load(in)};
        if (w.lefts.sigma() != s.delta_ || w.rights.sigma() != s.delta_ ||
            w.lefts.size() != s.kinds_.count(false) || w.rights.size() != s.kinds_.count(true))
            throw FormatError("wavelet slab labels disagree with kinds");
        s.impl_ = std::move(w);
        return s;
    }
    if (tag != static_cast<std::uint8_t>(SlabBackend::block_table)) throw FormatError("unknown slab backend tag");
    BlockTable t;
    t.labels = PackedInts::load(in);
    t.width = static_cast<std::size_t>(in.u64());
    const std::size_t nc = in.array_size(4);
    t.crossing.resize(nc);
    for (auto& v : t.crossing) v = static_cast<std::int32_t>(in.u32());
    const std::size_t nk = in.array_size(4);
    t.counts.resize(nk);
    for (auto& v : t.counts) v = in.u32();
    const std::size_t blocks = t.width == 0 ? 0 : t.labels.size() / t.width + 1;
    if (t.width == 0 || t.labels.size() != s.kinds_.size() || nc != blocks * s.delta_ || nk != nc)
        throw FormatError("block table dimensions mismatch");
    s.impl_ = std::move(t);
    return s;
}

}  // namespace segwt
