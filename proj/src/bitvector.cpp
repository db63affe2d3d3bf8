#include "segwt/bitvector.hpp"

#include <bit>
#include <string>

namespace segwt {

namespace {

constexpr std::size_t kWordsPerBlock = BitVector::kBlockBits / BitVector::kWordBits;
constexpr std::size_t kBlocksPerSuperblock = BitVector::kSuperblockBits / BitVector::kBlockBits;

std::size_t words_for(std::size_t bits) { return (bits + BitVector::kWordBits - 1) / BitVector::kWordBits; }

}  // namespace

unsigned select_in_word(std::uint64_t w, unsigned r) noexcept {
    unsigned base = 0;
    for (;;) {
        auto byte = static_cast<unsigned>(w & 0xFFU);
        auto pc = static_cast<unsigned>(std::popcount(byte));
        if (r <= pc) break;
        r -= pc;
        w >>= 8;
        base += 8;
    }
    for (unsigned k = 1; k < r; ++k) w &= w - 1;
    return base + static_cast<unsigned>(std::countr_zero(w));
}

BitVector::BitVector(const std::vector<bool>& bits) : words_(words_for(bits.size()), 0), length_(bits.size()) {
    for (std::size_t p = 0; p < bits.size(); ++p)
        if (bits[p]) words_[p / kWordBits] |= std::uint64_t{1} << (p % kWordBits);
    build_directories();
}

BitVector::BitVector(std::vector<std::uint64_t> words, std::size_t length)
    : words_(std::move(words)), length_(length) {
    words_.resize(words_for(length), 0);
    if (length % kWordBits != 0) words_.back() &= (std::uint64_t{1} << (length % kWordBits)) - 1;
    build_directories();
}

void BitVector::build_directories() {
    const std::size_t nblocks = (length_ + kBlockBits - 1) / kBlockBits;
    const std::size_t nsuper = (length_ + kSuperblockBits - 1) / kSuperblockBits;
    block_counts_.assign(nblocks, 0);
    superblock_counts_.assign(nsuper > 0 ? nsuper - 1 : 0, 0);
    select_samples_[0].clear();
    select_samples_[1].clear();

    std::size_t total = 0;
    std::size_t in_super = 0;
    std::size_t seen[2] = {0, 0};
    for (std::size_t blk = 0; blk < nblocks; ++blk) {
        const std::size_t sb = blk / kBlocksPerSuperblock;
        if (blk % kBlocksPerSuperblock == 0) {
            if (sb > 0) superblock_counts_[sb - 1] = total;
            in_super = 0;
        }
        block_counts_[blk] = static_cast<std::uint16_t>(in_super);
        const std::size_t first = blk * kWordsPerBlock;
        const std::size_t last = std::min(first + kWordsPerBlock, words_.size());
        for (std::size_t w = first; w < last; ++w) {
            const std::size_t valid = std::min(kWordBits, length_ - w * kWordBits);
            const auto ones = static_cast<std::size_t>(std::popcount(words_[w]));
            const std::size_t counts[2] = {valid - ones, ones};
            for (int b = 0; b < 2; ++b) {
                // Record the superblock of every occurrence t*S + 1, t >= 1.
                const std::size_t before = seen[b];
                const std::size_t after = before + counts[b];
                std::size_t next = (before / kSelectSample + 1) * kSelectSample + 1;
                for (; next <= after; next += kSelectSample) select_samples_[b].push_back(sb);
                seen[b] = after;
            }
            total += ones;
            in_super += ones;
        }
    }
    ones_ = total;
}

bool BitVector::access(std::size_t i) const {
    if (i < 1 || i > length_)
        throw RangeError("bitvector access position " + std::to_string(i) + " outside [1," +
                         std::to_string(length_) + "]");
    return bit(i - 1);
}

std::size_t BitVector::rank1(std::size_t i) const noexcept {
    if (i == length_) return ones_;
    const std::size_t blk = i / kBlockBits;
    std::size_t r = ones_before_superblock(i / kSuperblockBits) + block_counts_[blk];
    const std::size_t word = i / kWordBits;
    for (std::size_t w = blk * kWordsPerBlock; w < word; ++w) r += static_cast<std::size_t>(std::popcount(words_[w]));
    if (const std::size_t rem = i % kWordBits; rem != 0)
        r += static_cast<std::size_t>(std::popcount(words_[word] & ((std::uint64_t{1} << rem) - 1)));
    return r;
}

std::size_t BitVector::rank(bool b, std::size_t i) const {
    if (i > length_)
        throw RangeError("bitvector rank prefix " + std::to_string(i) + " exceeds length " +
                         std::to_string(length_));
    const std::size_t ones = rank1(i);
    return b ? ones : i - ones;
}

std::size_t BitVector::select(bool b, std::size_t j) const {
    const std::size_t occurrences = count(b);
    if (j < 1 || j > occurrences)
        throw NotFoundError("bitvector select(" + std::to_string(int{b}) + ", " + std::to_string(j) +
                                "): only " + std::to_string(occurrences) + " occurrences",
                            occurrences);

    const auto& samples = select_samples_[b ? 1 : 0];
    const std::size_t t = (j - 1) / kSelectSample;
    const std::size_t nsuper = (length_ + kSuperblockBits - 1) / kSuperblockBits;
    std::size_t lo = t == 0 ? 0 : static_cast<std::size_t>(samples[t - 1]);
    std::size_t hi = t < samples.size() ? static_cast<std::size_t>(samples[t]) : nsuper - 1;

    auto before_super = [&](std::size_t sb) {
        const std::size_t ones = ones_before_superblock(sb);
        return b ? ones : sb * kSuperblockBits - ones;
    };
    // Largest superblock whose preceding count is below j.
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo + 1) / 2;
        if (before_super(mid) < j) lo = mid;
        else hi = mid - 1;
    }
    const std::size_t sb = lo;
    std::size_t remaining = j - before_super(sb);

    const std::size_t nblocks = block_counts_.size();
    std::size_t blo = sb * kBlocksPerSuperblock;
    std::size_t bhi = std::min(blo + kBlocksPerSuperblock, nblocks) - 1;
    auto in_block = [&](std::size_t blk) {
        const std::size_t ones = block_counts_[blk];
        return b ? ones : (blk - sb * kBlocksPerSuperblock) * kBlockBits - ones;
    };
    while (blo < bhi) {
        const std::size_t mid = blo + (bhi - blo + 1) / 2;
        if (in_block(mid) < remaining) blo = mid;
        else bhi = mid - 1;
    }
    remaining -= in_block(blo);

    for (std::size_t w = blo * kWordsPerBlock;; ++w) {
        const std::uint64_t word = b ? words_[w] : ~words_[w];
        const auto pc = static_cast<std::size_t>(std::popcount(word));
        if (remaining <= pc) return w * kWordBits + select_in_word(word, static_cast<unsigned>(remaining)) + 1;
        remaining -= pc;
    }
}

SpaceCount BitVector::space() const noexcept {
    SpaceCount s;
    s.payload_bits = length_;
    s.overhead_bits = words_.size() * kWordBits - length_ + superblock_counts_.size() * 64 +
                      block_counts_.size() * 16 + (select_samples_[0].size() + select_samples_[1].size()) * 64;
    return s;
}

void BitVector::serialize(ByteWriter& out) const {
    out.u64(length_);
    out.u64(words_.size());
    for (auto w : words_) out.u64(w);
    out.u64_array<std::uint64_t>(superblock_counts_);
    out.u16_array(block_counts_);
    out.u64_array<std::uint64_t>(select_samples_[0]);
    out.u64_array<std::uint64_t>(select_samples_[1]);
}

BitVector BitVector::load(ByteReader& in) {
    const std::uint64_t length = in.u64();
    const std::size_t nwords = in.array_size(8);
    if (nwords != words_for(static_cast<std::size_t>(length))) throw FormatError("bitvector word count mismatch");
    std::vector<std::uint64_t> words(nwords);
    for (auto& w : words) w = in.u64();
    if (length % kWordBits != 0 && !words.empty() && (words.back() >> (length % kWordBits)) != 0)
        throw FormatError("bitvector padding bits set");

    BitVector v(std::move(words), static_cast<std::size_t>(length));
    const auto supers = in.u64_array();
    const auto blocks = in.u16_array();
    const auto sel0 = in.u64_array();
    const auto sel1 = in.u64_array();
    if (supers != v.superblock_counts_ || blocks != v.block_counts_ || sel0 != v.select_samples_[0] ||
        sel1 != v.select_samples_[1])
        throw FormatError("bitvector directory does not match payload");
    return v;
}

}  // namespace segwt
