#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "segwt/errors.hpp"
#include "segwt/segments.hpp"

namespace segwt {

// Brute-force answers by scanning every segment; same errors as the indexes.
Segment oracle_access(const RankSpaceInstance& inst, std::size_t y);
std::size_t oracle_select(const RankSpaceInstance& inst, std::size_t i, std::size_t j);
std::size_t oracle_rank(const RankSpaceInstance& inst, std::size_t i, std::size_t y);
std::size_t oracle_crossing_count(const RankSpaceInstance& inst, std::size_t i);

inline constexpr std::size_t kMaxEnumerationN = 6;

// Every rank-space instance of n segments exactly once: perfect pairings of
// [1, 2n], built by pairing the smallest unpaired element first, times the
// y-assignments in lexicographic permutation order. Single pass.
class InstanceEnumerator {
public:
    explicit InstanceEnumerator(std::size_t n);  // LimitError for n > kMaxEnumerationN

    // Next instance, or nullopt when exhausted.
    std::optional<RankSpaceInstance> next();

private:
    bool advance_pairing();
    bool first_pairing(std::size_t from);

    std::size_t n_;
    bool started_ = false;
    bool done_ = false;
    std::vector<std::pair<std::size_t, std::size_t>> pairs_;  // sorted by left endpoint
    std::vector<std::size_t> ys_;
};

// (2n)! / 2^n.
std::uint64_t expected_instance_count(std::size_t n);
std::uint64_t count_instances(std::size_t n);

struct Point {
    std::size_t x = 0;
    std::size_t y = 0;
};

// Segment (x, n + x, y) per point; the points must form a permutation matrix.
RankSpaceInstance dominance_reduction(const std::vector<Point>& points);
std::size_t dominance_count(const std::vector<Point>& points, std::size_t x, std::size_t y);

RankSpaceInstance random_instance(std::size_t n, std::uint64_t seed);
std::vector<Point> random_permutation_points(std::size_t n, std::uint64_t seed);

}  // namespace segwt
