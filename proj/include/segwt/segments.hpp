#pragma once

#include <compare>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

namespace segwt {

// Horizontal segment in rank space. It crosses the vertical line at x = i
// iff x_left <= i < x_right.
struct Segment {
    std::size_t x_left = 0;
    std::size_t x_right = 0;
    std::size_t y = 0;

    bool crosses(std::size_t i) const noexcept { return x_left <= i && i < x_right; }
    friend auto operator<=>(const Segment&, const Segment&) = default;
};

// Segment with real coordinates, before rank-space reduction.
struct RawSegment {
    double x_left = 0;
    double x_right = 0;
    double y = 0;
};

// n segments on [1,2n] x [1,n] with one endpoint per x and one segment per y.
// Only validate_instance constructs one, so every instance is well formed.
class RankSpaceInstance {
public:
    RankSpaceInstance() = default;

    std::size_t n() const noexcept { return segments_.size(); }
    // Ordered by y: segments()[y - 1].y == y.
    std::span<const Segment> segments() const noexcept { return segments_; }
    const Segment& by_y(std::size_t y) const { return segments_.at(y - 1); }

    friend bool operator==(const RankSpaceInstance&, const RankSpaceInstance&) = default;

private:
    friend RankSpaceInstance validate_instance(std::vector<Segment> segs);
    explicit RankSpaceInstance(std::vector<Segment> sorted) : segments_(std::move(sorted)) {}

    std::vector<Segment> segments_;
};

// Throws ValidationError naming the offending coordinate.
RankSpaceInstance validate_instance(std::vector<Segment> segs);

enum class TieMode {
    strict,         // any repeated x or y value is a TieError
    deterministic,  // x ties: right endpoints first, then by y; y ties: by x_left
};

// Rank <-> raw value tables produced by the reduction.
struct CoordinateMaps {
    std::vector<double> x_values;  // x_values[r - 1] is the raw x of rank r
    std::vector<double> y_values;

    double x_of(std::size_t rank) const { return x_values.at(rank - 1); }
    double y_of(std::size_t rank) const { return y_values.at(rank - 1); }
    // Number of endpoint coordinates <= v, i.e. the rank-space line that
    // sees exactly the segments crossing raw x = v. 0 when v precedes all.
    std::size_t x_rank_at_most(double v) const;
    std::size_t y_rank_at_most(double v) const;

    friend bool operator==(const CoordinateMaps&, const CoordinateMaps&) = default;
};

struct ReducedInstance {
    RankSpaceInstance instance;
    CoordinateMaps maps;
};

ReducedInstance rank_space_reduce(std::span<const RawSegment> raw, TieMode mode = TieMode::strict);

// Segments crossing x = i, ascending y. Throws RangeError unless 1 <= i <= 2n.
std::vector<Segment> crossing_set(const RankSpaceInstance& inst, std::size_t i);

// E[1..2n]: 0 where a left endpoint sits, 1 where a right endpoint sits.
std::vector<bool> endpoint_bitstring(const RankSpaceInstance& inst);

// y-coordinates of the left (resp. right) endpoints ordered by x.
std::vector<std::size_t> left_endpoint_ys(const RankSpaceInstance& inst);
std::vector<std::size_t> right_endpoint_ys(const RankSpaceInstance& inst);

// Text format: one `x_left x_right y` per line, `#` starts a comment line.
std::vector<Segment> parse_segments(std::istream& in);
std::vector<RawSegment> parse_raw_segments(std::istream& in);
void write_segments(std::ostream& out, const RankSpaceInstance& inst);

}  // namespace segwt
