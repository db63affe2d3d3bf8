#include "segwt/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <string>

namespace segwt {

namespace {

void check_x(const RankSpaceInstance& inst, std::size_t i) {
    if (i < 1 || i > 2 * inst.n())
        throw RangeError("x-coordinate " + std::to_string(i) + " outside [1," + std::to_string(2 * inst.n()) + "]");
}

void check_y(const RankSpaceInstance& inst, std::size_t y) {
    if (y < 1 || y > inst.n())
        throw RangeError("y-coordinate " + std::to_string(y) + " outside [1," + std::to_string(inst.n()) + "]");
}

}  // namespace

Segment oracle_access(const RankSpaceInstance& inst, std::size_t y) {
    check_y(inst, y);
    for (const Segment& s : inst.segments())
        if (s.y == y) return s;
    throw RangeError("no segment with y-coordinate " + std::to_string(y));
}

std::size_t oracle_crossing_count(const RankSpaceInstance& inst, std::size_t i) {
    return crossing_set(inst, i).size();
}

std::size_t oracle_select(const RankSpaceInstance& inst, std::size_t i, std::size_t j) {
    check_x(inst, i);
    std::size_t seen = 0;
    for (const Segment& s : inst.segments())
        if (s.crosses(i) && ++seen == j) return s.y;
    throw NotFoundError("segment-select(" + std::to_string(i) + ", " + std::to_string(j) + "): only " +
                            std::to_string(seen) + " segments cross x=" + std::to_string(i),
                        seen);
}

std::size_t oracle_rank(const RankSpaceInstance& inst, std::size_t i, std::size_t y) {
    check_x(inst, i);
    check_y(inst, y);
    std::size_t count = 0;
    for (const Segment& s : inst.segments()) count += s.y <= y && s.crosses(i);
    return count;
}

InstanceEnumerator::InstanceEnumerator(std::size_t n) : n_(n) {
    if (n > kMaxEnumerationN)
        throw LimitError("enumeration limited to n <= " + std::to_string(kMaxEnumerationN) + ", got " +
                         std::to_string(n));
    pairs_.resize(n);
    ys_.resize(n);
}

// Pairs pairs_[from..] canonically among the elements not used by pairs_[0..from).
bool InstanceEnumerator::first_pairing(std::size_t from) {
    std::vector<char> used(2 * n_ + 1, 0);
    for (std::size_t p = 0; p < from; ++p) used[pairs_[p].first] = used[pairs_[p].second] = 1;
    for (std::size_t p = from; p < n_; ++p) {
        std::size_t a = 1;
        while (used[a]) ++a;
        std::size_t b = a + 1;
        while (used[b]) ++b;
        pairs_[p] = {a, b};
        used[a] = used[b] = 1;
    }
    return true;
}

bool InstanceEnumerator::advance_pairing() {
    // Find the deepest pair whose partner can move to a larger unused element.
    for (std::size_t p = n_; p-- > 0;) {
        std::vector<char> used(2 * n_ + 1, 0);
        for (std::size_t q = 0; q < p; ++q) used[pairs_[q].first] = used[pairs_[q].second] = 1;
        std::size_t b = pairs_[p].second + 1;
        while (b <= 2 * n_ && used[b]) ++b;
        if (b <= 2 * n_) {
            pairs_[p].second = b;
            first_pairing(p + 1);
            return true;
        }
    }
    return false;
}

std::optional<RankSpaceInstance> InstanceEnumerator::next() {
    if (done_) return std::nullopt;
    if (!started_) {
        started_ = true;
        first_pairing(0);
        std::iota(ys_.begin(), ys_.end(), std::size_t{1});
    } else if (!std::next_permutation(ys_.begin(), ys_.end())) {
        if (!advance_pairing()) {
            done_ = true;
            return std::nullopt;
        }
        std::iota(ys_.begin(), ys_.end(), std::size_t{1});
    }
    if (n_ == 0) done_ = true;
    std::vector<Segment> segs(n_);
    for (std::size_t p = 0; p < n_; ++p) segs[p] = Segment{pairs_[p].first, pairs_[p].second, ys_[p]};
    return validate_instance(std::move(segs));
}

std::uint64_t expected_instance_count(std::size_t n) {
    std::uint64_t v = 1;
    for (std::uint64_t k = 1; k <= 2 * n; ++k) v *= k;
    return v >> n;
}

std::uint64_t count_instances(std::size_t n) {
    InstanceEnumerator e(n);
    std::uint64_t count = 0;
    while (e.next()) ++count;
    return count;
}

RankSpaceInstance dominance_reduction(const std::vector<Point>& points) {
    const std::size_t n = points.size();
    std::vector<char> seen_x(n + 1, 0), seen_y(n + 1, 0);
    std::vector<Segment> segs;
    segs.reserve(n);
    for (const Point& p : points) {
        if (p.x < 1 || p.x > n || p.y < 1 || p.y > n || seen_x[p.x] || seen_y[p.y])
            throw ValidationError(ValidationKind::not_permutation, p.x < 1 || p.x > n || seen_x[p.x] ? p.x : p.y,
                                  "points do not form a permutation: (" + std::to_string(p.x) + "," +
                                      std::to_string(p.y) + ")");
        seen_x[p.x] = seen_y[p.y] = 1;
        segs.push_back(Segment{p.x, n + p.x, p.y});
    }
    return validate_instance(std::move(segs));
}

std::size_t dominance_count(const std::vector<Point>& points, std::size_t x, std::size_t y) {
    std::size_t count = 0;
    for (const Point& p : points) count += p.x <= x && p.y <= y;
    return count;
}

RankSpaceInstance random_instance(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<std::size_t> xs(2 * n), ys(n);
    std::iota(xs.begin(), xs.end(), std::size_t{1});
    std::iota(ys.begin(), ys.end(), std::size_t{1});
    std::shuffle(xs.begin(), xs.end(), rng);
    std::shuffle(ys.begin(), ys.end(), rng);
    std::vector<Segment> segs(n);
    for (std::size_t k = 0; k < n; ++k)
        segs[k] = Segment{std::min(xs[2 * k], xs[2 * k + 1]), std::max(xs[2 * k], xs[2 * k + 1]), ys[k]};
    return validate_instance(std::move(segs));
}

std::vector<Point> random_permutation_points(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<std::size_t> ys(n);
    std::iota(ys.begin(), ys.end(), std::size_t{1});
    std::shuffle(ys.begin(), ys.end(), rng);
    std::vector<Point> pts(n);
    for (std::size_t x = 1; x <= n; ++x) pts[x - 1] = Point{x, ys[x - 1]};
    return pts;
}

}  // namespace segwt
