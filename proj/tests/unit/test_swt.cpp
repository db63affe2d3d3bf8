#include <doctest.h>

#include <vector>

#include "segwt/byte_io.hpp"
#include "segwt/oracle.hpp"
#include "segwt/segment_index.hpp"

using namespace segwt;

namespace {

const RankSpaceInstance I2 = validate_instance({{1, 3, 1}, {2, 4, 2}});
const RankSpaceInstance I4 = validate_instance({{1, 5, 3}, {2, 7, 1}, {3, 6, 4}, {4, 8, 2}});

std::vector<std::size_t> sequence(const WaveletTree& t) {
    std::vector<std::size_t> s;
    for (std::size_t i = 1; i <= t.size(); ++i) s.push_back(t.access(i));
    return s;
}

// B^L(v) for the node [a, b] straight from the definition: the node's
// segments ordered by left endpoint, 1 where the segment goes to the
// upper child.
std::vector<bool> node_bits(const RankSpaceInstance& inst, std::size_t a, std::size_t b, bool by_right) {
    std::vector<std::pair<std::size_t, std::size_t>> xs;
    for (const Segment& s : inst.segments())
        if (s.y >= a && s.y <= b) xs.push_back({by_right ? s.x_right : s.x_left, s.y});
    std::sort(xs.begin(), xs.end());
    std::vector<bool> bits;
    for (auto [x, y] : xs) bits.push_back(y > (a + b) / 2);
    return bits;
}

}  // namespace

TEST_CASE("build") {
    SegmentIndex idx(I2);
    CHECK(sequence(idx.left_tree()) == std::vector<std::size_t>{1, 2});
    CHECK(sequence(idx.right_tree()) == std::vector<std::size_t>{1, 2});
    CHECK(idx.endpoints().size() == 4);
    CHECK(idx.endpoints().count(true) == 2);

    SegmentIndex one(validate_instance({{1, 2, 1}}));
    CHECK(one.height() == 0);
    CHECK(sequence(one.left_tree()) == std::vector<std::size_t>{1});

    SegmentIndex four(I4);
    CHECK(sequence(four.left_tree()) == std::vector<std::size_t>{3, 1, 4, 2});
    CHECK(sequence(four.right_tree()) == std::vector<std::size_t>{3, 4, 1, 2});
    CHECK_THROWS_AS(SegmentIndex(validate_instance({})), ValidationError);
}

TEST_CASE("access") {
    CHECK(SegmentIndex(I2).access(2) == Segment{2, 4, 2});
    CHECK(SegmentIndex(validate_instance({{1, 2, 1}})).access(1) == Segment{1, 2, 1});
    CHECK(SegmentIndex(I4).access(4) == Segment{3, 6, 4});
    CHECK_THROWS_AS(SegmentIndex(I2).access(0), RangeError);
    CHECK_THROWS_AS(SegmentIndex(I2).access(3), RangeError);
}

TEST_CASE("select") {
    SegmentIndex idx(I2);
    CHECK(idx.select(2, 2) == 2);
    CHECK(idx.select(3, 1) == 2);
    CHECK(SegmentIndex(I4).select(5, 2) == 2);
    try {
        idx.select(2, 5);
        FAIL("expected not-found");
    } catch (const NotFoundError& e) {
        CHECK(e.available() == 2);
    }
    CHECK_THROWS_AS(idx.select(2, 0), NotFoundError);
    CHECK_THROWS_AS(idx.select(0, 1), RangeError);
    CHECK_THROWS_AS(idx.select(5, 1), RangeError);
}

TEST_CASE("rank") {
    SegmentIndex idx(I2);
    CHECK(idx.rank(2, 1) == 1);
    CHECK(idx.rank(3, 1) == 0);
    CHECK(SegmentIndex(I4).rank(5, 3) == 2);
    for (std::size_t y = 1; y <= 2; ++y) CHECK(idx.rank(4, y) == 0);
    CHECK_THROWS_AS(idx.rank(5, 1), RangeError);
    CHECK_THROWS_AS(idx.rank(1, 3), RangeError);
}

TEST_CASE("space accounting") {
    SegmentIndex one(validate_instance({{1, 2, 1}}));
    CHECK(one.space_report().total.payload_bits == 2);
    const auto idx = SegmentIndex(random_instance(1024, 3));
    const auto rep = idx.space_report();
    CHECK(rep.total.payload_bits == 2 * 1024 * 10 + 2048);
    CHECK(rep.levels.size() == 11);
    SpaceCount sum;
    for (const auto& l : rep.levels) sum += l.bits;
    CHECK(sum == rep.total);
    // Total is 2n lg n + c n with c read off the report.
    REQUIRE(rep.linear_constant());
    CHECK(*rep.linear_constant() < 8.0);
}

TEST_CASE("overhead fraction is bounded across sizes") {
    for (std::size_t lg = 8; lg <= 16; lg += 2) {
        const auto rep = SegmentIndex(random_instance(std::size_t{1} << lg, lg)).space_report();
        const double frac = static_cast<double>(rep.total.overhead_bits) / static_cast<double>(rep.total.payload_bits);
        CHECK(frac <= 1.0 / 16);
    }
}

TEST_CASE("node visits, identities and superimposition on random instances") {
    for (std::size_t n : {1, 2, 3, 5, 8, 13, 64, 100}) {
        const auto inst = random_instance(n, n);
        SegmentIndex idx(inst);
        const std::size_t visits = ceil_log2(n) + 1;
        const auto e = endpoint_bitstring(inst);
        for (std::size_t y = 1; y <= n; ++y) {
            QueryStats st;
            REQUIRE(idx.access(y, &st) == inst.by_y(y));
            REQUIRE(st.node_visits == visits);
        }
        std::size_t lefts = 0, rights = 0;
        for (std::size_t i = 1; i <= 2 * n; ++i) {
            (e[i - 1] ? rights : lefts)++;
            REQUIRE(idx.rank(i, n) == lefts - rights);
            REQUIRE(idx.crossing_count(i) == lefts - rights);
            std::size_t prev = 0;
            for (std::size_t y = 1; y <= n; ++y) {
                QueryStats st;
                const std::size_t r = idx.rank(i, y, &st);
                REQUIRE(st.node_visits == visits);
                REQUIRE(r >= prev);
                prev = r;
                if (inst.by_y(y).crosses(i)) REQUIRE(idx.select(i, r) == y);
            }
            for (std::size_t j = 1; j <= lefts - rights; ++j) {
                QueryStats st;
                idx.select(i, j, &st);
                REQUIRE(st.node_visits == visits);
            }
        }
        // Level d restricted to node [a, b] is B^L / B^R of that node.
        std::vector<std::pair<std::size_t, std::size_t>> nodes{{1, n}};
        for (std::size_t d = 0; d < idx.height(); ++d) {
            std::vector<std::pair<std::size_t, std::size_t>> next;
            for (auto [a, b] : nodes) {
                for (bool right : {false, true}) {
                    const BitVector& level = right ? idx.right_tree().level(d) : idx.left_tree().level(d);
                    std::vector<bool> got;
                    for (std::size_t p = a; p <= b; ++p) got.push_back(level.access(p));
                    REQUIRE(got == node_bits(inst, a, b, right));
                }
                const std::size_t m = (a + b) / 2;
                next.push_back({a, m});
                if (m < b) next.push_back({m + 1, b});
                else next.push_back({a, b});
            }
            nodes.clear();
            for (auto nb : next)
                if (std::find(nodes.begin(), nodes.end(), nb) == nodes.end()) nodes.push_back(nb);
        }
    }
}

TEST_CASE("trace records the cursor at every node") {
    SegmentIndex idx(I4);
    QueryStats st;
    st.record_trace = true;
    CHECK(idx.select(5, 3, &st) == 4);
    REQUIRE(st.trace.size() == 3);
    // Root: 4 lefts and 1 right at or before x = 5.
    CHECK(st.trace[0] == QueryCursor{1, 4, 4, 1, 5, 0, 3});
    CHECK(st.trace[2].a == 4);
    CHECK(st.trace[2].jbar == 2);
    CHECK(st.trace[2].l - st.trace[2].r == 1);
}

TEST_CASE("serialization round trip") {
    const SegmentIndex idx(random_instance(300, 8));
    ByteWriter w;
    idx.serialize(w);
    ByteReader r(w.buffer());
    const SegmentIndex back = SegmentIndex::load(r);
    CHECK(back == idx);
    ByteWriter w2;
    back.serialize(w2);
    CHECK(w2.buffer() == w.buffer());
}
