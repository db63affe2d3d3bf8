#include <doctest.h>

#include <set>
#include <vector>

#include "segwt/oracle.hpp"

using namespace segwt;

namespace {

const RankSpaceInstance I2 = validate_instance({{1, 3, 1}, {2, 4, 2}});

}  // namespace

TEST_CASE("oracle queries") {
    CHECK(oracle_rank(I2, 2, 2) == 2);
    CHECK(oracle_select(I2, 3, 1) == 2);
    for (std::size_t y = 1; y <= 2; ++y) CHECK(oracle_access(I2, y).y == y);
    CHECK(oracle_crossing_count(I2, 2) == 2);
    CHECK_THROWS_AS(oracle_access(I2, 3), RangeError);
    CHECK_THROWS_AS(oracle_rank(I2, 0, 1), RangeError);
    CHECK_THROWS_AS(oracle_rank(I2, 1, 0), RangeError);
    CHECK_THROWS_AS(oracle_select(I2, 5, 1), RangeError);
    try {
        oracle_select(I2, 2, 3);
        FAIL("expected not-found");
    } catch (const NotFoundError& e) {
        CHECK(e.available() == 2);
    }
}

TEST_CASE("enumeration counts match (2n)!/2^n") {
    const std::uint64_t expected[] = {1, 1, 6, 90, 2520, 113400};
    for (std::size_t n = 0; n <= 5; ++n) {
        CHECK(expected_instance_count(n) == expected[n]);
        if (n <= 4) CHECK(count_instances(n) == expected[n]);
    }
    CHECK(expected_instance_count(6) == 7484400);
}

TEST_CASE("enumeration yields distinct valid instances in canonical order") {
    for (std::size_t n = 1; n <= 4; ++n) {
        InstanceEnumerator e(n);
        std::set<std::vector<Segment>> seen;
        std::vector<Segment> previous_pairs;
        while (auto inst = e.next()) {
            std::vector<Segment> segs(inst->segments().begin(), inst->segments().end());
            REQUIRE(seen.insert(segs).second);
            // Re-validating is the identity.
            REQUIRE(validate_instance(segs) == *inst);
        }
        CHECK(seen.size() == expected_instance_count(n));
        CHECK_FALSE(e.next());
    }
}

TEST_CASE("first instances of n=2") {
    InstanceEnumerator e(2);
    auto a = e.next();
    auto b = e.next();
    auto c = e.next();
    REQUIRE((a && b && c));
    // Pairing {1,2}{3,4}, y in order 1 2, then 2 1; then pairing {1,3}{2,4}.
    CHECK(a->by_y(1) == Segment{1, 2, 1});
    CHECK(b->by_y(1) == Segment{3, 4, 1});
    CHECK(c->by_y(1) == Segment{1, 3, 1});
}

TEST_CASE("enumeration refuses large n") {
    CHECK_THROWS_AS(InstanceEnumerator(7), LimitError);
    CHECK_THROWS_AS(InstanceEnumerator(9), LimitError);
    CHECK_NOTHROW(InstanceEnumerator(6));
}

TEST_CASE("dominance reduction") {
    const auto one = dominance_reduction({{1, 1}});
    CHECK(one.by_y(1) == Segment{1, 2, 1});
    CHECK(oracle_rank(one, 1, 1) == 1);

    const std::vector<Point> pts{{1, 2}, {2, 1}};
    const auto two = dominance_reduction(pts);
    CHECK(two.by_y(2) == Segment{1, 3, 2});
    CHECK(two.by_y(1) == Segment{2, 4, 1});
    CHECK(oracle_rank(two, 2, 1) == 1);

    const auto pts64 = random_permutation_points(64, 3);
    const auto inst = dominance_reduction(pts64);
    for (const Segment& s : inst.segments()) CHECK(s.x_right > 64);
    for (std::size_t x = 1; x <= 64; ++x)
        for (std::size_t y = 1; y <= 64; ++y) REQUIRE(oracle_rank(inst, x, y) == dominance_count(pts64, x, y));

    CHECK_THROWS_AS(dominance_reduction({{1, 1}, {1, 2}}), ValidationError);
    CHECK_THROWS_AS(dominance_reduction({{1, 1}, {2, 1}}), ValidationError);
    CHECK_THROWS_AS(dominance_reduction({{1, 3}, {2, 1}}), ValidationError);
}

TEST_CASE("random generators are seeded and valid") {
    CHECK(random_instance(100, 5) == random_instance(100, 5));
    CHECK_FALSE(random_instance(100, 5) == random_instance(100, 6));
    CHECK(random_instance(1000, 1).n() == 1000);
    const auto pts = random_permutation_points(50, 2);
    std::set<std::size_t> ys;
    for (const Point& p : pts) ys.insert(p.y);
    CHECK(ys.size() == 50);
}
