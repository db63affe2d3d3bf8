#include <doctest.h>

#include <sstream>
#include <vector>

#include "segwt/errors.hpp"
#include "segwt/oracle.hpp"
#include "segwt/segments.hpp"

using namespace segwt;

namespace {

ValidationError validation_failure(std::vector<Segment> segs) {
    try {
        validate_instance(std::move(segs));
    } catch (const ValidationError& e) {
        return e;
    }
    FAIL("expected a validation error");
    return ValidationError(ValidationKind::bad_parameter, 0, "");
}

const RankSpaceInstance I2 = validate_instance({{1, 3, 1}, {2, 4, 2}});

}  // namespace

TEST_CASE("validate accepts rank-space instances and sorts by y") {
    const auto one = validate_instance({{1, 2, 1}});
    CHECK(one.n() == 1);
    CHECK(I2.n() == 2);
    const auto sorted = validate_instance({{2, 4, 2}, {1, 3, 1}});
    CHECK(sorted == I2);
    CHECK(sorted.by_y(2) == Segment{2, 4, 2});
    CHECK(validate_instance({}).n() == 0);
}

TEST_CASE("validate names each violation") {
    auto e = validation_failure({{1, 3, 1}, {3, 4, 2}});
    CHECK(e.kind() == ValidationKind::duplicate_x);
    CHECK(e.coordinate() == 3);

    e = validation_failure({{1, 3, 1}, {2, 4, 1}});
    CHECK(e.kind() == ValidationKind::duplicate_y);
    CHECK(e.coordinate() == 1);

    e = validation_failure({{1, 5, 1}, {2, 4, 2}});
    CHECK(e.kind() == ValidationKind::x_out_of_range);
    CHECK(e.coordinate() == 5);

    e = validation_failure({{1, 3, 3}, {2, 4, 2}});
    CHECK(e.kind() == ValidationKind::y_out_of_range);
    CHECK(e.coordinate() == 3);

    e = validation_failure({{3, 1, 1}, {2, 4, 2}});
    CHECK(e.kind() == ValidationKind::empty_segment);

    e = validation_failure({{2, 2, 1}});
    CHECK(e.kind() == ValidationKind::empty_segment);
}

TEST_CASE("rank-space reduction") {
    auto r = rank_space_reduce(std::vector<RawSegment>{{0.5, 9.0, -2.0}});
    CHECK(r.instance.segments()[0] == Segment{1, 2, 1});
    CHECK(r.maps.x_of(2) == 9.0);
    CHECK(r.maps.y_of(1) == -2.0);

    r = rank_space_reduce(std::vector<RawSegment>{{10, 30, 5}, {20, 40, 7}});
    CHECK(r.instance == I2);
    CHECK(r.maps.x_values == std::vector<double>{10, 20, 30, 40});
    CHECK(r.maps.y_values == std::vector<double>{5, 7});
    CHECK(r.maps.x_rank_at_most(25) == 2);
    CHECK(r.maps.x_rank_at_most(5) == 0);
    CHECK(r.maps.x_rank_at_most(40) == 4);
    CHECK(r.maps.y_rank_at_most(6.9) == 1);
}

TEST_CASE("strict mode rejects ties") {
    try {
        rank_space_reduce(std::vector<RawSegment>{{1, 2, 0}, {2, 3, 1}});
        FAIL("expected tie error");
    } catch (const TieError& e) {
        CHECK(e.axis() == 'x');
        CHECK(e.value() == 2.0);
    }
    try {
        rank_space_reduce(std::vector<RawSegment>{{1, 2, 5}, {3, 4, 5}});
        FAIL("expected tie error");
    } catch (const TieError& e) {
        CHECK(e.axis() == 'y');
        CHECK(e.value() == 5.0);
    }
    CHECK_THROWS_AS(rank_space_reduce(std::vector<RawSegment>{{2, 1, 0}}), ValidationError);
}

TEST_CASE("deterministic ties: right endpoints first keeps crossings") {
    // [1,2) and [2,3) touch at 2; under the half-open predicate only the
    // second crosses x = 2.
    const auto r = rank_space_reduce(std::vector<RawSegment>{{1, 2, 0}, {2, 3, 1}}, TieMode::deterministic);
    CHECK(r.instance.by_y(1) == Segment{1, 2, 1});
    CHECK(r.instance.by_y(2) == Segment{3, 4, 2});
    const std::size_t i = r.maps.x_rank_at_most(2.0);
    const auto cross = crossing_set(r.instance, i);
    REQUIRE(cross.size() == 1);
    CHECK(cross[0].y == 2);

    const auto ty = rank_space_reduce(std::vector<RawSegment>{{3, 4, 5}, {1, 2, 5}}, TieMode::deterministic);
    CHECK(ty.instance.by_y(1) == Segment{1, 2, 1});
}

TEST_CASE("reduction preserves endpoint order") {
    const std::vector<RawSegment> raw{{0.3, 7.5, 2.0}, {-1.0, 0.5, 9.0}, {4.0, 4.5, -3.0}, {2.0, 8.0, 1.0}};
    const auto r = rank_space_reduce(raw);
    for (std::size_t k = 1; k < r.maps.x_values.size(); ++k) CHECK(r.maps.x_values[k - 1] < r.maps.x_values[k]);
    for (const Segment& s : r.instance.segments()) {
        bool found = false;
        for (const RawSegment& g : raw)
            found |= g.x_left == r.maps.x_of(s.x_left) && g.x_right == r.maps.x_of(s.x_right) && g.y == r.maps.y_of(s.y);
        CHECK(found);
    }
}

TEST_CASE("crossing set and endpoint bitstring") {
    auto c = crossing_set(I2, 2);
    CHECK(c == std::vector<Segment>{{1, 3, 1}, {2, 4, 2}});
    c = crossing_set(I2, 3);
    CHECK(c == std::vector<Segment>{{2, 4, 2}});
    CHECK(crossing_set(I2, 4).empty());
    CHECK_THROWS_AS(crossing_set(I2, 0), RangeError);
    CHECK_THROWS_AS(crossing_set(I2, 5), RangeError);

    CHECK(endpoint_bitstring(I2) == std::vector<bool>{false, false, true, true});
    CHECK(endpoint_bitstring(validate_instance({{1, 2, 1}})) == std::vector<bool>{false, true});
    CHECK(left_endpoint_ys(I2) == std::vector<std::size_t>{1, 2});
    CHECK(right_endpoint_ys(I2) == std::vector<std::size_t>{1, 2});
}

TEST_CASE("crossing count is lefts minus rights for random instances") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto inst = random_instance(50, seed);
        const auto e = endpoint_bitstring(inst);
        std::size_t ones = 0;
        for (bool b : e) ones += b;
        CHECK(ones == inst.n());
        std::size_t lefts = 0, rights = 0;
        for (std::size_t i = 1; i <= 2 * inst.n(); ++i) {
            (e[i - 1] ? rights : lefts)++;
            REQUIRE(crossing_set(inst, i).size() == lefts - rights);
        }
    }
}

TEST_CASE("text format") {
    std::istringstream in("# two segments\n1 3 1\n\n  2\t4 2  \n");
    const auto inst = validate_instance(parse_segments(in));
    CHECK(inst == I2);
    std::ostringstream out;
    write_segments(out, inst);
    CHECK(out.str() == "1 3 1\n2 4 2\n");

    std::istringstream bad("1 3 1\n2 4\n");
    try {
        parse_segments(bad);
        FAIL("expected parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
    }
    std::istringstream junk("1 3 x\n");
    CHECK_THROWS_AS(parse_segments(junk), ParseError);
    std::istringstream neg("-1 3 1\n");
    CHECK_THROWS_AS(parse_segments(neg), ParseError);

    std::istringstream raw("0.5 2.25 -1e3\n");
    const auto r = parse_raw_segments(raw);
    REQUIRE(r.size() == 1);
    CHECK(r[0].x_right == 2.25);
    CHECK(r[0].y == -1000.0);
}
