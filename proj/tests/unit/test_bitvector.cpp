#include <doctest.h>

#include <random>
#include <vector>

#include "segwt/bitvector.hpp"
#include "segwt/byte_io.hpp"
#include "segwt/errors.hpp"

using namespace segwt;

namespace {

std::vector<bool> bits_of(std::initializer_list<int> v) {
    std::vector<bool> out;
    for (int b : v) out.push_back(b != 0);
    return out;
}

std::size_t scan_rank(const std::vector<bool>& s, bool b, std::size_t i) {
    std::size_t c = 0;
    for (std::size_t p = 0; p < i; ++p) c += s[p] == b;
    return c;
}

std::size_t scan_select(const std::vector<bool>& s, bool b, std::size_t j) {
    for (std::size_t p = 0, c = 0; p < s.size(); ++p)
        if (s[p] == b && ++c == j) return p + 1;
    return 0;
}

std::vector<bool> random_bits(std::size_t n, double density, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution coin(density);
    std::vector<bool> s(n);
    for (std::size_t p = 0; p < n; ++p) s[p] = coin(rng);
    return s;
}

}  // namespace

TEST_CASE("empty bitvector") {
    BitVector v(std::vector<bool>{});
    CHECK(v.size() == 0);
    CHECK(v.rank(true, 0) == 0);
    CHECK(v.rank(false, 0) == 0);
    CHECK_THROWS_AS(v.access(1), RangeError);
    CHECK_THROWS_AS(v.rank(true, 1), RangeError);
    CHECK_THROWS_AS(v.select(true, 1), NotFoundError);
}

TEST_CASE("small example 0110") {
    BitVector v(bits_of({0, 1, 1, 0}));
    CHECK(v.size() == 4);
    CHECK(v.rank(true, 4) == 2);
    CHECK(v.access(2) == 1);
    CHECK(v.access(4) == 0);
    CHECK(v.rank(true, 3) == 2);
    CHECK(v.rank(false, 0) == 0);
    CHECK(v.select(false, 2) == 4);
    CHECK(v.select(true, 1) == 2);
    CHECK_THROWS_AS(v.access(0), RangeError);
    CHECK_THROWS_AS(v.access(5), RangeError);
    CHECK_THROWS_AS(v.rank(false, 5), RangeError);
    try {
        v.select(true, 3);
        FAIL("expected not-found");
    } catch (const NotFoundError& e) {
        CHECK(e.available() == 2);
    }
    CHECK_THROWS_AS(v.select(true, 0), NotFoundError);
}

TEST_CASE("all zeros has no ones to select") {
    BitVector v(std::vector<bool>(1000, false));
    CHECK(v.count(true) == 0);
    CHECK_THROWS_AS(v.select(true, 1), NotFoundError);
    CHECK(v.select(false, 1000) == 1000);
}

TEST_CASE("exhaustive equivalence with linear scan up to length 12") {
    for (std::size_t len = 0; len <= 12; ++len) {
        for (std::uint32_t mask = 0; mask < (1u << len); ++mask) {
            std::vector<bool> s(len);
            for (std::size_t p = 0; p < len; ++p) s[p] = (mask >> p) & 1;
            BitVector v(s);
            for (std::size_t i = 0; i <= len; ++i) {
                REQUIRE(v.rank(true, i) == scan_rank(s, true, i));
                REQUIRE(v.rank(false, i) + v.rank(true, i) == i);
                if (i >= 1) REQUIRE(v.access(i) == s[i - 1]);
            }
            for (bool b : {false, true}) {
                const std::size_t c = scan_rank(s, b, len);
                for (std::size_t j = 1; j <= c; ++j) REQUIRE(v.select(b, j) == scan_select(s, b, j));
                REQUIRE_THROWS_AS(v.select(b, c + 1), NotFoundError);
            }
        }
    }
}

TEST_CASE("random inputs agree with linear scan across directory boundaries") {
    for (double density : {0.5, 0.02, 0.98}) {
        const auto s = random_bits(300000, density, 11);
        BitVector v(s);
        std::vector<std::size_t> prefix(s.size() + 1, 0);
        for (std::size_t p = 0; p < s.size(); ++p) prefix[p + 1] = prefix[p] + s[p];
        std::mt19937_64 rng(5);
        std::uniform_int_distribution<std::size_t> pos(0, s.size());
        for (int t = 0; t < 2000; ++t) {
            const std::size_t i = pos(rng);
            REQUIRE(v.rank(true, i) == prefix[i]);
            if (i >= 1) REQUIRE(v.access(i) == (v.rank(true, i) - v.rank(true, i - 1) == 1));
        }
        // Duality on every occurrence.
        for (bool b : {false, true}) {
            std::size_t j = 0;
            for (std::size_t p = 0; p < s.size(); ++p) {
                if (s[p] != b) continue;
                ++j;
                REQUIRE(v.select(b, j) == p + 1);
            }
            for (int t = 0; t < 2000; ++t) {
                const std::size_t i = pos(rng);
                const std::size_t r = v.rank(b, i);
                if (r > 0) REQUIRE(v.select(b, r) <= i);
            }
        }
    }
}

TEST_CASE("select is strictly increasing") {
    const auto s = random_bits(100000, 0.3, 3);
    BitVector v(s);
    for (bool b : {false, true})
        for (std::size_t j = 2; j <= v.count(b); ++j) REQUIRE(v.select(b, j - 1) < v.select(b, j));
}

TEST_CASE("space: payload is the length, overhead is a bounded fraction") {
    for (std::size_t len : {std::size_t{1} << 10, std::size_t{1} << 16, std::size_t{1} << 20, std::size_t{100003}}) {
        BitVector v(random_bits(len, 0.5, len));
        const SpaceCount s = v.space();
        CHECK(s.payload_bits == len);
        CHECK(static_cast<double>(s.overhead_bits) <= 0.125 * static_cast<double>(len) + 256.0);
    }
}

TEST_CASE("serialization round trip and corruption detection") {
    BitVector v(random_bits(70001, 0.4, 9));
    ByteWriter w;
    v.serialize(w);
    ByteReader r(w.buffer());
    CHECK(BitVector::load(r) == v);
    CHECK(r.remaining() == 0);

    auto bytes = w.take();
    bytes[16] ^= 0x01;  // first payload word
    ByteReader bad(bytes);
    CHECK_THROWS_AS(BitVector::load(bad), FormatError);

    std::vector<std::uint8_t> cut(bytes.begin(), bytes.begin() + 20);
    ByteReader truncated(cut);
    CHECK_THROWS_AS(BitVector::load(truncated), FormatError);
}

TEST_CASE("select_in_word") {
    CHECK(select_in_word(0b1, 1) == 0);
    CHECK(select_in_word(0b1010, 2) == 3);
    CHECK(select_in_word(~std::uint64_t{0}, 64) == 63);
    CHECK(select_in_word(std::uint64_t{1} << 63, 1) == 63);
    for (unsigned r = 1; r <= 32; ++r) CHECK(select_in_word(0xAAAAAAAAAAAAAAAAULL, r) == 2 * r - 1);
}
