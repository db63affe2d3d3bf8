#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace segwt {

// Bits charged to a structure. Payload is the information the structure
// encodes (one bit per stored bit, one field width per packed integer).
// Overhead is everything added to make queries fast: rank and select
// directories, block tables, and padding up to word granularity. Scalar
// bookkeeping fields (lengths, cached totals) are not charged.
struct SpaceCount {
    std::uint64_t payload_bits = 0;
    std::uint64_t overhead_bits = 0;

    std::uint64_t total_bits() const { return payload_bits + overhead_bits; }

    SpaceCount& operator+=(const SpaceCount& o) {
        payload_bits += o.payload_bits;
        overhead_bits += o.overhead_bits;
        return *this;
    }
    friend SpaceCount operator+(SpaceCount a, const SpaceCount& b) { return a += b; }
    friend bool operator==(const SpaceCount&, const SpaceCount&) = default;
};

struct LevelSpace {
    std::string name;
    SpaceCount bits;
};

struct SpaceReport {
    std::uint64_t n = 0;
    SpaceCount total;
    std::vector<LevelSpace> levels;

    // 2n lg n, the information-theoretic leading term; 0 for n < 2.
    double reference_bits() const;
    // total / (2n lg n); empty for n < 2.
    std::optional<double> ratio() const;
    std::optional<double> payload_ratio() const;
    // (total - 2n lg n) / n, the constant c in total <= 2n lg n + c n.
    std::optional<double> linear_constant() const;
};

std::string format_space_report(const SpaceReport& report);

}  // namespace segwt
