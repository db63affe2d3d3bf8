#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "segwt/delta_segment_index.hpp"
#include "segwt/segment_index.hpp"
#include "segwt/segments.hpp"

namespace segwt {

enum class IndexKind : std::uint8_t { binary = 0, delta = 1 };

// On-disk index file:
//   "SWTX" | u16 version | u8 kind | u64 n | u32 delta | f64 epsilon |
//   u8 backend | u8 has_maps | index body | [x_values, y_values] | u32 CRC32
// Little-endian; the CRC covers every preceding byte.
struct IndexContainer {
    static constexpr std::uint16_t kVersion = 1;

    std::variant<SegmentIndex, DeltaSegmentIndex> index;
    std::optional<CoordinateMaps> maps;

    IndexKind kind() const noexcept { return static_cast<IndexKind>(index.index()); }
    std::size_t n() const noexcept;
    SpaceReport space_report() const;

    std::vector<std::uint8_t> serialize() const;
    static IndexContainer load(std::span<const std::uint8_t> bytes);  // FormatError on any inconsistency

    void save_file(const std::string& path) const;  // IoError
    static IndexContainer load_file(const std::string& path);
};

// File could not be read or written.
class IoError : public Error {
public:
    using Error::Error;
};

std::uint32_t crc32_of(std::span<const std::uint8_t> bytes);

}  // namespace segwt
