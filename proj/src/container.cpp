#include "segwt/container.hpp"

#include <zlib.h>

#include <algorithm>
#include <cstring>
#include <fstream>
#include <iterator>

namespace segwt {

namespace {

constexpr char kMagic[4] = {'S', 'W', 'T', 'X'};

}  // namespace

std::uint32_t crc32_of(std::span<const std::uint8_t> bytes) {
    uLong crc = crc32(0L, Z_NULL, 0);
    // zlib takes uInt lengths; feed large inputs in pieces.
    constexpr std::size_t kChunk = std::size_t{1} << 30;
    for (std::size_t off = 0; off < bytes.size(); off += kChunk) {
        const std::size_t len = std::min(kChunk, bytes.size() - off);
        crc = crc32(crc, bytes.data() + off, static_cast<uInt>(len));
    }
    return static_cast<std::uint32_t>(crc);
}

std::size_t IndexContainer::n() const noexcept {
    return std::visit([](const auto& idx) { return idx.n(); }, index);
}

SpaceReport IndexContainer::space_report() const {
    return std::visit([](const auto& idx) { return idx.space_report(); }, index);
}

std::vector<std::uint8_t> IndexContainer::serialize() const {
    ByteWriter out;
    out.bytes(std::span(reinterpret_cast<const std::uint8_t*>(kMagic), 4));
    out.u16(kVersion);
    out.u8(static_cast<std::uint8_t>(kind()));
    out.u64(n());
    if (const auto* d = std::get_if<DeltaSegmentIndex>(&index)) {
        out.u32(static_cast<std::uint32_t>(d->delta()));
        out.f64(d->epsilon());
        out.u8(static_cast<std::uint8_t>(d->backend()));
    } else {
        out.u32(2);
        out.f64(0.0);
        out.u8(0);
    }
    out.u8(maps ? 1 : 0);
    std::visit([&](const auto& idx) { idx.serialize(out); }, index);
    if (maps) {
        out.f64_array(maps->x_values);
        out.f64_array(maps->y_values);
    }
    out.u32(crc32_of(out.buffer()));
    return out.take();
}

IndexContainer IndexContainer::load(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < 4 + 4 || std::memcmp(bytes.data(), kMagic, 4) != 0)
        throw FormatError("not an index container (bad magic)");
    const auto body = bytes.first(bytes.size() - 4);
    ByteReader tail(bytes.last(4));
    if (tail.u32() != crc32_of(body)) throw FormatError("container checksum mismatch");

    ByteReader in(body);
    in.bytes(4);
    const std::uint16_t version = in.u16();
    if (version != kVersion) throw FormatError("unsupported container version " + std::to_string(version));
    const std::uint8_t kind = in.u8();
    const std::uint64_t n = in.u64();
    const std::uint32_t delta = in.u32();
    const double epsilon = in.f64();
    const std::uint8_t backend = in.u8();
    const std::uint8_t has_maps = in.u8();
    if (has_maps > 1) throw FormatError("bad coordinate-map flag");

    IndexContainer c;
    if (kind == static_cast<std::uint8_t>(IndexKind::binary)) {
        c.index = SegmentIndex::load(in);
    } else if (kind == static_cast<std::uint8_t>(IndexKind::delta)) {
        auto d = DeltaSegmentIndex::load(in);
        const double stored = d.epsilon();
        if (d.delta() != delta || static_cast<std::uint8_t>(d.backend()) != backend ||
            std::memcmp(&stored, &epsilon, sizeof epsilon) != 0)
            throw FormatError("delta index parameters disagree with header");
        c.index = std::move(d);
    } else {
        throw FormatError("unknown index kind " + std::to_string(kind));
    }
    if (c.n() != n) throw FormatError("index size disagrees with header");
    if (has_maps) {
        CoordinateMaps m;
        m.x_values = in.f64_array();
        m.y_values = in.f64_array();
        if (m.x_values.size() != 2 * n || m.y_values.size() != n) throw FormatError("coordinate maps disagree with n");
        c.maps = std::move(m);
    }
    if (in.remaining() != 0) throw FormatError("trailing bytes after container body");
    return c;
}

void IndexContainer::save_file(const std::string& path) const {
    const auto bytes = serialize();
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("write to '" + path + "' failed");
}

IndexContainer IndexContainer::load_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) throw IoError("read from '" + path + "' failed");
    return load(bytes);
}

}  // namespace segwt
