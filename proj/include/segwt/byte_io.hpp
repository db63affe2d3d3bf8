#pragma once

#include <cstddef>
#include <cstdint>
#include <cstring>
#include <span>
#include <string>
#include <vector>

#include "segwt/errors.hpp"

namespace segwt {

// Little-endian fixed-width writer over a growable byte buffer.
class ByteWriter {
public:
    void u8(std::uint8_t v) { buf_.push_back(v); }
    void u16(std::uint16_t v) { put(v, 2); }
    void u32(std::uint32_t v) { put(v, 4); }
    void u64(std::uint64_t v) { put(v, 8); }
    void f64(double v) {
        std::uint64_t bits;
        std::memcpy(&bits, &v, sizeof bits);
        u64(bits);
    }
    void bytes(std::span<const std::uint8_t> b) { buf_.insert(buf_.end(), b.begin(), b.end()); }

    template <class Int>
    void u64_array(std::span<const Int> values) {
        u64(values.size());
        for (auto v : values) u64(static_cast<std::uint64_t>(v));
    }
    void u16_array(std::span<const std::uint16_t> values) {
        u64(values.size());
        for (auto v : values) u16(v);
    }
    void f64_array(std::span<const double> values) {
        u64(values.size());
        for (auto v : values) f64(v);
    }

    const std::vector<std::uint8_t>& buffer() const { return buf_; }
    std::vector<std::uint8_t> take() { return std::move(buf_); }

private:
    void put(std::uint64_t v, int width) {
        for (int k = 0; k < width; ++k) buf_.push_back(static_cast<std::uint8_t>(v >> (8 * k)));
    }
    std::vector<std::uint8_t> buf_;
};

// Bounds-checked little-endian reader; throws FormatError on truncation.
class ByteReader {
public:
    explicit ByteReader(std::span<const std::uint8_t> data) : data_(data) {}

    std::uint8_t u8() { return static_cast<std::uint8_t>(get(1)); }
    std::uint16_t u16() { return static_cast<std::uint16_t>(get(2)); }
    std::uint32_t u32() { return static_cast<std::uint32_t>(get(4)); }
    std::uint64_t u64() { return get(8); }
    double f64() {
        std::uint64_t bits = u64();
        double v;
        std::memcpy(&v, &bits, sizeof v);
        return v;
    }
    std::span<const std::uint8_t> bytes(std::size_t count) {
        need(count);
        auto out = data_.subspan(pos_, count);
        pos_ += count;
        return out;
    }

    // Array length prefix, checked against the bytes still available.
    std::size_t array_size(std::size_t element_width) {
        std::uint64_t count = u64();
        if (element_width != 0 && count > remaining() / element_width)
            throw FormatError("array length exceeds remaining input");
        return static_cast<std::size_t>(count);
    }
    std::vector<std::uint64_t> u64_array() {
        std::vector<std::uint64_t> out(array_size(8));
        for (auto& v : out) v = u64();
        return out;
    }
    std::vector<std::uint16_t> u16_array() {
        std::vector<std::uint16_t> out(array_size(2));
        for (auto& v : out) v = u16();
        return out;
    }
    std::vector<double> f64_array() {
        std::vector<double> out(array_size(8));
        for (auto& v : out) v = f64();
        return out;
    }

    std::size_t position() const { return pos_; }
    std::size_t remaining() const { return data_.size() - pos_; }

private:
    void need(std::size_t count) const {
        if (count > remaining()) throw FormatError("unexpected end of input");
    }
    std::uint64_t get(int width) {
        need(static_cast<std::size_t>(width));
        std::uint64_t v = 0;
        for (int k = 0; k < width; ++k) v |= std::uint64_t{data_[pos_ + k]} << (8 * k);
        pos_ += static_cast<std::size_t>(width);
        return v;
    }

    std::span<const std::uint8_t> data_;
    std::size_t pos_ = 0;
};

}  // namespace segwt
