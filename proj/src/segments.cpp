#include "segwt/segments.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>

#include "segwt/errors.hpp"

namespace segwt {

const char* to_string(ValidationKind kind) noexcept {
    switch (kind) {
        case ValidationKind::duplicate_x: return "duplicate x-coordinate";
        case ValidationKind::duplicate_y: return "duplicate y-coordinate";
        case ValidationKind::x_out_of_range: return "x-coordinate out of range";
        case ValidationKind::y_out_of_range: return "y-coordinate out of range";
        case ValidationKind::empty_segment: return "x_left >= x_right";
        case ValidationKind::symbol_out_of_alphabet: return "symbol outside alphabet";
        case ValidationKind::not_permutation: return "not a permutation";
        case ValidationKind::bad_parameter: return "bad parameter";
    }
    return "validation error";
}

const char* to_string(ErrorClass c) noexcept {
    switch (c) {
        case ErrorClass::none: return "ok";
        case ErrorClass::range: return "range";
        case ErrorClass::not_found: return "not-found";
        case ErrorClass::other: return "other";
    }
    return "?";
}

RankSpaceInstance validate_instance(std::vector<Segment> segs) {
    const std::size_t n = segs.size();
    std::vector<char> seen_x(2 * n + 1, 0), seen_y(n + 1, 0);
    auto fail = [](ValidationKind kind, std::size_t coord, const std::string& msg) {
        throw ValidationError(kind, coord, msg);
    };
    for (const Segment& s : segs) {
        const std::string where = "segment (" + std::to_string(s.x_left) + "," + std::to_string(s.x_right) + "," +
                                  std::to_string(s.y) + ")";
        if (s.x_left >= s.x_right) fail(ValidationKind::empty_segment, s.x_left, where + ": x_left >= x_right");
        for (std::size_t x : {s.x_left, s.x_right}) {
            if (x < 1 || x > 2 * n)
                fail(ValidationKind::x_out_of_range, x,
                     where + ": x=" + std::to_string(x) + " outside [1," + std::to_string(2 * n) + "]");
            if (seen_x[x]) fail(ValidationKind::duplicate_x, x, "duplicate x-coordinate at x=" + std::to_string(x));
            seen_x[x] = 1;
        }
        if (s.y < 1 || s.y > n)
            fail(ValidationKind::y_out_of_range, s.y,
                 where + ": y=" + std::to_string(s.y) + " outside [1," + std::to_string(n) + "]");
        if (seen_y[s.y]) fail(ValidationKind::duplicate_y, s.y, "duplicate y-coordinate at y=" + std::to_string(s.y));
        seen_y[s.y] = 1;
    }
    std::sort(segs.begin(), segs.end(), [](const Segment& a, const Segment& b) { return a.y < b.y; });
    return RankSpaceInstance(std::move(segs));
}

std::size_t CoordinateMaps::x_rank_at_most(double v) const {
    return static_cast<std::size_t>(std::upper_bound(x_values.begin(), x_values.end(), v) - x_values.begin());
}

std::size_t CoordinateMaps::y_rank_at_most(double v) const {
    return static_cast<std::size_t>(std::upper_bound(y_values.begin(), y_values.end(), v) - y_values.begin());
}

ReducedInstance rank_space_reduce(std::span<const RawSegment> raw, TieMode mode) {
    const std::size_t n = raw.size();
    for (std::size_t k = 0; k < n; ++k)
        if (!(raw[k].x_left < raw[k].x_right))
            throw ValidationError(ValidationKind::empty_segment, k + 1,
                                  "raw segment " + std::to_string(k + 1) + ": x_left >= x_right");

    struct Endpoint {
        double value;
        bool right;
        double y;
        std::size_t seg;
    };
    std::vector<Endpoint> ends;
    ends.reserve(2 * n);
    for (std::size_t k = 0; k < n; ++k) {
        ends.push_back({raw[k].x_left, false, raw[k].y, k});
        ends.push_back({raw[k].x_right, true, raw[k].y, k});
    }
    std::sort(ends.begin(), ends.end(), [](const Endpoint& a, const Endpoint& b) {
        if (a.value != b.value) return a.value < b.value;
        if (a.right != b.right) return a.right;  // right endpoints first
        if (a.y != b.y) return a.y < b.y;
        return a.seg < b.seg;
    });

    std::vector<std::size_t> seg_order(n);
    std::iota(seg_order.begin(), seg_order.end(), std::size_t{0});
    std::sort(seg_order.begin(), seg_order.end(), [&](std::size_t a, std::size_t b) {
        if (raw[a].y != raw[b].y) return raw[a].y < raw[b].y;
        if (raw[a].x_left != raw[b].x_left) return raw[a].x_left < raw[b].x_left;
        return a < b;
    });

    if (mode == TieMode::strict) {
        for (std::size_t p = 1; p < ends.size(); ++p)
            if (ends[p].value == ends[p - 1].value)
                throw TieError('x', ends[p].value, "tie in x at x=" + std::to_string(ends[p].value));
        for (std::size_t p = 1; p < n; ++p)
            if (raw[seg_order[p]].y == raw[seg_order[p - 1]].y)
                throw TieError('y', raw[seg_order[p]].y, "tie in y at y=" + std::to_string(raw[seg_order[p]].y));
    }

    std::vector<Segment> segs(n);
    ReducedInstance out;
    out.maps.x_values.resize(2 * n);
    out.maps.y_values.resize(n);
    for (std::size_t r = 0; r < ends.size(); ++r) {
        out.maps.x_values[r] = ends[r].value;
        (ends[r].right ? segs[ends[r].seg].x_right : segs[ends[r].seg].x_left) = r + 1;
    }
    for (std::size_t r = 0; r < n; ++r) {
        segs[seg_order[r]].y = r + 1;
        out.maps.y_values[r] = raw[seg_order[r]].y;
    }
    out.instance = validate_instance(std::move(segs));
    return out;
}

std::vector<Segment> crossing_set(const RankSpaceInstance& inst, std::size_t i) {
    if (i < 1 || i > 2 * inst.n())
        throw RangeError("x-coordinate " + std::to_string(i) + " outside [1," + std::to_string(2 * inst.n()) + "]");
    std::vector<Segment> out;
    for (const Segment& s : inst.segments())
        if (s.crosses(i)) out.push_back(s);
    return out;
}

std::vector<bool> endpoint_bitstring(const RankSpaceInstance& inst) {
    std::vector<bool> e(2 * inst.n(), false);
    for (const Segment& s : inst.segments()) e[s.x_right - 1] = true;
    return e;
}

std::vector<std::size_t> left_endpoint_ys(const RankSpaceInstance& inst) {
    std::vector<std::size_t> by_x(2 * inst.n() + 1, 0), out;
    out.reserve(inst.n());
    for (const Segment& s : inst.segments()) by_x[s.x_left] = s.y;
    for (std::size_t x = 1; x <= 2 * inst.n(); ++x)
        if (by_x[x] != 0) out.push_back(by_x[x]);
    return out;
}

std::vector<std::size_t> right_endpoint_ys(const RankSpaceInstance& inst) {
    std::vector<std::size_t> by_x(2 * inst.n() + 1, 0), out;
    out.reserve(inst.n());
    for (const Segment& s : inst.segments()) by_x[s.x_right] = s.y;
    for (std::size_t x = 1; x <= 2 * inst.n(); ++x)
        if (by_x[x] != 0) out.push_back(by_x[x]);
    return out;
}

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t p = 0;
    while (p < line.size()) {
        while (p < line.size() && std::isspace(static_cast<unsigned char>(line[p]))) ++p;
        std::size_t q = p;
        while (q < line.size() && !std::isspace(static_cast<unsigned char>(line[q]))) ++q;
        if (q > p) fields.push_back(line.substr(p, q - p));
        p = q;
    }
    return fields;
}

template <class T, class Convert>
std::vector<T> parse_lines(std::istream& in, Convert convert) {
    std::vector<T> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto fields = split_fields(line);
        if (fields.empty() || fields[0].front() == '#') continue;
        if (fields.size() != 3)
            throw ParseError(lineno, "line " + std::to_string(lineno) + ": expected 3 fields, found " +
                                         std::to_string(fields.size()));
        out.push_back(convert(fields, lineno));
    }
    return out;
}

template <class Num>
Num parse_number(std::string_view tok, std::size_t lineno) {
    Num v{};
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size())
        throw ParseError(lineno, "line " + std::to_string(lineno) + ": cannot parse '" + std::string(tok) + "'");
    return v;
}

}  // namespace

std::vector<Segment> parse_segments(std::istream& in) {
    return parse_lines<Segment>(in, [](const auto& f, std::size_t ln) {
        using U = unsigned long long;
        return Segment{static_cast<std::size_t>(parse_number<U>(f[0], ln)),
                       static_cast<std::size_t>(parse_number<U>(f[1], ln)),
                       static_cast<std::size_t>(parse_number<U>(f[2], ln))};
    });
}

std::vector<RawSegment> parse_raw_segments(std::istream& in) {
    return parse_lines<RawSegment>(in, [](const auto& f, std::size_t ln) {
        return RawSegment{parse_number<double>(f[0], ln), parse_number<double>(f[1], ln),
                          parse_number<double>(f[2], ln)};
    });
}

void write_segments(std::ostream& out, const RankSpaceInstance& inst) {
    for (const Segment& s : inst.segments()) out << s.x_left << ' ' << s.x_right << ' ' << s.y << '\n';
}

}  // namespace segwt
