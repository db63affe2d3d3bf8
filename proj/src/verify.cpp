#include "segwt/verify.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

namespace segwt {

namespace {

const char* kind_name(QueryKind k) {
    switch (k) {
        case QueryKind::access: return "access";
        case QueryKind::select: return "select";
        case QueryKind::rank: return "rank";
    }
    return "?";
}

}  // namespace

std::string describe(const Query& q) {
    std::ostringstream s;
    s << kind_name(q.kind) << ' ' << q.a;
    if (q.kind != QueryKind::access) s << ' ' << q.b;
    return s.str();
}

std::string describe(const Outcome& o) {
    std::ostringstream s;
    switch (o.error) {
        case ErrorClass::none:
            if (o.segment.y != 0) s << '(' << o.segment.x_left << ',' << o.segment.x_right << ',' << o.segment.y << ')';
            else s << o.value;
            break;
        case ErrorClass::not_found: s << "not-found(available=" << o.value << ')'; break;
        default: s << to_string(o.error) << " error"; break;
    }
    return s.str();
}

std::string describe(const Mismatch& m) {
    return m.index + " on " + m.instance + ": " + describe(m.query) + " expected " + describe(m.expected) + ", got " +
           describe(m.actual);
}

std::string describe(const IndexConfig& c) {
    if (c.binary) return "binary";
    return "delta=" + std::to_string(c.delta) + "/" + to_string(c.backend);
}

std::string describe_instance(const RankSpaceInstance& inst) {
    std::ostringstream s;
    s << "n=" << inst.n() << " [";
    for (std::size_t k = 0; k < inst.n(); ++k) {
        const Segment& g = inst.segments()[k];
        s << (k ? "," : "") << '(' << g.x_left << ',' << g.x_right << ',' << g.y << ')';
    }
    s << ']';
    return s.str();
}

bool VerifyReport::ok() const {
    if (mismatch_count != 0) return false;
    return std::all_of(counts.begin(), counts.end(), [](const CountCheck& c) { return c.enumerated == c.expected; });
}

void VerifyReport::add(Mismatch m) {
    ++mismatch_count;
    if (mismatches.size() < kKeptMismatches) mismatches.push_back(std::move(m));
}

std::vector<Query> exhaustive_queries(std::size_t n) {
    std::vector<Query> qs;
    for (std::size_t y = 0; y <= n + 1; ++y) qs.push_back({QueryKind::access, y, 0});
    for (std::size_t i = 0; i <= 2 * n + 1; ++i) {
        for (std::size_t j = 0; j <= n + 1; ++j) qs.push_back({QueryKind::select, i, j});
        for (std::size_t y = 0; y <= n + 1; ++y) qs.push_back({QueryKind::rank, i, y});
    }
    return qs;
}

std::vector<Query> sampled_queries(const RankSpaceInstance& inst, std::size_t per_type, std::mt19937_64& rng) {
    const std::size_t n = inst.n();
    std::uniform_int_distribution<std::size_t> pick_y(1, n), pick_i(1, 2 * n), percent(0, 99);
    std::vector<Query> qs;
    qs.reserve(3 * per_type);
    for (std::size_t k = 0; k < per_type; ++k) {
        const bool wild = percent(rng) < 5;
        qs.push_back({QueryKind::access, wild ? n + 1 : pick_y(rng), 0});
    }
    // Crossing counts by sweeping E once.
    std::vector<std::size_t> crossing(2 * n + 1, 0);
    {
        const auto e = endpoint_bitstring(inst);
        for (std::size_t i = 1; i <= 2 * n; ++i) crossing[i] = crossing[i - 1] + (e[i - 1] ? std::size_t(-1) : 1);
    }
    for (std::size_t k = 0; k < per_type; ++k) {
        const std::size_t i = pick_i(rng);
        const std::size_t c = crossing[i];
        if (percent(rng) < 5 || c == 0) qs.push_back({QueryKind::select, i, c + 1});
        else qs.push_back({QueryKind::select, i, std::uniform_int_distribution<std::size_t>(1, c)(rng)});
    }
    for (std::size_t k = 0; k < per_type; ++k) {
        const bool wild = percent(rng) < 5;
        qs.push_back({QueryKind::rank, wild ? 2 * n + 1 : pick_i(rng), pick_y(rng)});
    }
    return qs;
}

std::vector<Outcome> oracle_outcomes(const RankSpaceInstance& inst, std::span<const Query> queries) {
    const OracleIndex oracle(inst);
    std::vector<Outcome> out;
    out.reserve(queries.size());
    for (const Query& q : queries) out.push_back(run_query(oracle, q));
    return out;
}

std::vector<IndexConfig> index_configs(std::span<const std::size_t> deltas) {
    std::vector<IndexConfig> cs{IndexConfig{true, 2, SlabBackend::wavelet}};
    for (std::size_t d : deltas)
        for (SlabBackend b : {SlabBackend::wavelet, SlabBackend::block_table}) cs.push_back(IndexConfig{false, d, b});
    return cs;
}

void check_instance(const RankSpaceInstance& inst, const std::string& instance_name,
                    std::span<const IndexConfig> configs, std::span<const Query> queries,
                    std::span<const Outcome> expected, VerifyReport& report) {
    ++report.instances;
    for (const IndexConfig& c : configs) {
        if (c.binary) {
            check_queries(SegmentIndex(inst), describe(c), instance_name, queries, expected, report);
        } else {
            DeltaSegmentIndex::Options opt;
            opt.delta = c.delta;
            opt.backend = c.backend;
            check_queries(DeltaSegmentIndex(inst, opt), describe(c), instance_name, queries, expected, report);
        }
    }
}

VerifyReport run_verification(const VerifyOptions& opt, std::ostream* log) {
    if (opt.exhaustive_n > kMaxEnumerationN)
        throw LimitError("exhaustive enumeration limited to n <= " + std::to_string(kMaxEnumerationN));
    VerifyReport report;

    const auto exhaustive = index_configs(opt.exhaustive_deltas);
    for (std::size_t n = 1; n <= opt.exhaustive_n; ++n) {
        const auto queries = exhaustive_queries(n);
        InstanceEnumerator e(n);
        CountCheck count{n, 0, expected_instance_count(n)};
        while (auto inst = e.next()) {
            ++count.enumerated;
            check_instance(*inst, describe_instance(*inst), exhaustive, queries, oracle_outcomes(*inst, queries),
                           report);
        }
        report.counts.push_back(count);
        if (log)
            *log << "exhaustive n=" << n << ": " << count.enumerated << " instances checked (expected "
                 << count.expected << ")\n";
    }

    if (opt.random_trials > 0) {
        std::vector<std::size_t> sizes = opt.random_sizes;
        if (sizes.empty()) {
            for (std::size_t s : {std::size_t{1} << 4, std::size_t{1} << 8, std::size_t{1} << 12, std::size_t{1} << 14})
                if (s <= opt.max_n) sizes.push_back(s);
            if (sizes.empty() && opt.max_n >= 1) sizes.push_back(opt.max_n);
        }
        const auto configs = index_configs(opt.random_deltas);
        std::mt19937_64 rng(opt.seed);
        for (std::size_t n : sizes) {
            const std::size_t before = report.mismatch_count;
            for (std::size_t t = 0; t < opt.random_trials; ++t) {
                const std::uint64_t inst_seed = rng();
                const auto inst = random_instance(n, inst_seed);
                const auto queries = sampled_queries(inst, opt.queries_per_type, rng);
                const std::string name = "random n=" + std::to_string(n) + " seed=" + std::to_string(inst_seed);
                check_instance(inst, name, configs, queries, oracle_outcomes(inst, queries), report);
            }
            if (log)
                *log << "random n=" << n << ": " << opt.random_trials << " instances, "
                     << report.mismatch_count - before << " mismatches\n";
        }
    }
    return report;
}

}  // namespace segwt
