#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "segwt/delta_segment_index.hpp"
#include "segwt/errors.hpp"
#include "segwt/oracle.hpp"
#include "segwt/segment_index.hpp"

namespace segwt {

enum class QueryKind : std::uint8_t { access, select, rank };

struct Query {
    QueryKind kind = QueryKind::access;
    std::size_t a = 0;  // y for access, i otherwise
    std::size_t b = 0;  // j for select, y for rank
    friend bool operator==(const Query&, const Query&) = default;
};

std::string describe(const Query& q);

// Answer or error of one query, comparable across implementations.
struct Outcome {
    ErrorClass error = ErrorClass::none;
    std::size_t value = 0;   // select / rank answer, or available() when not found
    Segment segment{};       // access answer
    friend bool operator==(const Outcome&, const Outcome&) = default;
};

std::string describe(const Outcome& o);

template <class F>
Outcome capture(F&& f) {
    Outcome o;
    try {
        f(o);
    } catch (const NotFoundError& e) {
        o = Outcome{ErrorClass::not_found, e.available(), {}};
    } catch (const RangeError&) {
        o = Outcome{ErrorClass::range, 0, {}};
    } catch (const Error&) {
        o = Outcome{ErrorClass::other, 0, {}};
    }
    return o;
}

// Works for the oracle adapter and both index types.
template <class Index>
Outcome run_query(const Index& idx, const Query& q) {
    return capture([&](Outcome& o) {
        switch (q.kind) {
            case QueryKind::access: o.segment = idx.access(q.a); break;
            case QueryKind::select: o.value = idx.select(q.a, q.b); break;
            case QueryKind::rank: o.value = idx.rank(q.a, q.b); break;
        }
    });
}

// The oracle behind the same query interface as the indexes.
class OracleIndex {
public:
    explicit OracleIndex(const RankSpaceInstance& inst) : inst_(&inst) {}
    Segment access(std::size_t y) const { return oracle_access(*inst_, y); }
    std::size_t select(std::size_t i, std::size_t j) const { return oracle_select(*inst_, i, j); }
    std::size_t rank(std::size_t i, std::size_t y) const { return oracle_rank(*inst_, i, y); }

private:
    const RankSpaceInstance* inst_;
};

// Every argument in the valid domain plus a margin of one on each side.
std::vector<Query> exhaustive_queries(std::size_t n);
// per_type queries of each kind, mostly valid, with about 5% out of domain.
std::vector<Query> sampled_queries(const RankSpaceInstance& inst, std::size_t per_type, std::mt19937_64& rng);
std::vector<Outcome> oracle_outcomes(const RankSpaceInstance& inst, std::span<const Query> queries);

struct Mismatch {
    std::string index;
    std::string instance;
    Query query;
    Outcome expected;
    Outcome actual;
};

struct CountCheck {
    std::size_t n = 0;
    std::uint64_t enumerated = 0;
    std::uint64_t expected = 0;
};

struct VerifyReport {
    std::vector<CountCheck> counts;
    std::size_t instances = 0;
    std::size_t queries = 0;  // index-query comparisons
    std::size_t mismatch_count = 0;
    std::vector<Mismatch> mismatches;  // the first few

    static constexpr std::size_t kKeptMismatches = 20;
    bool ok() const;
    void add(Mismatch m);
};

std::string describe(const Mismatch& m);

template <class Index>
void check_queries(const Index& idx, std::string_view label, const std::string& instance,
                   std::span<const Query> queries, std::span<const Outcome> expected, VerifyReport& report) {
    for (std::size_t k = 0; k < queries.size(); ++k) {
        const Outcome got = run_query(idx, queries[k]);
        ++report.queries;
        if (!(got == expected[k])) report.add(Mismatch{std::string(label), instance, queries[k], expected[k], got});
    }
}

struct IndexConfig {
    bool binary = false;
    std::size_t delta = 2;
    SlabBackend backend = SlabBackend::wavelet;
};

std::string describe(const IndexConfig& c);
std::vector<IndexConfig> index_configs(std::span<const std::size_t> deltas);

// Builds every configured index over inst and compares it against the
// precomputed expected outcomes.
void check_instance(const RankSpaceInstance& inst, const std::string& instance_name,
                    std::span<const IndexConfig> configs, std::span<const Query> queries,
                    std::span<const Outcome> expected, VerifyReport& report);

std::string describe_instance(const RankSpaceInstance& inst);

struct VerifyOptions {
    std::size_t exhaustive_n = 3;
    std::size_t random_trials = 0;
    std::size_t max_n = 4096;
    std::uint64_t seed = 1;
    std::size_t queries_per_type = 1000;
    std::vector<std::size_t> exhaustive_deltas{2, 3};
    std::vector<std::size_t> random_deltas{2, 8, 16};
    std::vector<std::size_t> random_sizes;  // empty: 2^4, 2^8, 2^12, 2^14 up to max_n
};

// Enumeration counts, the exhaustive suite for n <= exhaustive_n, and the
// seeded random suite. LimitError when exhaustive_n > kMaxEnumerationN.
VerifyReport run_verification(const VerifyOptions& opt, std::ostream* log = nullptr);

}  // namespace segwt
