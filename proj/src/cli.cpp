#include "segwt/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>

#include "segwt/container.hpp"
#include "segwt/verify.hpp"

namespace segwt {

namespace {

struct UsageError : Error {
    using Error::Error;
};

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

template <class Num>
Num parse_arg(const std::string& tok, const char* what) {
    Num v{};
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size())
        throw UsageError(std::string("invalid ") + what + " '" + tok + "'");
    return v;
}

SlabBackend parse_backend(const std::string& s) {
    return s == "block" ? SlabBackend::block_table : SlabBackend::wavelet;
}

template <class F>
int guarded(std::ostream& err, F&& f) {
    try {
        return f();
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const LimitError& e) {
        err << "refused: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return kExitInput;
    } catch (const ValidationError& e) {
        err << "invalid input (" << to_string(e.kind()) << "): " << e.what() << '\n';
        return kExitInput;
    } catch (const TieError& e) {
        err << "tie error: " << e.what() << '\n';
        return kExitInput;
    } catch (const NotFoundError& e) {
        err << "not found: " << e.what() << " (crossing count " << e.available() << ")\n";
        return kExitQuery;
    } catch (const RangeError& e) {
        err << "out of range: " << e.what() << '\n';
        return kExitQuery;
    } catch (const IoError& e) {
        err << "I/O error: " << e.what() << '\n';
        return kExitIo;
    } catch (const FormatError& e) {
        err << "bad container: " << e.what() << '\n';
        return kExitIo;
    }
}

// ---------------------------------------------------------------- build

struct BuildArgs {
    std::string input;
    std::string out;
    std::string kind = "binary";
    std::size_t delta = 0;
    double epsilon = 0.5;
    std::string backend = "wavelet";
    std::size_t block_multiplier = 1;
    bool raw = false;
    std::string ties = "strict";
};

int cmd_build(const BuildArgs& a, std::ostream& out) {
    std::ifstream in(a.input);
    if (!in) throw IoError("cannot open '" + a.input + "'");

    IndexContainer c;
    RankSpaceInstance inst;
    if (a.raw) {
        const auto raw = parse_raw_segments(in);
        auto reduced = rank_space_reduce(raw, a.ties == "deterministic" ? TieMode::deterministic : TieMode::strict);
        inst = std::move(reduced.instance);
        c.maps = std::move(reduced.maps);
    } else {
        inst = validate_instance(parse_segments(in));
    }

    if (a.kind == "delta") {
        DeltaSegmentIndex::Options opt;
        opt.delta = a.delta;
        opt.epsilon = a.epsilon;
        opt.backend = parse_backend(a.backend);
        opt.block_multiplier = a.block_multiplier;
        c.index = DeltaSegmentIndex(inst, opt);
    } else {
        c.index = SegmentIndex(inst);
    }
    c.save_file(a.out);

    out << "built " << a.kind << " index, n=" << c.n();
    if (const auto* d = std::get_if<DeltaSegmentIndex>(&c.index))
        out << ", delta=" << d->delta() << ", backend=" << to_string(d->backend()) << ", height=" << d->height();
    out << (c.maps ? ", coordinate maps stored" : "") << " -> " << a.out << '\n';
    out << format_space_report(c.space_report());
    return kExitOk;
}

// ---------------------------------------------------------------- query

struct QueryArgs {
    std::string container;
    std::string op;
    std::vector<std::string> values;
    bool stats = false;
};

template <class Index>
int answer(const Index& idx, const std::optional<CoordinateMaps>& maps, const QueryArgs& a, std::ostream& out) {
    const std::size_t want = a.op == "access" ? 1 : 2;
    if (a.values.size() != want)
        throw UsageError(a.op + " takes " + std::to_string(want) + " argument" + (want == 1 ? "" : "s"));

    QueryStats stats;
    QueryStats* sp = a.stats ? &stats : nullptr;
    if (a.op == "access") {
        std::size_t y;
        if (maps) {
            const double v = parse_arg<double>(a.values[0], "y");
            y = maps->y_rank_at_most(v);
            if (y == 0 || maps->y_of(y) != v) throw RangeError("no segment at y=" + a.values[0]);
        } else {
            y = parse_arg<std::size_t>(a.values[0], "y");
        }
        const Segment s = idx.access(y, sp);
        if (maps) out << format_double(maps->x_of(s.x_left)) << ' ' << format_double(maps->x_of(s.x_right)) << ' '
                      << format_double(maps->y_of(s.y)) << '\n';
        else out << s.x_left << ' ' << s.x_right << ' ' << s.y << '\n';
    } else if (a.op == "select") {
        const std::size_t j = parse_arg<std::size_t>(a.values[1], "j");
        if (maps) {
            const std::size_t i = maps->x_rank_at_most(parse_arg<double>(a.values[0], "x"));
            if (i == 0)
                throw NotFoundError("segment-select: no segment crosses x=" + a.values[0], 0);
            out << format_double(maps->y_of(idx.select(i, j, sp))) << '\n';
        } else {
            out << idx.select(parse_arg<std::size_t>(a.values[0], "i"), j, sp) << '\n';
        }
    } else {
        std::size_t result = 0;
        if (maps) {
            const std::size_t i = maps->x_rank_at_most(parse_arg<double>(a.values[0], "x"));
            const std::size_t y = maps->y_rank_at_most(parse_arg<double>(a.values[1], "y"));
            if (i > 0 && y > 0) result = idx.rank(i, y, sp);
        } else {
            result = idx.rank(parse_arg<std::size_t>(a.values[0], "i"), parse_arg<std::size_t>(a.values[1], "y"), sp);
        }
        out << result << '\n';
    }
    if (a.stats) out << "node_visits " << stats.node_visits << '\n';
    return kExitOk;
}

int cmd_query(const QueryArgs& a, std::ostream& out) {
    const IndexContainer c = IndexContainer::load_file(a.container);
    return std::visit([&](const auto& idx) { return answer(idx, c.maps, a, out); }, c.index);
}

// ---------------------------------------------------------------- verify

int cmd_verify(const VerifyOptions& opt, std::ostream& out, std::ostream& err) {
    const VerifyReport r = run_verification(opt, &out);
    for (const auto& m : r.mismatches) err << "mismatch: " << describe(m) << '\n';
    for (const auto& c : r.counts)
        if (c.enumerated != c.expected)
            err << "count mismatch: n=" << c.n << " enumerated " << c.enumerated << ", expected " << c.expected << '\n';
    out << r.instances << " instances, " << r.queries << " query comparisons, " << r.mismatch_count
        << " mismatches\n";
    out << (r.ok() ? "PASS" : "FAIL") << '\n';
    return r.ok() ? kExitOk : kExitMismatch;
}

// ---------------------------------------------------------------- bench

struct BenchArgs {
    std::vector<std::size_t> sizes{1024, 4096, 16384};
    std::string kind;
    std::size_t delta = 0;
    std::string backend = "wavelet";
    std::size_t queries = 1000;
    std::uint64_t seed = 1;
    std::size_t threads = 1;
    bool csv = false;
};

struct BenchRow {
    std::size_t n;
    std::string kind;
    std::size_t delta;
    double build_ms;
    double bits_per_nlgn;
    double node_visits;
    double query_ns;
};

std::vector<Query> bench_queries(const RankSpaceInstance& inst, std::size_t count, std::mt19937_64& rng) {
    const std::size_t n = inst.n();
    std::uniform_int_distribution<std::size_t> pick_y(1, n), pick_i(1, 2 * n);
    std::vector<std::size_t> crossing(2 * n + 1, 0);
    const auto e = endpoint_bitstring(inst);
    for (std::size_t i = 1; i <= 2 * n; ++i) crossing[i] = e[i - 1] ? crossing[i - 1] - 1 : crossing[i - 1] + 1;
    std::vector<Query> qs;
    qs.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        switch (k % 3) {
            case 0: qs.push_back({QueryKind::access, pick_y(rng), 0}); break;
            case 1: {
                std::size_t i = pick_i(rng);
                while (crossing[i] == 0) i = pick_i(rng);
                qs.push_back({QueryKind::select, i, std::uniform_int_distribution<std::size_t>(1, crossing[i])(rng)});
                break;
            }
            default: qs.push_back({QueryKind::rank, pick_i(rng), pick_y(rng)}); break;
        }
    }
    return qs;
}

template <class Index>
void time_queries(const Index& idx, const std::vector<Query>& qs, std::size_t threads, BenchRow& row) {
    threads = std::max<std::size_t>(1, std::min(threads, qs.size()));
    std::vector<std::size_t> visits(threads, 0);
    std::vector<double> elapsed(threads, 0);
    std::vector<std::size_t> sink(threads, 0);
    auto work = [&](std::size_t t) {
        QueryStats stats;
        const auto start = std::chrono::steady_clock::now();
        for (std::size_t k = t; k < qs.size(); k += threads) {
            const Query& q = qs[k];
            switch (q.kind) {
                case QueryKind::access: sink[t] += idx.access(q.a, &stats).x_left; break;
                case QueryKind::select: sink[t] += idx.select(q.a, q.b, &stats); break;
                case QueryKind::rank: sink[t] += idx.rank(q.a, q.b, &stats); break;
            }
        }
        elapsed[t] = std::chrono::duration<double, std::nano>(std::chrono::steady_clock::now() - start).count();
        visits[t] = stats.node_visits;
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(work, t);
        for (auto& th : pool) th.join();
    }
    double ns = 0;
    std::size_t v = 0;
    for (std::size_t t = 0; t < threads; ++t) {
        ns += elapsed[t];
        v += visits[t];
    }
    row.node_visits = qs.empty() ? 0 : static_cast<double>(v) / static_cast<double>(qs.size());
    row.query_ns = qs.empty() ? 0 : ns / static_cast<double>(qs.size());
}

int cmd_bench(const BenchArgs& a, std::ostream& out) {
    const bool delta = a.kind == "delta" || (a.kind.empty() && a.delta != 0);
    std::vector<BenchRow> rows;
    std::mt19937_64 rng(a.seed);
    for (std::size_t n : a.sizes) {
        if (n == 0) throw UsageError("sizes must be positive");
        const auto inst = random_instance(n, rng());
        const auto qs = bench_queries(inst, a.queries, rng);
        BenchRow row{n, delta ? "delta" : "binary", 2, 0, 0, 0, 0};
        const auto start = std::chrono::steady_clock::now();
        auto finish = [&](const auto& idx) {
            row.build_ms =
                std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
            const double nlgn = static_cast<double>(n) * std::log2(static_cast<double>(n));
            row.bits_per_nlgn = n < 2 ? 0 : static_cast<double>(idx.space_report().total.total_bits()) / nlgn;
            time_queries(idx, qs, a.threads, row);
        };
        if (delta) {
            DeltaSegmentIndex::Options opt;
            opt.delta = a.delta;
            opt.backend = parse_backend(a.backend);
            const DeltaSegmentIndex idx(inst, opt);
            row.delta = idx.delta();
            finish(idx);
        } else {
            const SegmentIndex idx(inst);
            finish(idx);
        }
        rows.push_back(row);
    }

    if (a.csv) {
        out << "n,kind,delta,build_ms,bits_per_nlgn,node_visits,query_ns\n";
        for (const auto& r : rows)
            out << r.n << ',' << r.kind << ',' << r.delta << ',' << std::fixed << std::setprecision(3) << r.build_ms
                << ',' << std::setprecision(4) << r.bits_per_nlgn << ',' << std::setprecision(2) << r.node_visits
                << ',' << std::setprecision(1) << r.query_ns << std::defaultfloat << '\n';
        return kExitOk;
    }
    out << std::left << std::setw(10) << "n" << std::setw(8) << "kind" << std::setw(7) << "delta" << std::setw(12)
        << "build_ms" << std::setw(15) << "bits/(n lg n)" << std::setw(13) << "node_visits" << "query_ns\n";
    for (const auto& r : rows)
        out << std::left << std::setw(10) << r.n << std::setw(8) << r.kind << std::setw(7) << r.delta << std::fixed
            << std::setprecision(3) << std::setw(12) << r.build_ms << std::setprecision(4) << std::setw(15)
            << r.bits_per_nlgn << std::setprecision(2) << std::setw(13) << r.node_visits << std::setprecision(1)
            << r.query_ns << std::defaultfloat << '\n';
    return kExitOk;
}

// ---------------------------------------------------------------- info

int cmd_info(const std::string& path, std::ostream& out) {
    const IndexContainer c = IndexContainer::load_file(path);
    out << "kind " << (c.kind() == IndexKind::binary ? "binary" : "delta") << '\n';
    if (const auto* s = std::get_if<SegmentIndex>(&c.index)) out << "height " << s->height() << '\n';
    if (const auto* d = std::get_if<DeltaSegmentIndex>(&c.index))
        out << "delta " << d->delta() << "\nepsilon " << format_double(d->epsilon()) << "\nbackend "
            << to_string(d->backend()) << "\nheight " << d->height() << '\n';
    out << "coordinate_maps " << (c.maps ? "yes" : "no") << '\n';
    out << format_space_report(c.space_report());
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Succinct indexes for horizontal segments in rank space"};
    app.name("segwt");
    app.require_subcommand(1);

    BuildArgs build;
    auto* b = app.add_subcommand("build", "Build an index from a segment file and write a container");
    b->add_option("input", build.input, "Segment file, one 'x_left x_right y' per line")->required();
    b->add_option("-o,--out", build.out, "Container path")->required();
    b->add_option("--kind", build.kind, "binary or delta")->check(CLI::IsMember({"binary", "delta"}));
    b->add_option("--delta", build.delta, "Fan-out of the delta tree (0: from --epsilon)");
    b->add_option("--epsilon", build.epsilon, "Default fan-out is ceil((lg n)^epsilon)")
        ->check(CLI::Range(0.0, 1.0));
    b->add_option("--backend", build.backend, "Slab structure: wavelet or block")
        ->check(CLI::IsMember({"wavelet", "block"}));
    b->add_option("--block-multiplier", build.block_multiplier, "Block table width multiplier")
        ->check(CLI::PositiveNumber);
    b->add_flag("--raw", build.raw, "Input has real coordinates; reduce to rank space");
    b->add_option("--ties", build.ties, "With --raw: strict or deterministic")
        ->check(CLI::IsMember({"strict", "deterministic"}));

    QueryArgs query;
    auto* q = app.add_subcommand("query", "Answer one query against a container");
    q->add_option("container", query.container, "Container path")->required();
    q->add_option("op", query.op, "access, select or rank")
        ->required()
        ->check(CLI::IsMember({"access", "select", "rank"}));
    q->add_option("values", query.values, "access y | select i j | rank i y")->required();
    q->add_flag("--stats", query.stats, "Also print the node-visit count");

    VerifyOptions verify;
    auto* v = app.add_subcommand("verify", "Run the oracle differential suites");
    v->add_option("--exhaustive-n", verify.exhaustive_n, "Check every instance with n up to this");
    v->add_option("--random-trials", verify.random_trials, "Random instances per size");
    v->add_option("--max-n", verify.max_n, "Largest random size");
    v->add_option("--seed", verify.seed, "Seed for the random suite");
    v->add_option("--queries", verify.queries_per_type, "Sampled queries per type and instance");

    BenchArgs bench;
    auto* be = app.add_subcommand("bench", "Time builds and queries on random instances");
    be->add_option("--sizes", bench.sizes, "Comma-separated instance sizes")->delimiter(',');
    be->add_option("--kind", bench.kind, "binary or delta")->check(CLI::IsMember({"binary", "delta"}));
    be->add_option("--delta", bench.delta, "Fan-out; implies --kind delta");
    be->add_option("--backend", bench.backend, "Slab structure: wavelet or block")
        ->check(CLI::IsMember({"wavelet", "block"}));
    be->add_option("--queries-per-size", bench.queries, "Queries per size");
    be->add_option("--seed", bench.seed, "Seed");
    be->add_option("--threads", bench.threads, "Query threads")->check(CLI::PositiveNumber);
    be->add_flag("--csv", bench.csv, "CSV output");

    std::string info_path;
    auto* in = app.add_subcommand("info", "Describe a container");
    in->add_option("container", info_path, "Container path")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    return guarded(err, [&] {
        if (b->parsed()) return cmd_build(build, out);
        if (q->parsed()) return cmd_query(query, out);
        if (v->parsed()) return cmd_verify(verify, out, err);
        if (be->parsed()) return cmd_bench(bench, out);
        return cmd_info(info_path, out);
    });
}

}  // namespace segwt
