// ccmerge command-line front end: merge, validate, gen, bench, info.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <malloc.h>
#include <new>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ccmerge/congruence.hpp"
#include "ccmerge/generate.hpp"
#include "ccmerge/io.hpp"
#include "ccmerge/validation.hpp"

// ---------------------------------------------------------------------------
// Allocation accounting for `bench`: global new/delete with live/peak byte
// counters. Alignment-extended overloads fall through to the default
// operators and simply go uncounted.

namespace {
std::atomic<long long> g_live_bytes{0};
std::atomic<long long> g_peak_bytes{0};

void count_alloc(void* p) {
    const long long sz = static_cast<long long>(malloc_usable_size(p));
    const long long live = g_live_bytes.fetch_add(sz) + sz;
    long long peak = g_peak_bytes.load(std::memory_order_relaxed);
    while (live > peak && !g_peak_bytes.compare_exchange_weak(peak, live)) {
    }
}

void count_free(void* p) {
    if (p) g_live_bytes.fetch_sub(static_cast<long long>(malloc_usable_size(p)));
}
}  // namespace

void* operator new(std::size_t size) {
    void* p = std::malloc(size ? size : 1);
    if (!p) throw std::bad_alloc();
    count_alloc(p);
    return p;
}

void operator delete(void* p) noexcept {
    count_free(p);
    std::free(p);
}

void operator delete(void* p, std::size_t) noexcept { operator delete(p); }

namespace {

using namespace ccm;

struct RunConfig {
    double epsilon = 1e-6;
    std::string engine = "sparse";
    bool no_self_check = false;
    unsigned threads = 1;

    MergeOptions merge_options() const {
        MergeOptions opts;
        opts.tolerance = Tolerance(epsilon);
        opts.engine = parse_engine(engine);
        opts.self_check = !no_self_check;
        opts.threads = threads;
        return opts;
    }

    static Engine parse_engine(const std::string& name) {
        if (name == "aa") return Engine::aa;
        if (name == "sparse") return Engine::sparse;
        throw SchemaError("PARAM_INVALID: engine must be aa or sparse, got " + name);
    }
};

void add_run_flags(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--epsilon", cfg.epsilon, "Clustering tolerance in model units")
        ->capture_default_str();
    cmd->add_option("--engine", cfg.engine, "Congruence engine: aa or sparse")
        ->check(CLI::IsMember({"aa", "sparse"}))
        ->capture_default_str();
    cmd->add_flag("--no-self-check", cfg.no_self_check,
                  "Skip the [d1][d0] = 0 check after a sparse merge");
    cmd->add_option("--threads", cfg.threads, "Worker thread hint (output is independent of it)")
        ->capture_default_str();
}

int cmd_merge(const std::string& input, const std::string& output, const RunConfig& cfg) {
    const AccumulatorComplex acc = load_complex(input);
    const QuotientComplex q = chain_congruence(acc, cfg.merge_options());
    save_quotient(q, output);
    std::cout << "merged " << acc.vertices.npoints() << "/" << acc.delta0.nrows() << "/"
              << acc.delta1.nrows() << " local cells into " << q.vertices.npoints() << "/"
              << q.ev.size() << "/" << q.fe.size() << " classes -> " << output << "\n";
    return 0;
}

int cmd_validate(const std::string& input, std::string report_path) {
    const QuotientComplex q = load_quotient(input);
    const ValidationReport report = validate_quotient(q);
    if (report_path.empty()) report_path = input + ".report.json";
    save_report(report, report_path);

    std::cout << "counts: " << report.counts[0] << "/" << report.counts[1] << "/"
              << report.counts[2] << ", euler " << report.euler_value << "\n";
    std::cout << "dd_zero: "
              << (report.dd_zero ? (*report.dd_zero ? "true" : "false") : "skipped")
              << ", partitions_ok: " << (report.partitions_ok ? "true" : "false") << "\n";
    for (const auto& v : report.violations) std::cout << "violation: " << v << "\n";
    std::cout << "report -> " << report_path << "\n";
    return report.passed() ? 0 : 1;
}

GenSpec::Kind parse_kind(const std::string& kind) {
    if (kind == "cube") return GenSpec::Kind::cube;
    if (kind == "grid") return GenSpec::Kind::grid;
    throw SchemaError("PARAM_INVALID: kind must be cube or grid, got " + kind);
}

bool parse_grid_triple(const std::string& text, int out[3]) {
    int consumed = 0;
    if (std::sscanf(text.c_str(), "%dx%dx%d%n", &out[0], &out[1], &out[2], &consumed) == 3 &&
        consumed == static_cast<int>(text.size())) {
        return true;
    }
    if (std::sscanf(text.c_str(), "%d%n", &out[0], &consumed) == 1 &&
        consumed == static_cast<int>(text.size())) {
        out[1] = out[2] = out[0];
        return true;
    }
    return false;
}

int cmd_gen(const std::string& kind, const std::string& grid, double jitter, std::uint64_t seed,
            double epsilon, const std::string& output) {
    GenSpec spec;
    spec.kind = parse_kind(kind);
    spec.jitter = jitter;
    spec.seed = seed;
    spec.epsilon = epsilon;
    if (spec.kind == GenSpec::Kind::grid) {
        int dims[3];
        if (!parse_grid_triple(grid, dims)) {
            throw SchemaError("PARAM_INVALID: --grid expects PxQxR or a single size, got " + grid);
        }
        spec.p = dims[0];
        spec.q = dims[1];
        spec.r = dims[2];
    }
    const AccumulatorComplex acc = generate_exploded(spec);
    save_complex(acc, output);
    std::cout << "generated " << acc.vertices.npoints() << " vertex instances, "
              << acc.delta0.nrows() << " edges, " << acc.delta1.nrows() << " faces -> " << output
              << "\n";
    return 0;
}

int cmd_info(const std::string& input) {
    const std::string text = [&] {
        std::ifstream in(input, std::ios::binary);
        if (!in) throw SchemaError("IO_ERROR: cannot read " + input);
        std::ostringstream buf;
        buf << in.rdbuf();
        return buf.str();
    }();
    // Quotient files carry cell arrays; accumulator files do not.
    if (text.find("ccmerge/quotient/") != std::string::npos) {
        const QuotientComplex q = quotient_from_json(text);
        const index_t counts[3] = {q.vertices.npoints(), q.ev.size(), q.fe.size()};
        std::cout << "quotient complex: " << counts[0] << " vertices, " << counts[1] << " edges, "
                  << counts[2] << " faces\n";
        std::cout << "euler: " << euler_characteristic(counts) << "\n";
        std::cout << "operators: " << (q.delta0 ? "delta0/delta1 present" : "absent") << "\n";
        std::cout << "dropped: " << q.dropped_edges.size() << " edges, " << q.dropped_faces.size()
                  << " faces\n";
    } else {
        const AccumulatorComplex acc = complex_from_json(text);
        std::cout << "accumulator complex: " << acc.vertices.npoints() << " vertex instances, "
                  << acc.delta0.nrows() << " local edges, " << acc.delta1.nrows()
                  << " local faces\n";
        std::cout << "delta0 nnz: " << acc.delta0.nnz() << ", delta1 nnz: " << acc.delta1.nnz()
                  << "\n";
    }
    return 0;
}

// ---------------------------------------------------------------------------
// Benchmark: methodology comparison of the two engines on generated grids.

struct BenchRow {
    int size;
    std::string engine;
    double min_ms, median_ms, mean_ms;
    long long peak_alloc_bytes;
};

template <typename Fn>
BenchRow time_engine(int size, const std::string& engine, int reps, Fn&& run) {
    std::vector<double> times;
    times.reserve(static_cast<std::size_t>(reps));
    long long peak_alloc = 0;
    for (int i = 0; i < reps; ++i) {
        g_peak_bytes.store(g_live_bytes.load());
        const long long base = g_live_bytes.load();
        const auto start = std::chrono::steady_clock::now();
        run();
        const auto stop = std::chrono::steady_clock::now();
        times.push_back(std::chrono::duration<double, std::milli>(stop - start).count());
        peak_alloc = std::max(peak_alloc, g_peak_bytes.load() - base);
    }
    std::sort(times.begin(), times.end());
    double mean = 0.0;
    for (double t : times) mean += t;
    mean /= static_cast<double>(times.size());
    return {size, engine, times.front(), times[times.size() / 2], mean, peak_alloc};
}

int cmd_bench(const std::vector<int>& sizes, int reps, const RunConfig& cfg,
              const std::string& output) {
    if (reps < 1) {
        throw SchemaError("PARAM_INVALID: --reps must be >= 1");
    }
    std::vector<BenchRow> rows;
    for (int size : sizes) {
        GenSpec spec;
        spec.kind = GenSpec::Kind::grid;
        spec.p = spec.q = spec.r = size;
        spec.seed = static_cast<std::uint64_t>(size);
        spec.epsilon = cfg.epsilon;
        const AccumulatorComplex acc = generate_exploded(spec);

        MergeOptions aa = cfg.merge_options();
        aa.engine = Engine::aa;
        MergeOptions sparse = cfg.merge_options();
        sparse.engine = Engine::sparse;

        // Warm both engines once and require agreement before timing.
        const QuotientComplex qa = chain_congruence(acc, aa);
        const QuotientComplex qs = chain_congruence(acc, sparse);
        if (qa.ev != qs.ev || qa.fe != qs.fe ||
            qa.vclasses.classes != qs.vclasses.classes ||
            qa.eclasses.partition.classes != qs.eclasses.partition.classes ||
            qa.fclasses.partition.classes != qs.fclasses.partition.classes) {
            throw InternalError("ENGINE_DISAGREEMENT: aa and sparse outputs differ on grid " +
                                std::to_string(size));
        }
        rows.push_back(time_engine(size, "aa", reps, [&] { (void)chain_congruence(acc, aa); }));
        rows.push_back(
            time_engine(size, "sparse", reps, [&] { (void)chain_congruence(acc, sparse); }));
    }

    std::printf("%-6s %-8s %10s %10s %10s %14s\n", "grid", "engine", "min ms", "median", "mean",
                "peak alloc B");
    for (const BenchRow& r : rows) {
        std::printf("%-6d %-8s %10.3f %10.3f %10.3f %14lld\n", r.size, r.engine.c_str(), r.min_ms,
                    r.median_ms, r.mean_ms, r.peak_alloc_bytes);
    }
    for (std::size_t i = 0; i + 1 < rows.size(); i += 2) {
        std::printf("grid %d: sparse/aa mean ratio %.2fx\n", rows[i].size,
                    rows[i + 1].mean_ms / rows[i].mean_ms);
    }

    std::string json = "{\n  \"agreement\": true,\n  \"reps\": " + std::to_string(reps) +
                       ",\n  \"rows\": [\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const BenchRow& r = rows[i];
        char buf[256];
        std::snprintf(buf, sizeof buf,
                      "    {\"engine\": \"%s\", \"grid\": %d, \"mean_ms\": %.6f, "
                      "\"median_ms\": %.6f, \"min_ms\": %.6f, \"peak_alloc_bytes\": %lld}%s\n",
                      r.engine.c_str(), r.size, r.mean_ms, r.median_ms, r.min_ms,
                      r.peak_alloc_bytes, i + 1 < rows.size() ? "," : "");
        json += buf;
    }
    json += "  ]\n}\n";
    std::ofstream out(output, std::ios::binary | std::ios::trunc);
    out << json;
    if (!out.flush()) {
        throw SchemaError("IO_ERROR: cannot write " + output);
    }
    std::cout << "bench table -> " << output << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Merge local chain complexes into one global complex via epsilon-congruence"};
    app.require_subcommand(1);

    RunConfig cfg;

    auto* merge = app.add_subcommand("merge", "Merge an accumulator complex file");
    std::string merge_in, merge_out = "quotient.json";
    merge->add_option("input", merge_in, "Accumulator complex JSON")->required();
    merge->add_option("-o,--output", merge_out, "Quotient output path")->capture_default_str();
    add_run_flags(merge, cfg);

    auto* validate = app.add_subcommand("validate", "Validate a quotient complex file");
    std::string val_in, val_out;
    validate->add_option("input", val_in, "Quotient complex JSON")->required();
    validate->add_option("-o,--output", val_out, "Report output path (default <input>.report.json)");

    auto* gen = app.add_subcommand("gen", "Generate a synthetic accumulator fixture");
    std::string gen_kind, gen_grid = "1x1x1", gen_out = "complex.json";
    double gen_jitter = 0.0, gen_epsilon = 1e-6;
    std::uint64_t gen_seed = 0;
    gen->add_option("kind", gen_kind, "Fixture kind: cube or grid")->required();
    gen->add_option("--grid", gen_grid, "Grid sizes PxQxR (grid kind)")->capture_default_str();
    gen->add_option("--jitter", gen_jitter, "Per-instance jitter magnitude, < epsilon/2")
        ->capture_default_str();
    gen->add_option("--seed", gen_seed, "Rigid-motion and jitter seed")->capture_default_str();
    gen->add_option("--epsilon", gen_epsilon, "Tolerance the fixture targets")
        ->capture_default_str();
    gen->add_option("-o,--output", gen_out, "Complex output path")->capture_default_str();

    auto* bench = app.add_subcommand("bench", "Compare both engines on generated grids");
    std::vector<int> bench_sizes;
    int bench_reps = 5;
    std::string bench_out = "bench.json";
    bench->add_option("--grid", bench_sizes, "Grid size n (n x n x n); repeatable")->required();
    bench->add_option("--reps", bench_reps, "Timed repetitions per engine")->capture_default_str();
    bench->add_option("-o,--output", bench_out, "JSON table output path")->capture_default_str();
    add_run_flags(bench, cfg);

    auto* info = app.add_subcommand("info", "Print a summary of a complex or quotient file");
    std::string info_in;
    info->add_option("input", info_in, "JSON file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    try {
        if (*merge) return cmd_merge(merge_in, merge_out, cfg);
        if (*validate) return cmd_validate(val_in, val_out);
        if (*gen) return cmd_gen(gen_kind, gen_grid, gen_jitter, gen_seed, gen_epsilon, gen_out);
        if (*bench) return cmd_bench(bench_sizes, bench_reps, cfg, bench_out);
        if (*info) return cmd_info(info_in);
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const SchemaError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const InternalError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: INTERNAL: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
