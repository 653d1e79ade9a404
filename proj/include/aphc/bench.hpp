#pragma once

// Benchmark harness: runs codecs over a trace with per-packet flushing,
// verifies every packet against a lockstep decompressor, attributes output
// bytes to the packet-size categories, and renders tables.

#include <functional>

#include "aphc/baselines.hpp"
#include "aphc/trace.hpp"

namespace aphc {

struct CategoryTally {
    std::uint64_t packets = 0;
    std::uint64_t in_bytes = 0;
    std::uint64_t out_bytes = 0;
};

struct CodecRow {
    std::string name;
    std::string settings;
    bool skipped = false;   // codec not available in this build
    bool failed = false;    // round-trip verification mismatch
    std::string diagnostic;
    std::array<CategoryTally, 4> categories{};
    std::uint64_t in_total = 0;
    std::uint64_t out_total = 0;
    double packets_per_sec = 0.0;

    double overall_ratio() const {
        return in_total == 0 ? 0.0
                             : static_cast<double>(out_total) /
                                   static_cast<double>(in_total);
    }
    // Empty when the category saw no input bytes.
    std::optional<double> category_ratio(std::size_t i) const {
        if (categories[i].in_bytes == 0) return std::nullopt;
        return static_cast<double>(categories[i].out_bytes) /
               static_cast<double>(categories[i].in_bytes);
    }
};

struct BenchReport {
    std::vector<CodecRow> rows;
    TraceStats stats;
    std::vector<std::string> notes;
};

struct NamedAdapterFactory {
    std::string name;
    bool available = true;
    std::function<std::unique_ptr<CodecAdapter>()> make;
};

// Resolves names through make_adapter. A known-but-unavailable codec yields
// a skipped row; an unknown name throws.
BenchReport run_bench(const PacketTrace& trace,
                      const std::vector<std::string>& codec_names,
                      const AdapterOptions& opts = {});

// Injection point (tests, custom codecs).
BenchReport run_bench_with(const PacketTrace& trace,
                           const std::vector<NamedAdapterFactory>& codecs);

enum class ReportFormat { csv, markdown };

struct RenderOptions {
    ReportFormat format = ReportFormat::markdown;
    // Throughput is wall-clock and excluded from golden comparisons.
    bool with_throughput = true;
};

std::string render_report(const BenchReport& report, const RenderOptions& opts = {});

}  // namespace aphc
