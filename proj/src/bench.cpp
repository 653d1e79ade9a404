#include "aphc/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <sstream>

namespace aphc {

namespace {

std::string fixed3(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

std::string ratio_cell(const CodecRow& row, std::optional<double> ratio) {
    if (row.skipped) return "skipped";
    if (row.failed) return "failed";
    if (!ratio) return "-";
    return fixed3(*ratio);
}

void run_one(const PacketTrace& trace, const NamedAdapterFactory& factory,
             CodecRow& row) {
    std::unique_ptr<CodecAdapter> adapter;
    try {
        adapter = factory.make();
        row.settings = adapter->settings();
    } catch (const Error& e) {
        row.failed = true;
        row.diagnostic = e.what();
        return;
    }

    const auto t0 = std::chrono::steady_clock::now();
    std::size_t index = 0;
    try {
        for (const Bytes& packet : trace.packets) {
            const Bytes compressed = adapter->compress_packet(as_span(packet));
            const Bytes restored = adapter->decompress_packet(as_span(compressed));
            if (restored != packet)
                throw Error("round-trip mismatch on packet " + std::to_string(index));
            CategoryTally& cat = row.categories[size_category(packet.size())];
            cat.packets++;
            cat.in_bytes += packet.size();
            cat.out_bytes += compressed.size();
            row.in_total += packet.size();
            row.out_total += compressed.size();
            ++index;
        }
    } catch (const Error& e) {
        row.failed = true;
        row.diagnostic = e.what();
        return;
    }
    const auto t1 = std::chrono::steady_clock::now();
    const double secs = std::chrono::duration<double>(t1 - t0).count();
    row.packets_per_sec =
        secs > 0.0 ? static_cast<double>(trace.packets.size()) / secs : 0.0;
}

}  // namespace

BenchReport run_bench_with(const PacketTrace& trace,
                           const std::vector<NamedAdapterFactory>& codecs) {
    BenchReport report;
    report.stats = trace_stats(trace);
    report.notes.push_back(
        "ratio = compressed bytes / original bytes; all emitted bytes counted, "
        "including first-packet stream overhead");
    report.notes.push_back(
        "every row is verified by a lockstep decompressor before ratios are "
        "reported");

    for (const NamedAdapterFactory& factory : codecs) {
        CodecRow row;
        row.name = factory.name;
        if (!factory.available) {
            row.skipped = true;
            row.diagnostic = "codec not available in this build";
            report.rows.push_back(std::move(row));
            continue;
        }
        run_one(trace, factory, row);
        report.rows.push_back(std::move(row));
    }
    return report;
}

BenchReport run_bench(const PacketTrace& trace,
                      const std::vector<std::string>& codec_names,
                      const AdapterOptions& opts) {
    const std::vector<std::string> known = known_codecs();
    std::vector<NamedAdapterFactory> factories;
    for (const std::string& name : codec_names) {
        if (std::find(known.begin(), known.end(), name) == known.end())
            make_adapter(name, opts);  // throws with the available set
        NamedAdapterFactory f;
        f.name = name;
        f.available = codec_available(name);
        f.make = [name, opts] { return make_adapter(name, opts); };
        factories.push_back(std::move(f));
    }
    return run_bench_with(trace, factories);
}

std::string render_report(const BenchReport& report, const RenderOptions& opts) {
    std::ostringstream out;
    const bool csv = opts.format == ReportFormat::csv;

    for (const std::string& note : report.notes) out << "# " << note << "\n";
    for (const CodecRow& row : report.rows)
        if (!row.settings.empty())
            out << "# " << row.name << ": " << row.settings << "\n";
        else if (!row.diagnostic.empty())
            out << "# " << row.name << ": " << row.diagnostic << "\n";

    const char* headers[] = {"codec", "overall", "very_small", "small",
                             "medium", "large", "throughput_pps"};
    const int ncols = opts.with_throughput ? 7 : 6;

    if (csv) {
        for (int i = 0; i < ncols; ++i) out << (i ? "," : "") << headers[i];
        out << "\n";
        for (const CodecRow& row : report.rows) {
            out << row.name << ","
                << (row.skipped ? "skipped" : row.failed ? "failed"
                                                         : fixed3(row.overall_ratio()));
            for (std::size_t c = 0; c < 4; ++c)
                out << "," << ratio_cell(row, row.category_ratio(c));
            if (opts.with_throughput)
                out << ","
                    << (row.skipped || row.failed ? "-" : fixed3(row.packets_per_sec));
            out << "\n";
        }
        out << "\n";
        out << "bucket_lo,bucket_hi,packets\n";
        for (std::size_t i = 0; i < report.stats.histogram.size(); ++i)
            out << (i == 0 ? 0 : 10 * i + 1) << "," << 10 * (i + 1) << ","
                << report.stats.histogram[i] << "\n";
        return out.str();
    }

    out << "\n| ";
    for (int i = 0; i < ncols; ++i) out << headers[i] << " | ";
    out << "\n|";
    for (int i = 0; i < ncols; ++i) out << " --- |";
    out << "\n";
    for (const CodecRow& row : report.rows) {
        out << "| " << row.name << " | "
            << (row.skipped ? "skipped" : row.failed ? "failed"
                                                     : fixed3(row.overall_ratio()))
            << " | ";
        for (std::size_t c = 0; c < 4; ++c)
            out << ratio_cell(row, row.category_ratio(c)) << " | ";
        if (opts.with_throughput)
            out << (row.skipped || row.failed ? "-" : fixed3(row.packets_per_sec))
                << " | ";
        out << "\n";
    }

    out << "\npacket length histogram (" << report.stats.packet_count
        << " packets, " << report.stats.total_bytes << " bytes):\n\n";
    out << "| lengths | packets |\n| --- | --- |\n";
    for (std::size_t i = 0; i < report.stats.histogram.size(); ++i)
        out << "| " << (i == 0 ? 0 : 10 * i + 1) << "-" << 10 * (i + 1) << " | "
            << report.stats.histogram[i] << " |\n";
    return out.str();
}

}  // namespace aphc
