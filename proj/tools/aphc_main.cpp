// Command-line front end: generate traces, inspect stats, compress and
// decompress trace files, run the benchmark, and run the built-in oracle
// selftest. Exit codes: 0 success, 1 verification/format failure, 2 usage.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "aphc/bench.hpp"
#include "aphc/codec.hpp"
#include "aphc/selftest.hpp"
#include "aphc/synth.hpp"

namespace {

using namespace aphc;

void add_codec_flags(CLI::App* cmd, CodecConfig& cfg) {
    cmd->add_option("--block-size", cfg.block_size, "Window block size in bytes")
        ->capture_default_str();
    cmd->add_option("--max-blocks", cfg.max_blocks, "Live blocks in the window")
        ->capture_default_str();
    cmd->add_option("--ledger-size", cfg.ledger_size, "Recent-tuple ledger capacity")
        ->capture_default_str();
    cmd->add_option("--rebuild-cap", cfg.rebuild_cap,
                    "Maximum interval between table rebuilds, in tuples")
        ->capture_default_str();
    cmd->add_option("--min-match", cfg.min_match, "Minimum match length")
        ->capture_default_str();
    cmd->add_option("--max-match", cfg.max_match, "Maximum match length")
        ->capture_default_str();
}

void print_stats(const TraceStats& s) {
    std::cout << "packets:      " << s.packet_count << "\n";
    std::cout << "total bytes:  " << s.total_bytes << "\n";
    if (s.packet_count > 0)
        std::cout << "mean length:  "
                  << static_cast<double>(s.total_bytes) /
                         static_cast<double>(s.packet_count)
                  << "\n";
    if (s.total_bytes > 0)
        std::cout << "text bytes:   " << s.text_bytes << " ("
                  << 100.0 * static_cast<double>(s.text_bytes) /
                         static_cast<double>(s.total_bytes)
                  << "% printable)\n";
    std::cout << "len <= 10:    " << 100.0 * s.fraction_at_most(10) << "%\n";
    std::cout << "len <= 20:    " << 100.0 * s.fraction_at_most(20) << "%\n";
    std::cout << "\ncategories (count / bytes):\n";
    static const char* ranges[4] = {"0-10", "11-100", "101-1000", ">1000"};
    for (std::size_t c = 0; c < 4; ++c)
        std::cout << "  " << kCategoryNames[c] << " (" << ranges[c] << "): "
                  << s.category_counts[c] << " / " << s.category_bytes[c] << "\n";
    std::cout << "\nhistogram (10-byte buckets):\n";
    for (std::size_t i = 0; i < s.histogram.size(); ++i)
        if (s.histogram[i] > 0)
            std::cout << "  " << (i == 0 ? 0 : 10 * i + 1) << "-" << 10 * (i + 1)
                      << ": " << s.histogram[i] << "\n";
}

int run(int argc, char** argv) {
    CLI::App app{"aphc: packet-stream compression toolkit"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "Generate a synthetic packet trace");
    std::string gen_out;
    std::uint64_t gen_packets = 32000;
    std::uint64_t gen_seed = 1;
    std::string gen_profile;
    gen->add_option("--out", gen_out, "Output trace file (PKT1)")->required();
    gen->add_option("--packets", gen_packets, "Number of packets")
        ->capture_default_str();
    gen->add_option("--seed", gen_seed, "PRNG seed")->capture_default_str();
    gen->add_option("--profile", gen_profile, "Traffic profile file (key=value)");

    // stats
    auto* stats = app.add_subcommand("stats", "Summarize a packet trace");
    std::string stats_in;
    stats->add_option("trace", stats_in, "Trace file (PKT1)")->required();

    // compress
    auto* compress = app.add_subcommand("compress", "Compress a trace per packet");
    std::string comp_in, comp_out;
    CodecConfig comp_cfg;
    compress->add_option("trace", comp_in, "Input trace file (PKT1)")->required();
    compress->add_option("--out", comp_out, "Output compressed file (APHC)")
        ->required();
    add_codec_flags(compress, comp_cfg);

    // decompress
    auto* decompress = app.add_subcommand("decompress", "Decompress an APHC file");
    std::string dec_in, dec_out;
    decompress->add_option("file", dec_in, "Input compressed file (APHC)")
        ->required();
    decompress->add_option("--out", dec_out, "Output trace file (PKT1)")->required();

    // bench
    auto* bench = app.add_subcommand("bench", "Benchmark codecs over a trace");
    std::string bench_in, bench_codecs, bench_format = "md", bench_out;
    std::optional<int> bench_level;
    CodecConfig bench_cfg;
    bench->add_option("trace", bench_in, "Trace file (PKT1)")->required();
    bench->add_option("--codecs", bench_codecs,
                      "Comma-separated codec list (default: all known)");
    bench->add_option("--format", bench_format, "Report format: csv or md")
        ->capture_default_str();
    bench->add_option("--out", bench_out, "Write report to file (default stdout)");
    bench->add_option("--level", bench_level,
                      "Override the external codecs' level (defaults: zlib 9, lzma 3)");
    add_codec_flags(bench, bench_cfg);

    // selftest
    auto* selftest = app.add_subcommand("selftest", "Run the built-in oracle suites");
    (void)selftest;

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;  // help exits 0, any parse error is usage
    }

    try {
        if (gen->parsed()) {
            TrafficProfile profile;
            if (!gen_profile.empty()) profile = load_profile(gen_profile);
            if (gen->count("--seed") > 0 || gen_profile.empty())
                profile.seed = gen_seed;
            const PacketTrace trace = gen_trace(profile, gen_packets);
            write_trace(gen_out, trace);
            std::cout << "wrote " << trace.packets.size() << " packets, "
                      << trace.total_bytes() << " bytes to " << gen_out << "\n";
            return 0;
        }
        if (stats->parsed()) {
            print_stats(trace_stats(read_trace(stats_in)));
            return 0;
        }
        if (compress->parsed()) {
            const PacketTrace trace = read_trace(comp_in);
            std::ofstream out(comp_out, std::ios::binary | std::ios::trunc);
            if (!out) throw Error("cannot open for writing: " + comp_out);
            container::write_header(out, comp_cfg);
            Encoder enc(comp_cfg);
            std::uint64_t in_bytes = 0, out_bytes = 0;
            for (const Bytes& p : trace.packets) {
                const Bytes block = enc.encode_packet(as_span(p));
                container::write_block(out, as_span(block));
                in_bytes += p.size();
                out_bytes += 4 + block.size();
            }
            if (!out) throw Error("write failed: " + comp_out);
            std::cout << "compressed " << trace.packets.size() << " packets: "
                      << in_bytes << " -> " << out_bytes << " payload bytes";
            if (in_bytes > 0)
                std::cout << " (ratio "
                          << static_cast<double>(out_bytes) /
                                 static_cast<double>(in_bytes)
                          << ")";
            std::cout << "\n";
            return 0;
        }
        if (decompress->parsed()) {
            std::ifstream in(dec_in, std::ios::binary);
            if (!in) throw Error("cannot open for reading: " + dec_in);
            const CodecConfig cfg = container::read_header(in);
            Decoder dec(cfg);
            PacketTrace trace;
            Bytes block;
            while (container::read_block(in, block))
                trace.packets.push_back(dec.decode_packet(as_span(block)));
            write_trace(dec_out, trace);
            std::cout << "decompressed " << trace.packets.size() << " packets to "
                      << dec_out << "\n";
            return 0;
        }
        if (bench->parsed()) {
            if (bench_format != "csv" && bench_format != "md")
                throw ConfigError("--format must be csv or md");
            std::vector<std::string> names;
            if (bench_codecs.empty()) {
                names = known_codecs();
            } else {
                std::string cur;
                for (char c : bench_codecs + ",") {
                    if (c == ',') {
                        if (!cur.empty()) names.push_back(cur);
                        cur.clear();
                    } else {
                        cur += c;
                    }
                }
            }
            AdapterOptions opts;
            opts.codec = bench_cfg;
            opts.level = bench_level;
            const BenchReport report = run_bench(read_trace(bench_in), names, opts);
            RenderOptions render;
            render.format =
                bench_format == "csv" ? ReportFormat::csv : ReportFormat::markdown;
            const std::string text = render_report(report, render);
            if (bench_out.empty()) {
                std::cout << text;
            } else {
                std::ofstream out(bench_out, std::ios::trunc);
                if (!out) throw Error("cannot open for writing: " + bench_out);
                out << text;
            }
            for (const CodecRow& row : report.rows)
                if (row.failed) {
                    std::cerr << "bench: " << row.name << " failed: "
                              << row.diagnostic << "\n";
                    return 1;
                }
            return 0;
        }
        if (selftest->parsed())
            return aphc::selftest::run_all(std::cout) ? 0 : 1;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
