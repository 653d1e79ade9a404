#include <doctest.h>

#include <cstdio>
#include <sstream>

#include "aphc/bench.hpp"
#include "aphc/synth.hpp"

using namespace aphc;

namespace {

PacketTrace small_default_trace() {
    TrafficProfile p;
    p.seed = 12;
    return gen_trace(p, 3000);
}

}  // namespace

TEST_SUITE("bench") {

TEST_CASE("null codec reports exactly 1.000 everywhere") {
    const BenchReport report = run_bench(small_default_trace(), {"null"});
    REQUIRE(report.rows.size() == 1);
    const CodecRow& row = report.rows[0];
    CHECK_FALSE(row.skipped);
    CHECK_FALSE(row.failed);
    CHECK(row.in_total == row.out_total);
    for (std::size_t c = 0; c < 4; ++c) {
        REQUIRE(row.categories[c].packets > 0);
        CHECK(row.categories[c].in_bytes == row.categories[c].out_bytes);
        CHECK(*row.category_ratio(c) == 1.0);
    }
    const std::string text = render_report(report);
    CHECK(text.find("1.000") != std::string::npos);
}

TEST_CASE("per-category bytes sum exactly to the totals") {
    const BenchReport report =
        run_bench(small_default_trace(), list_codecs());
    for (const CodecRow& row : report.rows) {
        REQUIRE_FALSE(row.skipped);
        REQUIRE_FALSE(row.failed);
        std::uint64_t in_sum = 0, out_sum = 0, packets = 0;
        for (const CategoryTally& cat : row.categories) {
            in_sum += cat.in_bytes;
            out_sum += cat.out_bytes;
            packets += cat.packets;
        }
        CHECK(in_sum == row.in_total);
        CHECK(out_sum == row.out_total);
        CHECK(packets == report.stats.packet_count);
    }
}

TEST_CASE("aphc compresses the very small category on the default trace") {
    const BenchReport report = run_bench(small_default_trace(), {"aphc"});
    const CodecRow& row = report.rows[0];
    REQUIRE_FALSE(row.failed);
    REQUIRE(row.category_ratio(0).has_value());
    CHECK(*row.category_ratio(0) < 1.0);
    // larger packets compress better, so overall beats the small category
    CHECK(row.overall_ratio() < *row.category_ratio(0));
}

TEST_CASE("a failing codec aborts its row and others proceed") {
    struct Broken final : CodecAdapter {
        std::string name() const override { return "broken"; }
        std::string settings() const override { return "always wrong"; }
        Bytes compress_packet(ByteSpan data) override {
            return Bytes(data.begin(), data.end());
        }
        Bytes decompress_packet(ByteSpan data) override {
            Bytes out(data.begin(), data.end());
            if (!out.empty()) out[0] ^= 0xff;
            return out;
        }
    };

    std::vector<NamedAdapterFactory> codecs;
    codecs.push_back({"broken", true, [] { return std::make_unique<Broken>(); }});
    codecs.push_back({"null", true, [] { return make_adapter("null"); }});
    const BenchReport report = run_bench_with(small_default_trace(), codecs);
    REQUIRE(report.rows.size() == 2);
    CHECK(report.rows[0].failed);
    CHECK(report.rows[0].diagnostic.find("mismatch") != std::string::npos);
    CHECK_FALSE(report.rows[1].failed);
    const std::string text = render_report(report);
    CHECK(text.find("failed") != std::string::npos);
}

TEST_CASE("unavailable codecs render as skipped") {
    std::vector<NamedAdapterFactory> codecs;
    codecs.push_back({"ghost", false, nullptr});
    const BenchReport report = run_bench_with(small_default_trace(), codecs);
    REQUIRE(report.rows.size() == 1);
    CHECK(report.rows[0].skipped);
    for (ReportFormat fmt : {ReportFormat::markdown, ReportFormat::csv}) {
        const std::string text = render_report(report, {fmt, true});
        CHECK(text.find("skipped") != std::string::npos);
    }
}

TEST_CASE("unknown codec names fail up front") {
    CHECK_THROWS_AS(run_bench(small_default_trace(), {"nope"}), ConfigError);
}

TEST_CASE("reports are deterministic modulo throughput") {
    const PacketTrace trace = small_default_trace();
    const RenderOptions golden{ReportFormat::markdown, /*with_throughput=*/false};
    const std::string a = render_report(run_bench(trace, {"null", "aphc"}), golden);
    const std::string b = render_report(run_bench(trace, {"null", "aphc"}), golden);
    CHECK(a == b);
    CHECK(!a.empty());
}

TEST_CASE("csv re-parses to the same numbers") {
    const BenchReport report = run_bench(small_default_trace(), {"null", "aphc"});
    const std::string csv = render_report(report, {ReportFormat::csv, true});

    std::istringstream in(csv);
    std::string line;
    std::vector<std::vector<std::string>> rows;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (line.find("bucket_lo") == 0) break;
        std::vector<std::string> cells;
        std::string cell;
        for (char c : line + ",") {
            if (c == ',') {
                cells.push_back(cell);
                cell.clear();
            } else {
                cell += c;
            }
        }
        rows.push_back(std::move(cells));
    }
    REQUIRE(rows.size() == 3);  // header + 2 codecs
    CHECK(rows[0][0] == "codec");
    REQUIRE(rows[1].size() == 7);
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const CodecRow& row = report.rows[r - 1];
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.3f", row.overall_ratio());
        CHECK(rows[r][1] == buf);
        for (std::size_t c = 0; c < 4; ++c) {
            std::snprintf(buf, sizeof buf, "%.3f", *row.category_ratio(c));
            CHECK(rows[r][2 + c] == buf);
        }
    }
}

TEST_CASE("histogram appears in both formats") {
    const BenchReport report = run_bench(small_default_trace(), {"null"});
    CHECK(render_report(report, {ReportFormat::csv, true}).find("bucket_lo") !=
          std::string::npos);
    CHECK(render_report(report, {ReportFormat::markdown, true})
              .find("histogram") != std::string::npos);
}

}  // TEST_SUITE
