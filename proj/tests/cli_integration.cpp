// End-to-end CLI checks, driven through the real binary. argv[1] is the
// path to the `aphc` executable. Exits nonzero on the first failure.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <unistd.h>

#include "aphc/trace.hpp"

namespace fs = std::filesystem;

namespace {

std::string g_cli;
fs::path g_dir;
int g_failures = 0;

void expect(bool ok, const std::string& what) {
    std::printf("[%s] %s\n", ok ? "PASS" : "FAIL", what.c_str());
    if (!ok) ++g_failures;
}

int run(const std::string& args, std::string* output = nullptr) {
    const fs::path out_file = g_dir / "cmd_output.txt";
    const std::string cmd =
        g_cli + " " + args + " > " + out_file.string() + " 2>&1";
    const int rc = std::system(cmd.c_str());
    if (output) {
        std::ifstream in(out_file);
        std::ostringstream buf;
        buf << in.rdbuf();
        *output = buf.str();
    }
    return WEXITSTATUS(rc);
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: cli_integration <path-to-aphc>\n";
        return 2;
    }
    g_cli = argv[1];
    g_dir = fs::temp_directory_path() / ("aphc_cli_" + std::to_string(::getpid()));
    fs::create_directories(g_dir);

    const std::string trace = (g_dir / "t.pkt1").string();
    const std::string packed = (g_dir / "t.aphc").string();
    const std::string restored = (g_dir / "back.pkt1").string();
    const std::string report = (g_dir / "report.csv").string();

    std::string out;

    expect(run("gen --out " + trace + " --packets 6000 --seed 1", &out) == 0,
           "gen exits 0");
    expect(fs::exists(trace), "gen wrote the trace file");

    expect(run("stats " + trace, &out) == 0, "stats exits 0");
    expect(out.find("packets:") != std::string::npos &&
               out.find("6000") != std::string::npos,
           "stats prints the packet count");
    {
        // the <=20-byte fraction should print near 84%
        const std::size_t at = out.find("len <= 20:");
        bool near84 = false;
        if (at != std::string::npos) {
            const double pct = std::strtod(out.c_str() + at + 10, nullptr);
            near84 = pct > 81.0 && pct < 87.0;
        }
        expect(near84, "stats prints a 20-byte fraction near 84%");
    }

    expect(run("compress " + trace + " --out " + packed, &out) == 0,
           "compress exits 0");
    expect(run("decompress " + packed + " --out " + restored, &out) == 0,
           "decompress exits 0");
    {
        const aphc::PacketTrace a = aphc::read_trace(trace);
        const aphc::PacketTrace b = aphc::read_trace(restored);
        expect(a.packets == b.packets, "compress/decompress round-trips the trace");
    }

    // decompress needs no codec flags: config is echoed in the container
    expect(run("compress " + trace + " --out " + packed +
                   " --block-size 1024 --max-blocks 2 --min-match 4",
               &out) == 0,
           "compress with non-default codec flags exits 0");
    expect(run("decompress " + packed + " --out " + restored, &out) == 0,
           "decompress recovers the config from the container");
    {
        const aphc::PacketTrace a = aphc::read_trace(trace);
        const aphc::PacketTrace b = aphc::read_trace(restored);
        expect(a.packets == b.packets, "non-default config round-trips too");
    }

    expect(run("bench " + trace + " --format csv --out " + report, &out) == 0,
           "bench exits 0");
    {
        std::ifstream in(report);
        std::ostringstream buf;
        buf << in.rdbuf();
        const std::string text = buf.str();
        expect(text.find("codec,overall,very_small") != std::string::npos,
               "bench csv has the documented header");
        expect(text.find("aphc") != std::string::npos, "bench ran the aphc codec");
    }

    expect(run("bench " + trace + " --codecs null,aphc --format md", &out) == 0,
           "bench with an explicit codec list exits 0");
    expect(out.find("| null |") != std::string::npos, "markdown table rendered");

    expect(run("selftest", &out) == 0, "selftest exits 0");
    expect(out.find("[PASS]") != std::string::npos, "selftest prints pass lines");

    // error paths and exit codes
    expect(run("bogus-subcommand", &out) == 2, "unknown subcommand exits 2");
    expect(run("gen --out " + trace + " --bogus-flag 1", &out) == 2,
           "unknown flag exits 2");
    expect(run("bench " + trace + " --codecs nosuchcodec", &out) == 2,
           "unknown codec exits 2");
    expect(run("stats " + (g_dir / "missing.pkt1").string(), &out) == 1,
           "missing trace file exits 1");
    expect(run("compress " + trace + " --out " + packed + " --min-match 1",
               &out) == 2,
           "invalid codec config exits 2");
    {
        const std::string junk = (g_dir / "junk.aphc").string();
        std::ofstream j(junk, std::ios::binary);
        j << "not a container";
        j.close();
        expect(run("decompress " + junk + " --out " + restored, &out) == 1,
               "bad container magic exits 1");
    }

    expect(run("--help", &out) == 0, "--help exits 0");
    expect(out.find("gen") != std::string::npos &&
               out.find("bench") != std::string::npos,
           "help lists the subcommands");
    expect(run("bench --help", &out) == 0, "subcommand help exits 0");
    {
        bool all = true;
        for (const char* needle :
             {"--block-size", "8192", "--max-blocks", "--ledger-size", "4096",
              "--rebuild-cap", "512", "--min-match", "--max-match", "258",
              "--codecs", "--format", "--level"})
            all = all && out.find(needle) != std::string::npos;
        expect(all, "help lists every flag with its default");
    }

    // determinism across runs: same seed, same file bytes
    const std::string trace2 = (g_dir / "t2.pkt1").string();
    expect(run("gen --out " + trace2 + " --packets 6000 --seed 1", &out) == 0,
           "second gen exits 0");
    {
        std::ifstream a(trace, std::ios::binary), b(trace2, std::ios::binary);
        std::ostringstream sa, sb;
        sa << a.rdbuf();
        sb << b.rdbuf();
        expect(sa.str() == sb.str(), "same seed gives byte-identical traces");
    }

    fs::remove_all(g_dir);
    if (g_failures == 0) std::printf("all cli checks passed\n");
    return g_failures == 0 ? 0 : 1;
}
