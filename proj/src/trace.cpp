#include "aphc/trace.hpp"

#include <fstream>

namespace aphc {

namespace {

constexpr char kMagic[4] = {'P', 'K', 'T', '1'};
constexpr std::uint8_t kVersion = 0x01;

void put_u32(std::ostream& out, std::uint32_t v) {
    char b[4];
    for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
    out.write(b, 4);
}

std::uint32_t get_u32(std::istream& in, std::uint64_t at, const char* what) {
    char b[4];
    in.read(b, 4);
    if (in.gcount() != 4)
        throw FormatError(std::string("truncated ") + what,
                          at + static_cast<std::uint64_t>(in.gcount()));
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i)
        v |= static_cast<std::uint32_t>(static_cast<std::uint8_t>(b[i])) << (8 * i);
    return v;
}

}  // namespace

void write_trace(const std::filesystem::path& path, const PacketTrace& trace) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open for writing: " + path.string());
    out.write(kMagic, 4);
    out.put(static_cast<char>(kVersion));
    put_u32(out, static_cast<std::uint32_t>(trace.packets.size()));
    for (const Bytes& p : trace.packets) {
        put_u32(out, static_cast<std::uint32_t>(p.size()));
        out.write(reinterpret_cast<const char*>(p.data()),
                  static_cast<std::streamsize>(p.size()));
    }
    if (!out) throw Error("write failed: " + path.string());
}

PacketTrace read_trace(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open for reading: " + path.string());

    char magic[4];
    in.read(magic, 4);
    if (in.gcount() != 4 || std::string_view(magic, 4) != "PKT1")
        throw FormatError("bad trace magic", 0);
    char version;
    if (!in.read(&version, 1) || static_cast<std::uint8_t>(version) != kVersion)
        throw FormatError("unsupported trace version", 4);

    const std::uint32_t count = get_u32(in, 5, "packet count");
    PacketTrace trace;
    trace.packets.reserve(count);
    std::uint64_t offset = 9;
    for (std::uint32_t i = 0; i < count; ++i) {
        const std::uint32_t len = get_u32(in, offset, "packet length");
        offset += 4;
        Bytes payload(len);
        if (len > 0) {
            in.read(reinterpret_cast<char*>(payload.data()), len);
            if (in.gcount() != static_cast<std::streamsize>(len))
                throw FormatError("truncated packet payload",
                                  offset + static_cast<std::uint64_t>(in.gcount()));
        }
        offset += len;
        trace.packets.push_back(std::move(payload));
    }
    char extra;
    if (in.read(&extra, 1))
        throw FormatError("trailing data after last packet", offset);
    return trace;
}

TraceStats trace_stats(const PacketTrace& trace) {
    TraceStats s;
    s.packet_count = trace.packets.size();
    for (const Bytes& p : trace.packets) {
        const std::size_t len = p.size();
        s.total_bytes += len;
        for (std::uint8_t b : p)
            if (b >= 0x20 && b <= 0x7e) ++s.text_bytes;
        const std::size_t bucket = len <= 10 ? 0 : (len - 1) / 10;
        if (s.histogram.size() <= bucket) s.histogram.resize(bucket + 1, 0);
        s.histogram[bucket]++;
        const std::size_t cat = size_category(len);
        s.category_counts[cat]++;
        s.category_bytes[cat] += len;
    }
    return s;
}

double TraceStats::fraction_at_most(std::size_t len) const {
    if (packet_count == 0) return 0.0;
    // Exact only on bucket boundaries; used for the 10/20-byte cut points.
    std::uint64_t n = 0;
    const std::size_t last_bucket = len <= 10 ? 0 : (len - 1) / 10;
    for (std::size_t i = 0; i <= last_bucket && i < histogram.size(); ++i)
        n += histogram[i];
    return static_cast<double>(n) / static_cast<double>(packet_count);
}

}  // namespace aphc
