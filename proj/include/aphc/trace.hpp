#pragma once

// Packet-trace corpus format and summary statistics. PKT1 files hold
// length-delimited packets: magic "PKT1", version byte 0x01, u32 LE packet
// count, then per packet a u32 LE length and the payload.

#include <array>
#include <filesystem>

#include "aphc/common.hpp"

namespace aphc {

struct PacketTrace {
    std::vector<Bytes> packets;

    std::uint64_t total_bytes() const {
        std::uint64_t n = 0;
        for (const Bytes& p : packets) n += p.size();
        return n;
    }
};

// Packet-size classes used throughout the benchmark: very small (0-10),
// small (11-100), medium (101-1000), large (>1000).
inline constexpr std::array<const char*, 4> kCategoryNames = {
    "very_small", "small", "medium", "large"};

inline std::size_t size_category(std::size_t packet_len) {
    if (packet_len <= 10) return 0;
    if (packet_len <= 100) return 1;
    if (packet_len <= 1000) return 2;
    return 3;
}

struct TraceStats {
    std::uint64_t packet_count = 0;
    std::uint64_t total_bytes = 0;
    // Printable-ASCII bytes (0x20..0x7E), the toolkit's text measure.
    std::uint64_t text_bytes = 0;
    // Bucket 0 covers lengths 0-10, bucket i>=1 covers 10i+1 .. 10(i+1).
    std::vector<std::uint64_t> histogram;
    std::array<std::uint64_t, 4> category_counts{};
    std::array<std::uint64_t, 4> category_bytes{};

    double fraction_at_most(std::size_t len) const;
};

void write_trace(const std::filesystem::path& path, const PacketTrace& trace);
PacketTrace read_trace(const std::filesystem::path& path);

TraceStats trace_stats(const PacketTrace& trace);

}  // namespace aphc
