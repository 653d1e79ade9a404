#pragma once

// LZ77 parse tuples, the value-bucket scheme used on the wire for positions
// and lengths, and the codec configuration.

#include <optional>

#include "aphc/common.hpp"

namespace aphc {

// One parse element. A match carries a window position (bytes from the start
// of the earliest live block) and a length, plus the literal that follows;
// the literal is absent only when the match ends exactly at the packet
// boundary. A literal-only tuple has length 0 and no position.
struct Tuple {
    std::optional<std::uint32_t> position;
    std::uint32_t length = 0;
    std::optional<std::uint8_t> literal;

    static Tuple literal_only(std::uint8_t b) {
        Tuple t;
        t.literal = b;
        return t;
    }
    static Tuple match(std::uint32_t pos, std::uint32_t len,
                       std::optional<std::uint8_t> lit) {
        Tuple t;
        t.position = pos;
        t.length = len;
        t.literal = lit;
        return t;
    }

    bool is_match() const { return length > 0; }
    bool operator==(const Tuple&) const = default;
};

// Bucketing for non-negative values: buckets 0..3 hold the exact values
// 0..3; bucket b >= 4 spans [ (2 + b%2) << e, ... ) with e = b/2 - 1 extra
// bits. Value on the wire = bucket symbol + e extra bits of (value - base).
unsigned value_bucket(std::uint32_t v);
std::uint32_t bucket_base(unsigned b);
unsigned bucket_extra_bits(unsigned b);

// Number of buckets needed to cover [0, capacity), capacity >= 1.
unsigned bucket_count_for(std::uint32_t capacity);

struct CodecConfig {
    std::uint32_t block_size = 8192;
    std::uint32_t max_blocks = 4;
    std::uint32_t ledger_size = 4096;
    std::uint32_t rebuild_cap = 512;
    std::uint32_t min_match = 3;
    std::uint32_t max_match = 258;
    std::uint32_t max_packet_bytes = 1u << 20;

    std::uint32_t window_capacity() const { return block_size * max_blocks; }

    // Throws ConfigError when any bound is violated.
    void validate() const;

    bool operator==(const CodecConfig&) const = default;
};

}  // namespace aphc
