#pragma once

// Encoder/decoder state machines: greedy LZ77 parse against the shared
// window, tuple coding through the adaptive tables, block framing with
// END_OF_BLOCK and zero padding, and exact state mirroring on decode.
//
// Wire layout of one block: a sequence of coded tuples, then END_OF_BLOCK,
// then zero bits to the next byte boundary. A match tuple is
//   position-bucket symbol, position extra bits,
//   length-bucket symbol (over length - min_match), length extra bits,
//   literal symbol (possibly NO_LITERAL).
// A literal-only tuple is LITERAL_ONLY followed by a literal symbol. When
// the rebuild schedule fires, REBUILD is coded with the tables still in
// force, then all three tables are rebuilt from the ledger.

#include <iosfwd>

#include "aphc/huffman.hpp"
#include "aphc/window.hpp"

namespace aphc {

namespace detail {

// State shared bit-for-bit between the two ends.
struct CodecState {
    CodecState(const CodecConfig& cfg, Window::Mode mode);

    CodecConfig cfg;
    Alphabets alphabets;
    Window window;
    Ledger ledger;
    RebuildSchedule schedule;
    CodeTableSet tables;
    std::uint64_t packets_processed = 0;
    // tuple counts at which REBUILD fired (instrumentation, not hashed)
    std::vector<std::uint64_t> rebuild_points;

    void rebuild_tables() { tables = build_tables(ledger, alphabets, cfg.min_match); }
    std::uint64_t hash() const;
};

}  // namespace detail

class Encoder {
public:
    explicit Encoder(const CodecConfig& cfg = {});

    // Greedy left-to-right parse of `data` against the current window. Does
    // not update any state.
    std::vector<Tuple> parse_packet(ByteSpan data) const;

    // One standalone whole-byte block; encoder state persists across
    // packets. Throws OversizeError beyond cfg.max_packet_bytes.
    Bytes encode_packet(ByteSpan data);

    std::uint64_t state_hash() const { return st_.hash(); }
    const CodecConfig& config() const { return st_.cfg; }
    std::uint64_t packets_processed() const { return st_.packets_processed; }
    std::uint64_t tuples_seen() const { return st_.ledger.tuples_seen(); }
    const std::vector<std::uint64_t>& rebuild_points() const {
        return st_.rebuild_points;
    }

private:
    detail::CodecState st_;
};

class Decoder {
public:
    explicit Decoder(const CodecConfig& cfg = {});

    // Decodes exactly one block; trailing bytes raise CorruptionError.
    Bytes decode_packet(ByteSpan block);

    // Decodes one block from the front of `stream` and reports how many
    // bytes it consumed, so concatenated blocks decode transparently.
    Bytes decode_packet(ByteSpan stream, std::size_t& consumed);

    std::uint64_t state_hash() const { return st_.hash(); }
    const CodecConfig& config() const { return st_.cfg; }
    std::uint64_t packets_processed() const { return st_.packets_processed; }
    const std::vector<std::uint64_t>& rebuild_points() const {
        return st_.rebuild_points;
    }

private:
    detail::CodecState st_;
};

// Stream container: magic "APHC", version byte 0x01, a 12-byte config echo
// (block_size u32, max_blocks u16, ledger_size u16, rebuild_cap u16,
// min_match u8, max_match-3 u8), then length-prefixed blocks (u32 LE
// compressed length + block bytes). All integers little-endian.
namespace container {

void write_header(std::ostream& out, const CodecConfig& cfg);
CodecConfig read_header(std::istream& in);
void write_block(std::ostream& out, ByteSpan block);
// False at clean end-of-file; FormatError on a truncated record.
bool read_block(std::istream& in, Bytes& out);

}  // namespace container

}  // namespace aphc
