#pragma once

// The three canonical Huffman tables (positions + control symbols, lengths,
// literals), the bounded recent-tuple ledger they are rebuilt from, and the
// doubling rebuild schedule. Table construction is deterministic so encoder
// and decoder arrive at bit-identical codes from identical ledgers.

#include <array>
#include <deque>

#include "aphc/bitstream.hpp"
#include "aphc/tuple.hpp"

namespace aphc {

// Symbol index layout. Position table: buckets 0..P-1, then END_OF_BLOCK,
// REBUILD, LITERAL_ONLY. Length table: buckets over (length - min_match).
// Literal table: bytes 0..255 plus NO_LITERAL.
class Alphabets {
public:
    static Alphabets from_config(const CodecConfig& cfg) {
        Alphabets a;
        a.pos_buckets_ = bucket_count_for(cfg.window_capacity());
        a.len_buckets_ = bucket_count_for(cfg.max_match - cfg.min_match + 1);
        return a;
    }

    std::uint32_t position_buckets() const { return pos_buckets_; }
    std::uint32_t length_buckets() const { return len_buckets_; }
    std::uint32_t position_alphabet_size() const { return pos_buckets_ + 3; }
    std::uint32_t length_alphabet_size() const { return len_buckets_; }

    std::uint32_t end_of_block() const { return pos_buckets_; }
    std::uint32_t rebuild() const { return pos_buckets_ + 1; }
    std::uint32_t literal_only() const { return pos_buckets_ + 2; }

    static constexpr std::uint32_t literal_alphabet_size = 257;
    static constexpr std::uint32_t no_literal = 256;

private:
    std::uint32_t pos_buckets_ = 0;
    std::uint32_t len_buckets_ = 0;
};

// A complete canonical prefix code over one alphabet. Every symbol has a
// code (all frequencies carry the baseline weight), so Kraft's sum is
// exactly 1 and any bit sequence decodes to some symbol.
class CodeTable {
public:
    CodeTable() = default;

    // Huffman lengths from the frequencies (all must be >= 1), tie-broken by
    // (weight, smallest contained symbol), then canonical codes from the
    // length profile. Aborts via Error if a length would exceed 32.
    static CodeTable build(std::span<const std::uint64_t> freqs);

    unsigned length(std::uint32_t sym) const { return len_[sym]; }
    std::uint32_t code_bits(std::uint32_t sym) const { return code_[sym]; }
    std::size_t alphabet_size() const { return len_.size(); }
    const std::vector<std::uint8_t>& code_lengths() const { return len_; }

    void encode(std::uint32_t sym, BitWriter& w) const {
        w.write_bits(code_[sym], len_[sym]);
    }
    std::uint32_t decode(BitReader& r) const;

    // Sum of 2^(32 - len) over all symbols; 1<<32 means Kraft equality.
    std::uint64_t kraft_sum_q32() const;

    std::uint64_t hash() const;

private:
    std::vector<std::uint8_t> len_;
    std::vector<std::uint32_t> code_;
    unsigned max_len_ = 0;
    // Canonical decode tables, indexed by code length.
    std::array<std::uint32_t, 33> first_code_{};
    std::array<std::uint32_t, 33> group_count_{};
    std::array<std::uint32_t, 33> group_offset_{};
    std::vector<std::uint32_t> ordered_syms_;

    void finish_from_lengths();
};

struct CodeTableSet {
    CodeTable positions;
    CodeTable lengths;
    CodeTable literals;

    std::uint64_t hash() const;
};

// Bounded FIFO of recent coding events: parse tuples plus the control
// symbols recorded when they are emitted. tuples_seen counts real tuples
// only and drives the rebuild schedule.
class Ledger {
public:
    struct Entry {
        enum class Kind : std::uint8_t { match, literal_only, special };
        Kind kind;
        std::uint32_t position = 0;
        std::uint32_t length = 0;
        std::int32_t literal = -1;  // -1 = absent
        std::uint32_t special = 0;  // position-table symbol index

        bool operator==(const Entry&) const = default;
    };

    explicit Ledger(std::uint32_t capacity) : capacity_(capacity) {}

    void push_tuple(const Tuple& t);
    void push_special(std::uint32_t position_symbol);

    std::uint64_t tuples_seen() const { return tuples_seen_; }
    const std::deque<Entry>& entries() const { return ring_; }
    std::uint32_t capacity() const { return capacity_; }

private:
    void push(Entry e);

    std::deque<Entry> ring_;
    std::uint32_t capacity_;
    std::uint64_t tuples_seen_ = 0;
};

// Rebuild fire points are absolute tuple counts 2, 4, 8, ... up to the cap,
// then every cap tuples: the gap doubles until it reaches the cap.
class RebuildSchedule {
public:
    explicit RebuildSchedule(std::uint64_t cap)
        : cap_(cap), interval_(2), next_rebuild_at_(2) {}

    bool due(std::uint64_t tuples_seen) const { return tuples_seen == next_rebuild_at_; }

    void advance() {
        next_rebuild_at_ += interval_;
        interval_ = std::min(interval_ * 2, cap_);
    }

    std::uint64_t next_rebuild_at() const { return next_rebuild_at_; }
    std::uint64_t interval() const { return interval_; }
    std::uint64_t cap() const { return cap_; }

private:
    std::uint64_t cap_;
    std::uint64_t interval_;
    std::uint64_t next_rebuild_at_;
};

// Frequencies are 1 (baseline, keeps every table complete) plus the symbol's
// occurrences among the ledger entries. min_match anchors length bucketing.
CodeTableSet build_tables(const Ledger& ledger, const Alphabets& alphabets,
                          std::uint32_t min_match);

// Process-wide instrumentation: how many tables were built and how many of
// them failed Kraft equality (always verified at build time).
std::uint64_t tables_built_count();
std::uint64_t kraft_violation_count();

}  // namespace aphc
