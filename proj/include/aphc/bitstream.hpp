#pragma once

// Bit-granular serialization shared by the encoder and decoder. Bits are
// packed MSB-first within each byte; alignment pads with zero bits.

#include "aphc/common.hpp"

namespace aphc {

class BitWriter {
public:
    // Appends the low n bits of value, most significant first. n <= 32 and
    // value < 2^n, otherwise std::invalid_argument.
    void write_bits(std::uint32_t value, unsigned n);

    // Pads with zero bits to the next byte boundary. Idempotent.
    void align_to_byte();

    std::uint64_t bit_position() const { return bit_pos_; }
    const Bytes& bytes() const { return buf_; }

    // Moves the buffer out. Caller must have aligned first.
    Bytes take();

private:
    Bytes buf_;
    std::uint64_t bit_pos_ = 0;
};

class BitReader {
public:
    explicit BitReader(ByteSpan data) : data_(data) {}

    // Reads n bits MSB-first. Throws TruncationError when fewer remain.
    std::uint32_t read_bits(unsigned n);

    std::uint64_t bit_position() const { return bit_pos_; }
    std::uint64_t bits_remaining() const { return 8 * data_.size() - bit_pos_; }

private:
    ByteSpan data_;
    std::uint64_t bit_pos_ = 0;
};

}  // namespace aphc
