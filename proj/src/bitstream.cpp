#include "aphc/bitstream.hpp"

#include <cassert>

namespace aphc {

void BitWriter::write_bits(std::uint32_t value, unsigned n) {
    if (n > 32) throw std::invalid_argument("write_bits: width > 32");
    if (n < 32 && (value >> n) != 0)
        throw std::invalid_argument("write_bits: value does not fit in width");
    while (n > 0) {
        unsigned used = static_cast<unsigned>(bit_pos_ & 7);
        if (used == 0) buf_.push_back(0);
        unsigned room = 8 - used;
        unsigned take = n < room ? n : room;
        unsigned shift = n - take;
        auto chunk = static_cast<std::uint8_t>((value >> shift) & ((1u << take) - 1u));
        buf_.back() |= static_cast<std::uint8_t>(chunk << (room - take));
        bit_pos_ += take;
        n -= take;
    }
}

void BitWriter::align_to_byte() {
    bit_pos_ = (bit_pos_ + 7) & ~7ull;
    // buf_ already holds the zero pad: partial bytes are zero-filled on push.
}

Bytes BitWriter::take() {
    assert(bit_pos_ % 8 == 0);
    bit_pos_ = 0;
    return std::move(buf_);
}

std::uint32_t BitReader::read_bits(unsigned n) {
    if (n > 32) throw std::invalid_argument("read_bits: width > 32");
    if (bits_remaining() < n)
        throw TruncationError("read_bits: input exhausted");
    std::uint32_t out = 0;
    unsigned left = n;
    while (left > 0) {
        unsigned used = static_cast<unsigned>(bit_pos_ & 7);
        unsigned avail = 8 - used;
        unsigned take = left < avail ? left : avail;
        std::uint8_t byte = data_[static_cast<std::size_t>(bit_pos_ >> 3)];
        auto chunk = static_cast<std::uint32_t>((byte >> (avail - take)) & ((1u << take) - 1u));
        out = (out << take) | chunk;
        bit_pos_ += take;
        left -= take;
    }
    return out;
}

}  // namespace aphc
