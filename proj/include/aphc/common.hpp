#pragma once

// Shared byte aliases, error types, and the small deterministic
// hash/PRNG utilities used across the toolkit.

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace aphc {

using Bytes = std::vector<std::uint8_t>;
using ByteSpan = std::span<const std::uint8_t>;

inline ByteSpan as_span(const Bytes& b) { return ByteSpan(b.data(), b.size()); }

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

// Reading past the end of a bit buffer.
class TruncationError : public Error {
public:
    using Error::Error;
};

// Undecodable compressed block. Carries the bit offset where decoding failed.
class CorruptionError : public Error {
public:
    CorruptionError(const std::string& msg, std::uint64_t bit_offset)
        : Error(msg + " (bit offset " + std::to_string(bit_offset) +
                ", byte offset " + std::to_string(bit_offset / 8) + ")"),
          bit_offset_(bit_offset) {}
    std::uint64_t bit_offset() const { return bit_offset_; }
    std::uint64_t byte_offset() const { return bit_offset_ / 8; }

private:
    std::uint64_t bit_offset_;
};

// Malformed trace or container file. Carries the file offset of the problem.
class FormatError : public Error {
public:
    FormatError(const std::string& msg, std::uint64_t offset)
        : Error(msg + " (file offset " + std::to_string(offset) + ")"),
          offset_(offset) {}
    std::uint64_t offset() const { return offset_; }

private:
    std::uint64_t offset_;
};

// Failure reported by an external compression library.
class AdapterError : public Error {
public:
    AdapterError(const std::string& msg, int code)
        : Error(msg + " (library code " + std::to_string(code) + ")"), code_(code) {}
    int code() const { return code_; }

private:
    int code_;
};

class OversizeError : public Error {
public:
    using Error::Error;
};

// FNV-1a, 64-bit. Used for state digests and golden-table comparisons.
class Fnv64 {
public:
    void update(ByteSpan data) {
        for (std::uint8_t b : data) step(b);
    }
    void update_u8(std::uint8_t v) { step(v); }
    void update_u32(std::uint32_t v) {
        for (int i = 0; i < 4; ++i) step(static_cast<std::uint8_t>(v >> (8 * i)));
    }
    void update_u64(std::uint64_t v) {
        for (int i = 0; i < 8; ++i) step(static_cast<std::uint8_t>(v >> (8 * i)));
    }
    std::uint64_t digest() const { return h_; }

private:
    void step(std::uint8_t b) {
        h_ ^= b;
        h_ *= 0x100000001b3ull;
    }
    std::uint64_t h_ = 0xcbf29ce484222325ull;
};

// splitmix64: 64-bit state advanced by the golden-gamma constant, output
// mixed by two xor-shift-multiply rounds. Fully specified here so traces
// regenerate identically everywhere.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, bound). Modulo reduction: bias is irrelevant at the
    // trace-statistics scale and keeps the generator trivially portable.
    std::uint64_t below(std::uint64_t bound) { return next() % bound; }

    std::uint32_t range_u32(std::uint32_t lo, std::uint32_t hi) {
        return lo + static_cast<std::uint32_t>(below(hi - lo + 1ull));
    }

    // True with probability p. p is mapped onto a 53-bit integer threshold
    // so the comparison is exact.
    bool chance(double p) {
        if (p <= 0.0) return false;
        if (p >= 1.0) return true;
        auto threshold = static_cast<std::uint64_t>(p * 9007199254740992.0);
        return (next() >> 11) < threshold;
    }

private:
    std::uint64_t state_;
};

}  // namespace aphc
