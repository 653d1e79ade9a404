#include "aphc/tuple.hpp"

#include <bit>

namespace aphc {

unsigned value_bucket(std::uint32_t v) {
    if (v < 4) return v;
    unsigned m = 31u - static_cast<unsigned>(std::countl_zero(v));
    std::uint32_t half = 3u << (m - 1);  // midpoint 3 * 2^(m-1)
    return v < half ? 2 * m : 2 * m + 1;
}

std::uint32_t bucket_base(unsigned b) {
    if (b < 4) return b;
    unsigned e = b / 2 - 1;
    return static_cast<std::uint32_t>(2 + (b & 1)) << e;
}

unsigned bucket_extra_bits(unsigned b) { return b < 4 ? 0 : b / 2 - 1; }

unsigned bucket_count_for(std::uint32_t capacity) {
    if (capacity == 0) throw ConfigError("bucket_count_for: capacity must be >= 1");
    return value_bucket(capacity - 1) + 1;
}

void CodecConfig::validate() const {
    if (block_size == 0) throw ConfigError("block_size must be >= 1");
    if (max_blocks == 0) throw ConfigError("max_blocks must be >= 1");
    if (max_blocks > 0xffff) throw ConfigError("max_blocks must fit 16 bits");
    std::uint64_t capacity = static_cast<std::uint64_t>(block_size) * max_blocks;
    if (capacity > (1ull << 24))
        throw ConfigError("window capacity block_size*max_blocks must be <= 2^24");
    if (ledger_size == 0 || ledger_size > 0xffff)
        throw ConfigError("ledger_size must be in [1, 65535]");
    if (rebuild_cap == 0 || rebuild_cap > 0xffff)
        throw ConfigError("rebuild_cap must be in [1, 65535]");
    if (min_match < 2) throw ConfigError("min_match must be >= 2");
    if (min_match > 255) throw ConfigError("min_match must fit 8 bits");
    if (max_match < min_match) throw ConfigError("max_match must be >= min_match");
    // Container echoes max_match as one byte holding max_match - 3.
    if (max_match < 3 || max_match > 258)
        throw ConfigError("max_match must be in [3, 258]");
    if (max_packet_bytes == 0) throw ConfigError("max_packet_bytes must be >= 1");
}

}  // namespace aphc
