#pragma once

// Deterministic synthetic game-traffic generator. Mimics the statistical
// shape of a roguelike server stream (a type byte, small binary fields,
// re-sent stat blocks, RLE screen rows, templated chat lines) so the
// benchmark corpus is reproducible from a seed. Packet kinds are invented
// stand-ins, not any real protocol.

#include <filesystem>

#include "aphc/trace.hpp"

namespace aphc {

struct TrafficProfile {
    // Probability weights over the length strata (must sum to 1):
    // tiny <=10, small 11-20, medium 21-100, row 101-1000, bulk >1000.
    double mix_tiny = 0.38;
    double mix_small = 0.46;
    double mix_medium = 0.13;
    double mix_row = 0.028;
    double mix_bulk = 0.002;

    // Target share of textual (printable-ASCII) bytes in the whole trace.
    double text_byte_fraction = 0.11;

    // Probability that a stat field is re-sent unchanged.
    double stat_repeat_prob = 0.9;

    // Number of distinct message templates in use, 1..16.
    std::uint32_t template_pool = 12;

    std::uint64_t seed = 1;

    void validate() const;  // throws ConfigError
    bool operator==(const TrafficProfile&) const = default;
};

// Byte-identical for a given (profile, n_packets).
PacketTrace gen_trace(const TrafficProfile& profile, std::uint64_t n_packets);

std::string describe_profile(const TrafficProfile& profile);

// Flat key=value text form.
std::string format_profile(const TrafficProfile& profile);
TrafficProfile parse_profile(const std::string& text);

void save_profile(const std::filesystem::path& path, const TrafficProfile& profile);
TrafficProfile load_profile(const std::filesystem::path& path);

}  // namespace aphc
