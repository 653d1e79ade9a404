#include "aphc/synth.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace aphc {

namespace {

// Packet type bytes sit outside the printable range so the text share is
// carried by actual message text.
constexpr std::uint8_t kTypeStats = 0x0a;
constexpr std::uint8_t kTypeMessage = 0x11;
constexpr std::uint8_t kTypeItems = 0x12;
constexpr std::uint8_t kTypeRow = 0x81;
constexpr std::uint8_t kTypeMap = 0x82;

constexpr std::array<const char*, 16> kTemplates = {
    "You hit the %M for %N damage.",
    "The %M hits you for %N damage.",
    "You feel much better now, %P.",
    "Welcome to level %N, %P the brave!",
    "The %M dies with a horrible shriek.",
    "You have found %N gold pieces.",
    "Your torch has %N turns of light left.",
    "The %M misses you narrowly.",
    "You step on a trap! You take %N damage.",
    "The %M casts a spell at you.",
    "You pick up a scroll labelled %P.",
    "Your wand has %N charges remaining.",
    "The %M flees in terror from you.",
    "You drink from the fountain. You feel refreshed.",
    "A magical gate opens %N paces to the east.",
    "The %M shouts a warning to its allies.",
};

constexpr std::array<const char*, 8> kMonsters = {
    "kobold", "cave orc", "giant rat", "skeleton",
    "cave spider", "goblin archer", "dire wolf", "plague zombie",
};

constexpr std::array<const char*, 4> kNames = {"Aldor", "Brynn", "Cedra", "Dorn"};

class Generator {
public:
    Generator(const TrafficProfile& p, std::uint64_t n) : p_(p), rng_(p.seed) {
        trace_.packets.reserve(n);
        stats_.fill(7);
        for (auto& m : last_move_) m.clear();
    }

    PacketTrace run(std::uint64_t n) {
        for (std::uint64_t i = 0; i < n; ++i) emit(make_packet());
        return std::move(trace_);
    }

private:
    Bytes make_packet() {
        const double roll =
            static_cast<double>(rng_.next() >> 11) / 9007199254740992.0;
        double acc = p_.mix_tiny;
        if (roll < acc) return movement_packet();
        acc += p_.mix_small;
        if (roll < acc) return stats_packet();
        acc += p_.mix_medium;
        if (roll < acc) return medium_packet();
        acc += p_.mix_row;
        if (roll < acc) return row_packet();
        return map_packet();
    }

    // tiny stratum: movement and similar 3..10 byte updates. Entities tend
    // to keep moving the same way, so payloads repeat verbatim.
    Bytes movement_packet() {
        const std::uint32_t entity = rng_.range_u32(0, 7);
        Bytes& prev = last_move_[entity];
        if (!prev.empty() && rng_.chance(0.5)) return prev;

        const std::uint32_t len = rng_.range_u32(3, 10);
        Bytes p;
        p.reserve(len);
        p.push_back(static_cast<std::uint8_t>(1 + rng_.range_u32(0, 5)));
        p.push_back(static_cast<std::uint8_t>(1 + entity));
        static constexpr std::uint8_t deltas[7] = {0, 1, 2, 3, 0xff, 0xfe, 0xfd};
        while (p.size() < len) p.push_back(deltas[rng_.below(7)]);
        prev = p;
        return p;
    }

    // small stratum: the stat block, re-sent mostly unchanged.
    Bytes stats_packet() {
        for (auto& v : stats_) {
            if (!rng_.chance(p_.stat_repeat_prob)) {
                const std::int32_t d = static_cast<std::int32_t>(rng_.range_u32(0, 4)) - 2;
                v = static_cast<std::uint8_t>(std::clamp<std::int32_t>(v + d, 0, 31));
            }
        }
        const std::uint32_t len = rng_.range_u32(11, 20);
        Bytes p;
        p.reserve(len);
        p.push_back(kTypeStats);
        for (std::uint32_t i = 0; i + 1 < len; ++i) p.push_back(stats_[i]);
        return p;
    }

    // medium stratum: a chat line or an item list. Text is chosen whenever
    // the running printable share sits below the profile target, which
    // steers the whole trace onto text_byte_fraction.
    Bytes medium_packet() {
        const bool text =
            static_cast<double>(printable_emitted_) <
            p_.text_byte_fraction * static_cast<double>(total_emitted_ + 1);
        return text ? message_packet() : items_packet();
    }

    Bytes message_packet() {
        std::string msg = kTemplates[rng_.below(p_.template_pool)];
        expand(msg, "%M", kMonsters[rng_.below(kMonsters.size())]);
        expand(msg, "%N", std::to_string(1 + rng_.below(999)));
        expand(msg, "%P", kNames[rng_.below(kNames.size())]);
        while (msg.size() < 20) msg += " You feel lucky.";
        if (msg.size() > 99) msg.resize(99);
        Bytes p;
        p.reserve(msg.size() + 1);
        p.push_back(kTypeMessage);
        p.insert(p.end(), msg.begin(), msg.end());
        return p;
    }

    Bytes items_packet() {
        const std::uint32_t records = rng_.range_u32(5, 24);
        Bytes p;
        p.reserve(1 + 4 * records);
        p.push_back(kTypeItems);
        for (std::uint32_t i = 0; i < records; ++i) {
            p.push_back(static_cast<std::uint8_t>(rng_.range_u32(0, 15)));  // item id
            p.push_back(static_cast<std::uint8_t>(rng_.range_u32(0, 7)));   // flags
            p.push_back(static_cast<std::uint8_t>(rng_.range_u32(0, 31)));  // weight lo
            p.push_back(0);                                                 // weight hi
        }
        return p;
    }

    // row stratum: RLE screen rows, usually re-sent from the row cache with
    // a byte or two touched.
    Bytes row_packet() {
        const std::uint32_t row = rng_.range_u32(0, 23);
        Bytes& cached = rows_[row];
        if (!cached.empty() && rng_.chance(0.6)) {
            Bytes p = cached;
            const std::uint32_t touches = rng_.range_u32(1, 2);
            for (std::uint32_t i = 0; i < touches; ++i) {
                const std::size_t at = 2 + rng_.below(p.size() - 2);
                p[at] = rle_byte(static_cast<std::uint32_t>((at - 2) % 3));
            }
            cached = p;
            return p;
        }
        const std::uint32_t target = rng_.range_u32(101, 600);
        Bytes p;
        p.reserve(target);
        p.push_back(kTypeRow);
        p.push_back(static_cast<std::uint8_t>(row));
        std::uint32_t slot = 0;
        while (p.size() < target) p.push_back(rle_byte(slot++ % 3));
        cached = p;
        return p;
    }

    std::uint8_t rle_byte(std::uint32_t slot) {
        switch (slot) {
            case 0: return static_cast<std::uint8_t>(rng_.range_u32(1, 30));     // run count
            case 1: return static_cast<std::uint8_t>(rng_.range_u32(0, 15));     // attribute
            default: return static_cast<std::uint8_t>(rng_.range_u32(0x80, 0xbf));  // glyph
        }
    }

    // bulk stratum: a whole map chunk as long tile runs.
    Bytes map_packet() {
        if (!map_cache_.empty() && rng_.chance(0.5)) {
            Bytes p = map_cache_;
            for (std::uint32_t i = 0; i < 8; ++i)
                p[3 + rng_.below(p.size() - 3)] =
                    static_cast<std::uint8_t>(rng_.range_u32(0x80, 0x85));
            map_cache_ = p;
            return p;
        }
        const std::uint32_t target = rng_.range_u32(1001, 4500);
        Bytes p;
        p.reserve(target);
        p.push_back(kTypeMap);
        p.push_back(static_cast<std::uint8_t>(rng_.range_u32(0, 15)));  // chunk x
        p.push_back(static_cast<std::uint8_t>(rng_.range_u32(0, 15)));  // chunk y
        while (p.size() + 2 <= target) {
            p.push_back(static_cast<std::uint8_t>(rng_.range_u32(1, 60)));      // run
            p.push_back(static_cast<std::uint8_t>(rng_.range_u32(0x80, 0x85)));  // tile
        }
        map_cache_ = p;
        return p;
    }

    static void expand(std::string& s, std::string_view slot, const std::string& value) {
        for (std::size_t at = s.find(slot); at != std::string::npos; at = s.find(slot))
            s.replace(at, slot.size(), value);
    }

    void emit(Bytes p) {
        total_emitted_ += p.size();
        for (std::uint8_t b : p)
            if (b >= 0x20 && b <= 0x7e) ++printable_emitted_;
        trace_.packets.push_back(std::move(p));
    }

    const TrafficProfile& p_;
    SplitMix64 rng_;
    PacketTrace trace_;
    std::array<std::uint8_t, 19> stats_{};
    std::array<Bytes, 8> last_move_;
    std::array<Bytes, 24> rows_;
    Bytes map_cache_;
    std::uint64_t total_emitted_ = 0;
    std::uint64_t printable_emitted_ = 0;
};

double parse_double(const std::string& v, const std::string& key) {
    try {
        std::size_t used = 0;
        const double d = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ConfigError("profile: bad value for " + key + ": " + v);
    }
}

std::uint64_t parse_u64(const std::string& v, const std::string& key) {
    try {
        std::size_t used = 0;
        const std::uint64_t n = std::stoull(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return n;
    } catch (const std::exception&) {
        throw ConfigError("profile: bad value for " + key + ": " + v);
    }
}

std::string fmt_double(double d) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", d);
    return buf;
}

}  // namespace

void TrafficProfile::validate() const {
    const double weights[] = {mix_tiny, mix_small, mix_medium, mix_row, mix_bulk};
    double sum = 0;
    for (double w : weights) {
        if (w < 0.0 || w > 1.0)
            throw ConfigError("profile: size_mix weights must lie in [0,1]");
        sum += w;
    }
    if (std::fabs(sum - 1.0) > 1e-9)
        throw ConfigError("profile: size_mix weights must sum to 1");
    if (text_byte_fraction < 0.0 || text_byte_fraction > 1.0)
        throw ConfigError("profile: text_byte_fraction must lie in [0,1]");
    if (stat_repeat_prob < 0.0 || stat_repeat_prob > 1.0)
        throw ConfigError("profile: stat_repeat_prob must lie in [0,1]");
    if (template_pool < 1 || template_pool > kTemplates.size())
        throw ConfigError("profile: template_pool must lie in [1,16]");
}

PacketTrace gen_trace(const TrafficProfile& profile, std::uint64_t n_packets) {
    profile.validate();
    Generator g(profile, n_packets);
    return g.run(n_packets);
}

std::string describe_profile(const TrafficProfile& p) {
    p.validate();
    std::ostringstream out;
    out << "traffic profile (seed " << p.seed << ")\n"
        << "  size mix: tiny<=10 " << p.mix_tiny << ", small 11-20 " << p.mix_small
        << ", medium 21-100 " << p.mix_medium << ", row 101-1000 " << p.mix_row
        << ", bulk >1000 " << p.mix_bulk << "\n"
        << "  targets: P(len<=10) = " << p.mix_tiny
        << ", P(len<=20) = " << p.mix_tiny + p.mix_small
        << ", text bytes = " << p.text_byte_fraction << "\n"
        << "  redundancy: stat_repeat_prob " << p.stat_repeat_prob
        << ", template_pool " << p.template_pool << "\n";
    return out.str();
}

std::string format_profile(const TrafficProfile& p) {
    std::ostringstream out;
    out << "mix_tiny=" << fmt_double(p.mix_tiny) << "\n"
        << "mix_small=" << fmt_double(p.mix_small) << "\n"
        << "mix_medium=" << fmt_double(p.mix_medium) << "\n"
        << "mix_row=" << fmt_double(p.mix_row) << "\n"
        << "mix_bulk=" << fmt_double(p.mix_bulk) << "\n"
        << "text_byte_fraction=" << fmt_double(p.text_byte_fraction) << "\n"
        << "stat_repeat_prob=" << fmt_double(p.stat_repeat_prob) << "\n"
        << "template_pool=" << p.template_pool << "\n"
        << "seed=" << p.seed << "\n";
    return out.str();
}

TrafficProfile parse_profile(const std::string& text) {
    TrafficProfile p;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("profile: line " + std::to_string(line_no) +
                              " is not key=value");
        const std::string key = line.substr(0, eq);
        const std::string value = line.substr(eq + 1);
        if (key == "mix_tiny") p.mix_tiny = parse_double(value, key);
        else if (key == "mix_small") p.mix_small = parse_double(value, key);
        else if (key == "mix_medium") p.mix_medium = parse_double(value, key);
        else if (key == "mix_row") p.mix_row = parse_double(value, key);
        else if (key == "mix_bulk") p.mix_bulk = parse_double(value, key);
        else if (key == "text_byte_fraction") p.text_byte_fraction = parse_double(value, key);
        else if (key == "stat_repeat_prob") p.stat_repeat_prob = parse_double(value, key);
        else if (key == "template_pool")
            p.template_pool = static_cast<std::uint32_t>(parse_u64(value, key));
        else if (key == "seed") p.seed = parse_u64(value, key);
        else throw ConfigError("profile: unknown key " + key);
    }
    p.validate();
    return p;
}

void save_profile(const std::filesystem::path& path, const TrafficProfile& p) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw Error("cannot open for writing: " + path.string());
    out << format_profile(p);
}

TrafficProfile load_profile(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open for reading: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_profile(buf.str());
}

}  // namespace aphc
