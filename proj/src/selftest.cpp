#include "aphc/selftest.hpp"

#include <algorithm>
#include <ostream>
#include <set>

#include "aphc/codec.hpp"
#include "aphc/synth.hpp"

namespace aphc::selftest {

namespace {

// Brute-force longest match of a prefix of `pattern` inside `hay`.
std::pair<std::uint32_t, std::uint32_t> naive_longest_match(ByteSpan hay,
                                                            ByteSpan pattern,
                                                            std::uint32_t limit) {
    std::uint32_t best_len = 0, best_off = 0;
    for (std::size_t start = 0; start < hay.size(); ++start) {
        std::uint32_t len = 0;
        while (len < limit && start + len < hay.size() && len < pattern.size() &&
               hay[start + len] == pattern[len])
            ++len;
        if (len > best_len) {
            best_len = len;
            best_off = static_cast<std::uint32_t>(start);
        }
    }
    return {best_off, best_len};
}

// Optimal expected code length via package-merge (limit 32), independent of
// the heap-based builder.
std::uint64_t package_merge_cost(const std::vector<std::uint64_t>& freqs) {
    struct Item {
        std::uint64_t w;
        std::vector<std::uint32_t> syms;
    };
    const std::size_t n = freqs.size();
    std::vector<Item> singles;
    for (std::size_t s = 0; s < n; ++s)
        singles.push_back({freqs[s], {static_cast<std::uint32_t>(s)}});
    std::stable_sort(singles.begin(), singles.end(),
                     [](const Item& a, const Item& b) { return a.w < b.w; });

    std::vector<Item> prev;
    for (int level = 0; level < 32; ++level) {
        std::vector<Item> merged = singles;
        for (std::size_t i = 0; i + 1 < prev.size(); i += 2) {
            Item pack;
            pack.w = prev[i].w + prev[i + 1].w;
            pack.syms = prev[i].syms;
            pack.syms.insert(pack.syms.end(), prev[i + 1].syms.begin(),
                             prev[i + 1].syms.end());
            merged.push_back(std::move(pack));
        }
        std::stable_sort(merged.begin(), merged.end(),
                         [](const Item& a, const Item& b) { return a.w < b.w; });
        prev = std::move(merged);
    }

    std::vector<std::uint32_t> len(n, 0);
    for (std::size_t i = 0; i < 2 * n - 2 && i < prev.size(); ++i)
        for (std::uint32_t s : prev[i].syms) len[s]++;
    std::uint64_t cost = 0;
    for (std::size_t s = 0; s < n; ++s) cost += freqs[s] * len[s];
    return cost;
}

std::uint64_t table_cost(const CodeTable& t, const std::vector<std::uint64_t>& freqs) {
    std::uint64_t cost = 0;
    for (std::size_t s = 0; s < freqs.size(); ++s) cost += freqs[s] * t.length(s);
    return cost;
}

bool check_bitstream(SplitMix64& rng) {
    std::vector<std::pair<std::uint32_t, unsigned>> writes;
    BitWriter w;
    for (int i = 0; i < 500; ++i) {
        const unsigned n = static_cast<unsigned>(rng.below(33));
        const std::uint32_t v =
            n == 0 ? 0
                   : static_cast<std::uint32_t>(rng.next() &
                                                (n == 32 ? 0xffffffffull
                                                         : ((1ull << n) - 1)));
        w.write_bits(v, n);
        writes.emplace_back(v, n);
    }
    w.align_to_byte();
    const Bytes buf = w.take();
    BitReader r(as_span(buf));
    for (auto [v, n] : writes)
        if (r.read_bits(n) != v) return false;
    return true;
}

bool check_buckets() {
    for (std::uint32_t v = 0; v < (1u << 16); ++v) {
        const unsigned b = value_bucket(v);
        if (v < bucket_base(b)) return false;
        if (v - bucket_base(b) >= (1u << bucket_extra_bits(b))) return false;
    }
    return true;
}

bool check_huffman(SplitMix64& rng) {
    for (int iter = 0; iter < 50; ++iter) {
        const std::size_t n = 2 + rng.below(11);
        std::vector<std::uint64_t> freqs(n);
        for (auto& f : freqs) f = 1 + rng.below(60);
        const CodeTable t = CodeTable::build(freqs);
        if (t.kraft_sum_q32() != (1ull << 32)) return false;
        if (table_cost(t, freqs) != package_merge_cost(freqs)) return false;
    }
    return true;
}

bool check_matcher(SplitMix64& rng) {
    for (int iter = 0; iter < 100; ++iter) {
        const std::size_t text_len = 1 + rng.below(300);
        Bytes text(text_len);
        for (auto& b : text) b = static_cast<std::uint8_t>(rng.below(4) + 'a');
        SuffixTree tree(static_cast<std::uint32_t>(text_len));
        for (std::uint8_t b : text) tree.extend(b);

        Bytes pattern(1 + rng.below(40));
        for (auto& b : pattern) b = static_cast<std::uint8_t>(rng.below(4) + 'a');
        const auto got = tree.longest_prefix_match(as_span(pattern), 64);
        const auto want = naive_longest_match(as_span(text), as_span(pattern), 64);
        if (got.length != want.second) return false;
        if (got.length > 0 &&
            !std::equal(pattern.begin(), pattern.begin() + got.length,
                        text.begin() + got.offset))
            return false;
    }
    return true;
}

bool check_schedule() {
    RebuildSchedule s(512);
    std::set<std::uint64_t> fired;
    for (std::uint64_t t = 1; t <= 10000; ++t)
        if (s.due(t)) {
            fired.insert(t);
            s.advance();
        }
    std::set<std::uint64_t> expect;
    for (std::uint64_t f = 2; f <= 512; f *= 2) expect.insert(f);
    for (std::uint64_t f = 1024; f <= 10000; f += 512) expect.insert(f);
    return fired == expect;
}

bool check_codec_roundtrip() {
    TrafficProfile profile;
    profile.seed = 99;
    const PacketTrace trace = gen_trace(profile, 600);
    Encoder enc;
    Decoder dec;
    for (const Bytes& p : trace.packets) {
        const Bytes block = enc.encode_packet(as_span(p));
        if (dec.decode_packet(as_span(block)) != p) return false;
        if (enc.state_hash() != dec.state_hash()) return false;
    }
    return true;
}

bool report(std::ostream& out, const char* name, bool ok) {
    out << (ok ? "[PASS] " : "[FAIL] ") << name << "\n";
    return ok;
}

}  // namespace

bool run_all(std::ostream& out) {
    SplitMix64 rng(0x5e1f7e57);
    bool ok = true;
    ok &= report(out, "bitstream round-trip", check_bitstream(rng));
    ok &= report(out, "bucket identity over [0, 2^16)", check_buckets());
    ok &= report(out, "huffman optimality vs package-merge", check_huffman(rng));
    ok &= report(out, "suffix-tree match vs brute force", check_matcher(rng));
    ok &= report(out, "rebuild schedule fire points", check_schedule());
    ok &= report(out, "codec round-trip + lockstep hash", check_codec_roundtrip());
    return ok;
}

}  // namespace aphc::selftest
