#include "aphc/huffman.hpp"

#include <algorithm>
#include <atomic>
#include <queue>

namespace aphc {

namespace {

std::atomic<std::uint64_t> g_tables_built{0};
std::atomic<std::uint64_t> g_kraft_violations{0};

}  // namespace

std::uint64_t tables_built_count() { return g_tables_built.load(); }
std::uint64_t kraft_violation_count() { return g_kraft_violations.load(); }

CodeTable CodeTable::build(std::span<const std::uint64_t> freqs) {
    const std::size_t n = freqs.size();
    if (n == 0) throw Error("CodeTable::build: empty alphabet");

    CodeTable t;
    t.len_.assign(n, 0);
    t.code_.assign(n, 0);

    if (n == 1) {
        // Lone symbol: zero-bit code, Kraft sum already 1.
        t.finish_from_lengths();
        return t;
    }

    struct HeapNode {
        std::uint64_t weight;
        std::uint32_t min_sym;
        std::uint32_t index;
    };
    struct Later {
        bool operator()(const HeapNode& a, const HeapNode& b) const {
            if (a.weight != b.weight) return a.weight > b.weight;
            return a.min_sym > b.min_sym;
        }
    };

    // index < n: leaf; otherwise internal node in `parent` bookkeeping.
    std::vector<std::int32_t> parent(2 * n - 1, -1);
    std::priority_queue<HeapNode, std::vector<HeapNode>, Later> heap;
    for (std::size_t s = 0; s < n; ++s) {
        if (freqs[s] == 0) throw Error("CodeTable::build: zero frequency");
        heap.push({freqs[s], static_cast<std::uint32_t>(s),
                   static_cast<std::uint32_t>(s)});
    }
    std::uint32_t next_index = static_cast<std::uint32_t>(n);
    while (heap.size() > 1) {
        HeapNode a = heap.top();
        heap.pop();
        HeapNode b = heap.top();
        heap.pop();
        parent[a.index] = static_cast<std::int32_t>(next_index);
        parent[b.index] = static_cast<std::int32_t>(next_index);
        heap.push({a.weight + b.weight, std::min(a.min_sym, b.min_sym), next_index});
        ++next_index;
    }

    for (std::size_t s = 0; s < n; ++s) {
        unsigned depth = 0;
        for (std::int32_t v = parent[s]; v >= 0; v = parent[v]) ++depth;
        if (depth > 32) throw Error("CodeTable::build: code length over 32");
        t.len_[s] = static_cast<std::uint8_t>(depth);
    }

    t.finish_from_lengths();
    return t;
}

void CodeTable::finish_from_lengths() {
    const std::size_t n = len_.size();
    max_len_ = 0;
    std::array<std::uint32_t, 33> bl_count{};
    for (std::size_t s = 0; s < n; ++s) {
        bl_count[len_[s]]++;
        max_len_ = std::max<unsigned>(max_len_, len_[s]);
    }

    // Canonical codes: shorter codes numerically first, ties by symbol index.
    std::array<std::uint32_t, 33> next_code{};
    std::uint32_t code = 0;
    for (unsigned l = 1; l <= max_len_; ++l) {
        code = (code + bl_count[l - 1]) << 1;
        next_code[l] = code;
        first_code_[l] = code;
        group_count_[l] = bl_count[l];
    }
    for (std::size_t s = 0; s < n; ++s)
        if (len_[s] > 0) code_[s] = next_code[len_[s]]++;

    std::uint32_t offset = 0;
    ordered_syms_.assign(n, 0);
    std::array<std::uint32_t, 33> fill{};
    for (unsigned l = 1; l <= max_len_; ++l) {
        group_offset_[l] = offset;
        offset += group_count_[l];
    }
    if (max_len_ == 0) {
        ordered_syms_[0] = 0;  // singleton alphabet
    } else {
        for (std::size_t s = 0; s < n; ++s) {
            unsigned l = len_[s];
            if (l == 0) continue;
            ordered_syms_[group_offset_[l] + fill[l]++] = static_cast<std::uint32_t>(s);
        }
    }

    g_tables_built.fetch_add(1);
    if (kraft_sum_q32() != (1ull << 32)) {
        g_kraft_violations.fetch_add(1);
        throw Error("CodeTable: Kraft equality violated");
    }
}

std::uint32_t CodeTable::decode(BitReader& r) const {
    if (max_len_ == 0) return ordered_syms_[0];
    std::uint32_t code = 0;
    for (unsigned l = 1; l <= max_len_; ++l) {
        code = (code << 1) | r.read_bits(1);
        if (group_count_[l] == 0) continue;
        if (code >= first_code_[l] && code - first_code_[l] < group_count_[l])
            return ordered_syms_[group_offset_[l] + (code - first_code_[l])];
    }
    // Unreachable for complete codes.
    throw CorruptionError("invalid prefix code", r.bit_position());
}

std::uint64_t CodeTable::kraft_sum_q32() const {
    std::uint64_t sum = 0;
    for (std::uint8_t l : len_) sum += 1ull << (32 - l);
    return sum;
}

std::uint64_t CodeTable::hash() const {
    Fnv64 h;
    h.update_u64(len_.size());
    for (std::size_t s = 0; s < len_.size(); ++s) {
        h.update_u8(len_[s]);
        h.update_u32(code_[s]);
    }
    return h.digest();
}

std::uint64_t CodeTableSet::hash() const {
    Fnv64 h;
    h.update_u64(positions.hash());
    h.update_u64(lengths.hash());
    h.update_u64(literals.hash());
    return h.digest();
}

void Ledger::push_tuple(const Tuple& t) {
    Entry e;
    if (t.is_match()) {
        e.kind = Entry::Kind::match;
        e.position = *t.position;
        e.length = t.length;
        e.literal = t.literal ? static_cast<std::int32_t>(*t.literal) : -1;
    } else {
        e.kind = Entry::Kind::literal_only;
        e.literal = static_cast<std::int32_t>(*t.literal);
    }
    push(e);
    ++tuples_seen_;
}

void Ledger::push_special(std::uint32_t position_symbol) {
    Entry e;
    e.kind = Entry::Kind::special;
    e.special = position_symbol;
    push(e);
}

void Ledger::push(Entry e) {
    ring_.push_back(e);
    if (ring_.size() > capacity_) ring_.pop_front();
}

CodeTableSet build_tables(const Ledger& ledger, const Alphabets& alphabets,
                          std::uint32_t min_match) {
    std::vector<std::uint64_t> pos_freq(alphabets.position_alphabet_size(), 1);
    std::vector<std::uint64_t> len_freq(alphabets.length_alphabet_size(), 1);
    std::vector<std::uint64_t> lit_freq(Alphabets::literal_alphabet_size, 1);

    for (const Ledger::Entry& e : ledger.entries()) {
        switch (e.kind) {
            case Ledger::Entry::Kind::match:
                pos_freq[value_bucket(e.position)]++;
                len_freq[value_bucket(e.length - min_match)]++;
                lit_freq[e.literal < 0 ? Alphabets::no_literal
                                       : static_cast<std::uint32_t>(e.literal)]++;
                break;
            case Ledger::Entry::Kind::literal_only:
                pos_freq[alphabets.literal_only()]++;
                lit_freq[static_cast<std::uint32_t>(e.literal)]++;
                break;
            case Ledger::Entry::Kind::special:
                pos_freq[e.special]++;
                break;
        }
    }

    CodeTableSet set;
    set.positions = CodeTable::build(pos_freq);
    set.lengths = CodeTable::build(len_freq);
    set.literals = CodeTable::build(lit_freq);
    return set;
}

}  // namespace aphc
