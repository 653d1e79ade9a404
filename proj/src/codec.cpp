#include "aphc/codec.hpp"

#include <istream>
#include <ostream>

namespace aphc {

namespace detail {

CodecState::CodecState(const CodecConfig& config, Window::Mode mode)
    : cfg(config),
      alphabets((config.validate(), Alphabets::from_config(config))),
      window(config.block_size, config.max_blocks, mode),
      ledger(config.ledger_size),
      schedule(config.rebuild_cap) {
    rebuild_tables();  // baseline weights only
}

std::uint64_t CodecState::hash() const {
    Fnv64 h;
    window.hash_into(h);
    h.update_u64(ledger.tuples_seen());
    h.update_u64(ledger.entries().size());
    for (const Ledger::Entry& e : ledger.entries()) {
        h.update_u8(static_cast<std::uint8_t>(e.kind));
        h.update_u32(e.position);
        h.update_u32(e.length);
        h.update_u32(static_cast<std::uint32_t>(e.literal));
        h.update_u32(e.special);
    }
    for (const CodeTable* t : {&tables.positions, &tables.lengths, &tables.literals})
        h.update(as_span(t->code_lengths()));
    return h.digest();
}

namespace {

void encode_value(const CodeTable& table, std::uint32_t value, BitWriter& w) {
    const unsigned b = value_bucket(value);
    table.encode(b, w);
    w.write_bits(value - bucket_base(b), bucket_extra_bits(b));
}

std::uint32_t decode_value(const CodeTable& table, std::uint32_t bucket_limit,
                           BitReader& r) {
    const std::uint32_t b = table.decode(r);
    if (b >= bucket_limit)
        throw CorruptionError("bucket symbol out of range", r.bit_position());
    return bucket_base(b) + r.read_bits(bucket_extra_bits(b));
}

}  // namespace
}  // namespace detail

Encoder::Encoder(const CodecConfig& cfg)
    : st_(cfg, Window::Mode::indexed) {}

std::vector<Tuple> Encoder::parse_packet(ByteSpan data) const {
    std::vector<Tuple> tuples;
    std::size_t i = 0;
    while (i < data.size()) {
        const auto m = st_.window.find_match(data.subspan(i), st_.cfg.min_match,
                                             st_.cfg.max_match);
        if (m) {
            const std::size_t after = i + m->length;
            std::optional<std::uint8_t> lit;
            if (after < data.size()) lit = data[after];
            tuples.push_back(Tuple::match(m->position, m->length, lit));
            i = after + (lit ? 1 : 0);
        } else {
            tuples.push_back(Tuple::literal_only(data[i]));
            ++i;
        }
    }
    return tuples;
}

Bytes Encoder::encode_packet(ByteSpan data) {
    if (data.size() > st_.cfg.max_packet_bytes)
        throw OversizeError("packet exceeds max_packet_bytes");

    const std::vector<Tuple> tuples = parse_packet(data);
    BitWriter w;
    for (const Tuple& t : tuples) {
        if (st_.schedule.due(st_.ledger.tuples_seen())) {
            // REBUILD goes out under the tables still in force.
            st_.tables.positions.encode(st_.alphabets.rebuild(), w);
            st_.ledger.push_special(st_.alphabets.rebuild());
            st_.rebuild_points.push_back(st_.ledger.tuples_seen());
            st_.schedule.advance();
            st_.rebuild_tables();
        }
        if (t.is_match()) {
            detail::encode_value(st_.tables.positions, *t.position, w);
            detail::encode_value(st_.tables.lengths, t.length - st_.cfg.min_match, w);
            st_.tables.literals.encode(
                t.literal ? *t.literal : Alphabets::no_literal, w);
        } else {
            st_.tables.positions.encode(st_.alphabets.literal_only(), w);
            st_.tables.literals.encode(*t.literal, w);
        }
        st_.ledger.push_tuple(t);
    }
    st_.tables.positions.encode(st_.alphabets.end_of_block(), w);
    st_.ledger.push_special(st_.alphabets.end_of_block());
    w.align_to_byte();

    st_.window.append(data);
    ++st_.packets_processed;
    return w.take();
}

Decoder::Decoder(const CodecConfig& cfg)
    : st_(cfg, Window::Mode::store_only) {}

Bytes Decoder::decode_packet(ByteSpan block) {
    std::size_t consumed = 0;
    Bytes out = decode_packet(block, consumed);
    if (consumed != block.size())
        throw CorruptionError("trailing bytes after block", 8 * consumed);
    return out;
}

Bytes Decoder::decode_packet(ByteSpan stream, std::size_t& consumed) {
    BitReader r(stream);
    Bytes out;
    try {
        for (;;) {
            const std::uint32_t sym = st_.tables.positions.decode(r);
            if (sym == st_.alphabets.end_of_block()) {
                st_.ledger.push_special(sym);
                const auto pad =
                    static_cast<unsigned>((8 - r.bit_position() % 8) % 8);
                if (r.read_bits(pad) != 0)
                    throw CorruptionError("nonzero padding bits", r.bit_position());
                break;
            }
            if (sym == st_.alphabets.rebuild()) {
                st_.ledger.push_special(sym);
                st_.rebuild_points.push_back(st_.ledger.tuples_seen());
                st_.rebuild_tables();
                continue;
            }
            if (sym == st_.alphabets.literal_only()) {
                const std::uint32_t lit = st_.tables.literals.decode(r);
                if (lit == Alphabets::no_literal)
                    throw CorruptionError("literal-only tuple without literal",
                                          r.bit_position());
                out.push_back(static_cast<std::uint8_t>(lit));
                st_.ledger.push_tuple(Tuple::literal_only(static_cast<std::uint8_t>(lit)));
                continue;
            }
            // Match tuple. The position symbol is its bucket.
            const std::uint32_t position =
                bucket_base(sym) + r.read_bits(bucket_extra_bits(sym));
            const std::uint32_t length =
                st_.cfg.min_match +
                detail::decode_value(st_.tables.lengths, st_.alphabets.length_buckets(), r);
            if (length > st_.cfg.max_match)
                throw CorruptionError("match length out of bounds", r.bit_position());
            if (position >= st_.window.total_live() ||
                position + length > st_.window.total_live())
                throw CorruptionError("match position past live window",
                                      r.bit_position());
            st_.window.copy_range(position, length, out);
            const std::uint32_t lit = st_.tables.literals.decode(r);
            std::optional<std::uint8_t> literal;
            if (lit != Alphabets::no_literal) {
                literal = static_cast<std::uint8_t>(lit);
                out.push_back(*literal);
            }
            st_.ledger.push_tuple(Tuple::match(position, length, literal));
        }
    } catch (const TruncationError&) {
        throw CorruptionError("truncated block", r.bit_position());
    }

    st_.window.append(out);
    ++st_.packets_processed;
    consumed = static_cast<std::size_t>(r.bit_position() / 8);
    return out;
}

namespace container {

namespace {

constexpr char kMagic[4] = {'A', 'P', 'H', 'C'};
constexpr std::uint8_t kVersion = 0x01;

void put_u16(std::ostream& out, std::uint16_t v) {
    char b[2] = {static_cast<char>(v & 0xff), static_cast<char>(v >> 8)};
    out.write(b, 2);
}

void put_u32(std::ostream& out, std::uint32_t v) {
    char b[4];
    for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
    out.write(b, 4);
}

bool get_exact(std::istream& in, char* buf, std::streamsize n) {
    in.read(buf, n);
    return in.gcount() == n;
}

std::uint32_t get_u32(std::istream& in, std::uint64_t at) {
    char b[4];
    if (!get_exact(in, b, 4)) throw FormatError("truncated integer", at);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i)
        v |= static_cast<std::uint32_t>(static_cast<std::uint8_t>(b[i])) << (8 * i);
    return v;
}

std::uint16_t get_u16(std::istream& in, std::uint64_t at) {
    char b[2];
    if (!get_exact(in, b, 2)) throw FormatError("truncated integer", at);
    return static_cast<std::uint16_t>(static_cast<std::uint8_t>(b[0]) |
                                      (static_cast<std::uint8_t>(b[1]) << 8));
}

}  // namespace

void write_header(std::ostream& out, const CodecConfig& cfg) {
    cfg.validate();
    out.write(kMagic, 4);
    out.put(static_cast<char>(kVersion));
    put_u32(out, cfg.block_size);
    put_u16(out, static_cast<std::uint16_t>(cfg.max_blocks));
    put_u16(out, static_cast<std::uint16_t>(cfg.ledger_size));
    put_u16(out, static_cast<std::uint16_t>(cfg.rebuild_cap));
    out.put(static_cast<char>(cfg.min_match));
    out.put(static_cast<char>(cfg.max_match - 3));
}

CodecConfig read_header(std::istream& in) {
    char magic[4];
    if (!get_exact(in, magic, 4) || std::string_view(magic, 4) != "APHC")
        throw FormatError("bad container magic", 0);
    char version;
    if (!get_exact(in, &version, 1) || static_cast<std::uint8_t>(version) != kVersion)
        throw FormatError("unsupported container version", 4);
    CodecConfig cfg;
    cfg.block_size = get_u32(in, 5);
    cfg.max_blocks = get_u16(in, 9);
    cfg.ledger_size = get_u16(in, 11);
    cfg.rebuild_cap = get_u16(in, 13);
    char mm[2];
    if (!get_exact(in, mm, 2)) throw FormatError("truncated config echo", 15);
    cfg.min_match = static_cast<std::uint8_t>(mm[0]);
    cfg.max_match = static_cast<std::uint32_t>(static_cast<std::uint8_t>(mm[1])) + 3;
    try {
        cfg.validate();
    } catch (const ConfigError& e) {
        throw FormatError(std::string("invalid config echo: ") + e.what(), 5);
    }
    return cfg;
}

void write_block(std::ostream& out, ByteSpan block) {
    put_u32(out, static_cast<std::uint32_t>(block.size()));
    out.write(reinterpret_cast<const char*>(block.data()),
              static_cast<std::streamsize>(block.size()));
}

bool read_block(std::istream& in, Bytes& out) {
    const auto at = static_cast<std::uint64_t>(in.tellg());
    char first;
    if (!in.read(&first, 1)) return false;  // clean EOF
    in.putback(first);
    const std::uint32_t len = get_u32(in, at);
    out.resize(len);
    if (len > 0 && !get_exact(in, reinterpret_cast<char*>(out.data()), len))
        throw FormatError("truncated block payload", at + 4);
    return true;
}

}  // namespace container

}  // namespace aphc
