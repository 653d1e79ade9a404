#include "aphc/baselines.hpp"

#include <algorithm>
#include <sstream>

#include "aphc/codec.hpp"

#ifdef APHC_HAVE_ZLIB
#include <zlib.h>
#endif
#ifdef APHC_HAVE_LZMA
#include <lzma.h>
#endif

namespace aphc {

namespace {

class NullAdapter final : public CodecAdapter {
public:
    std::string name() const override { return "null"; }
    std::string settings() const override { return "identity"; }
    Bytes compress_packet(ByteSpan data) override { return Bytes(data.begin(), data.end()); }
    Bytes decompress_packet(ByteSpan data) override { return Bytes(data.begin(), data.end()); }
};

class AphcAdapter final : public CodecAdapter {
public:
    explicit AphcAdapter(const CodecConfig& cfg) : enc_(cfg), dec_(cfg) {}

    std::string name() const override { return "aphc"; }
    std::string settings() const override {
        const CodecConfig& c = enc_.config();
        std::ostringstream s;
        s << "block_size=" << c.block_size << " max_blocks=" << c.max_blocks
          << " ledger_size=" << c.ledger_size << " rebuild_cap=" << c.rebuild_cap
          << " min_match=" << c.min_match << " max_match=" << c.max_match;
        return s.str();
    }

    Bytes compress_packet(ByteSpan data) override { return enc_.encode_packet(data); }
    Bytes decompress_packet(ByteSpan data) override { return dec_.decode_packet(data); }

private:
    Encoder enc_;
    Decoder dec_;
};

#ifdef APHC_HAVE_ZLIB

// zlib at level 9 unless overridden, one SYNC_FLUSH per packet so the
// receiver can decode everything sent so far.
class DeflateSyncAdapter final : public CodecAdapter {
public:
    explicit DeflateSyncAdapter(int level) : level_(level) {
        def_ = z_stream{};
        if (deflateInit(&def_, level_) != Z_OK)
            throw AdapterError("deflateInit failed", Z_MEM_ERROR);
        inf_ = z_stream{};
        if (inflateInit(&inf_) != Z_OK) {
            deflateEnd(&def_);
            throw AdapterError("inflateInit failed", Z_MEM_ERROR);
        }
    }
    ~DeflateSyncAdapter() override {
        deflateEnd(&def_);
        inflateEnd(&inf_);
    }

    std::string name() const override { return "deflate-sync"; }
    std::string settings() const override {
        return "zlib level " + std::to_string(level_) + ", Z_SYNC_FLUSH per packet";
    }

    Bytes compress_packet(ByteSpan data) override {
        Bytes out;
        def_.next_in = const_cast<Bytef*>(data.data());
        def_.avail_in = static_cast<uInt>(data.size());
        std::uint8_t buf[4096];
        do {
            def_.next_out = buf;
            def_.avail_out = sizeof buf;
            const int rc = deflate(&def_, Z_SYNC_FLUSH);
            if (rc != Z_OK && rc != Z_BUF_ERROR)
                throw AdapterError("deflate failed", rc);
            out.insert(out.end(), buf, buf + (sizeof buf - def_.avail_out));
        } while (def_.avail_out == 0);
        return out;
    }

    Bytes decompress_packet(ByteSpan data) override {
        Bytes out;
        inf_.next_in = const_cast<Bytef*>(data.data());
        inf_.avail_in = static_cast<uInt>(data.size());
        std::uint8_t buf[4096];
        do {
            inf_.next_out = buf;
            inf_.avail_out = sizeof buf;
            const int rc = inflate(&inf_, Z_SYNC_FLUSH);
            if (rc != Z_OK && rc != Z_BUF_ERROR)
                throw AdapterError("inflate failed", rc);
            out.insert(out.end(), buf, buf + (sizeof buf - inf_.avail_out));
        } while (inf_.avail_out == 0 || inf_.avail_in > 0);
        return out;
    }

private:
    int level_;
    z_stream def_{};
    z_stream inf_{};
};

#endif  // APHC_HAVE_ZLIB

#ifdef APHC_HAVE_LZMA

// liblzma xz stream at preset 3 with extreme disabled unless overridden,
// LZMA_SYNC_FLUSH per packet. No integrity check: checks only materialize
// at stream end and never affect per-packet output.
class LzmaSyncAdapter final : public CodecAdapter {
public:
    explicit LzmaSyncAdapter(int level) : level_(level) {
        enc_ = LZMA_STREAM_INIT;
        lzma_ret rc = lzma_easy_encoder(&enc_, static_cast<std::uint32_t>(level_),
                                        LZMA_CHECK_NONE);
        if (rc != LZMA_OK) throw AdapterError("lzma_easy_encoder failed", rc);
        dec_ = LZMA_STREAM_INIT;
        rc = lzma_stream_decoder(&dec_, UINT64_MAX, 0);
        if (rc != LZMA_OK) {
            lzma_end(&enc_);
            throw AdapterError("lzma_stream_decoder failed", rc);
        }
    }
    ~LzmaSyncAdapter() override {
        lzma_end(&enc_);
        lzma_end(&dec_);
    }

    std::string name() const override { return "lzma-sync"; }
    std::string settings() const override {
        return "liblzma preset " + std::to_string(level_) +
               " (no extreme), LZMA_SYNC_FLUSH per packet, check none";
    }

    Bytes compress_packet(ByteSpan data) override {
        Bytes out;
        enc_.next_in = data.data();
        enc_.avail_in = data.size();
        std::uint8_t buf[4096];
        for (;;) {
            enc_.next_out = buf;
            enc_.avail_out = sizeof buf;
            const lzma_ret rc = lzma_code(&enc_, LZMA_SYNC_FLUSH);
            out.insert(out.end(), buf, buf + (sizeof buf - enc_.avail_out));
            if (rc == LZMA_STREAM_END) break;  // flush complete
            if (rc != LZMA_OK) throw AdapterError("lzma_code(SYNC_FLUSH) failed", rc);
        }
        return out;
    }

    Bytes decompress_packet(ByteSpan data) override {
        Bytes out;
        dec_.next_in = data.data();
        dec_.avail_in = data.size();
        std::uint8_t buf[4096];
        do {
            dec_.next_out = buf;
            dec_.avail_out = sizeof buf;
            const lzma_ret rc = lzma_code(&dec_, LZMA_RUN);
            if (rc != LZMA_OK && rc != LZMA_STREAM_END && rc != LZMA_BUF_ERROR)
                throw AdapterError("lzma_code(RUN) failed", rc);
            out.insert(out.end(), buf, buf + (sizeof buf - dec_.avail_out));
            if (rc == LZMA_BUF_ERROR && dec_.avail_out != 0)
                break;  // no further progress possible
        } while (dec_.avail_out == 0 || dec_.avail_in > 0);
        return out;
    }

private:
    int level_;
    lzma_stream enc_;
    lzma_stream dec_;
};

#endif  // APHC_HAVE_LZMA

}  // namespace

std::vector<std::string> known_codecs() {
    return {"null", "aphc", "deflate-sync", "lzma-sync"};
}

bool codec_available(std::string_view name) {
    if (name == "null" || name == "aphc") return true;
#ifdef APHC_HAVE_ZLIB
    if (name == "deflate-sync") return true;
#endif
#ifdef APHC_HAVE_LZMA
    if (name == "lzma-sync") return true;
#endif
    return false;
}

std::vector<std::string> list_codecs() {
    std::vector<std::string> out;
    for (const std::string& name : known_codecs())
        if (codec_available(name)) out.push_back(name);
    return out;
}

std::unique_ptr<CodecAdapter> make_adapter(std::string_view name,
                                           const AdapterOptions& opts) {
    if (name == "null") return std::make_unique<NullAdapter>();
    if (name == "aphc") return std::make_unique<AphcAdapter>(opts.codec);
#ifdef APHC_HAVE_ZLIB
    if (name == "deflate-sync")
        return std::make_unique<DeflateSyncAdapter>(opts.level.value_or(9));
#endif
#ifdef APHC_HAVE_LZMA
    if (name == "lzma-sync")
        return std::make_unique<LzmaSyncAdapter>(opts.level.value_or(3));
#endif
    std::string available;
    for (const std::string& c : list_codecs())
        available += (available.empty() ? "" : ", ") + c;
    throw ConfigError("unknown codec '" + std::string(name) + "' (available: " +
                      available + ")");
}

}  // namespace aphc
