#pragma once

// Uniform adapter interface over per-packet stream codecs. Each adapter
// instance owns one compressor stream and one lockstep decompressor stream;
// packets must be processed in order on both sides. External codecs run in
// sync-flush mode so every packet is independently decodable.

#include <memory>
#include <optional>

#include "aphc/tuple.hpp"

namespace aphc {

class CodecAdapter {
public:
    virtual ~CodecAdapter() = default;

    virtual std::string name() const = 0;
    // Fixed settings echoed into bench reports (never silent).
    virtual std::string settings() const = 0;

    virtual Bytes compress_packet(ByteSpan data) = 0;
    virtual Bytes decompress_packet(ByteSpan data) = 0;
};

struct AdapterOptions {
    CodecConfig codec;               // for "aphc"
    std::optional<int> level;        // override for the external codecs
};

// Names this build can instantiate; always contains "null" and "aphc".
std::vector<std::string> list_codecs();

// All names the bench understands, available or not, in report order.
std::vector<std::string> known_codecs();

bool codec_available(std::string_view name);

// Throws Error naming the available set when `name` is unknown.
std::unique_ptr<CodecAdapter> make_adapter(std::string_view name,
                                           const AdapterOptions& opts = {});

}  // namespace aphc
