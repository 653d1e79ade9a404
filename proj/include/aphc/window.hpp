#pragma once

// LZ77 sliding window: a bounded queue of fixed-size blocks, optionally
// indexed per block by a suffix tree. Absolute positions count bytes from
// the start of the oldest live block; evicting a block shifts them all down
// by block_size. Matches never span block boundaries.

#include <deque>
#include <optional>

#include "aphc/suffix_tree.hpp"

namespace aphc {

struct WindowMatch {
    std::uint32_t position = 0;  // absolute, in [0, total_live)
    std::uint32_t length = 0;
};

class Window {
public:
    // Indexed windows build a suffix tree per block and answer match
    // queries; store-only windows (the decoder side) keep just the bytes.
    enum class Mode { indexed, store_only };

    Window(std::uint32_t block_size, std::uint32_t max_blocks, Mode mode);

    // Distributes bytes into blocks, opening and evicting as needed.
    // Returns the number of blocks evicted.
    std::size_t append(ByteSpan data);

    // Best match for a prefix of `lookahead` across all live blocks:
    // greatest length in [min_len, max_len], ties to the newest block,
    // within a block to the smallest offset.
    std::optional<WindowMatch> find_match(ByteSpan lookahead, std::uint32_t min_len,
                                          std::uint32_t max_len) const;

    std::uint64_t total_live() const { return total_live_; }
    std::size_t block_count() const { return blocks_.size(); }
    std::uint32_t block_size() const { return block_size_; }

    std::uint8_t byte_at(std::uint64_t pos) const;
    // Appends window bytes [pos, pos+len) to out; caller guarantees bounds.
    void copy_range(std::uint64_t pos, std::uint32_t len, Bytes& out) const;

    void hash_into(Fnv64& h) const;

    // Construction-cost instrumentation, summed over live trees.
    std::uint64_t tree_steps() const;

private:
    struct Block {
        Bytes data;
        std::optional<SuffixTree> tree;
    };

    void open_block();

    std::deque<Block> blocks_;
    std::uint32_t block_size_;
    std::uint32_t max_blocks_;
    Mode mode_;
    std::uint64_t total_live_ = 0;
};

}  // namespace aphc
