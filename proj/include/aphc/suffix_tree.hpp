#pragma once

// Online suffix tree over one block of bytes, built incrementally in
// amortized constant time per byte. Supports longest-prefix-of-pattern
// queries that report the leftmost occurrence of the matched prefix.

#include <unordered_map>

#include "aphc/common.hpp"

namespace aphc {

class SuffixTree {
public:
    explicit SuffixTree(std::uint32_t capacity_hint = 0);

    // Appends one byte to the indexed text.
    void extend(std::uint8_t b);

    struct Match {
        std::uint32_t offset = 0;  // leftmost occurrence start in the block
        std::uint32_t length = 0;
    };

    // Longest prefix of `pattern` (capped at `limit`) occurring as a
    // substring of the indexed text. length 0 when even the first byte is
    // absent; offset is then meaningless and set to 0.
    Match longest_prefix_match(ByteSpan pattern, std::uint32_t limit) const;

    std::uint32_t size() const { return static_cast<std::uint32_t>(text_.size()); }
    std::size_t node_count() const { return nodes_.size(); }
    const Bytes& text() const { return text_; }

    // Elementary active-point moves performed so far (construction cost
    // instrumentation; linear in text size).
    std::uint64_t steps() const { return steps_; }

private:
    struct Node {
        std::int32_t start;  // incoming edge label: text_[start, end)
        std::int32_t end;    // -1 = open (grows with the text)
        std::int32_t link = 0;
        std::uint32_t occ;   // leftmost occurrence of the path string
    };

    std::int32_t new_node(std::int32_t start, std::int32_t end, std::uint32_t occ);
    std::int32_t child_of(std::int32_t node, std::uint8_t c) const;
    void set_child(std::int32_t node, std::uint8_t c, std::int32_t v);
    std::int32_t edge_end(const Node& n) const {
        return n.end < 0 ? static_cast<std::int32_t>(text_.size()) : n.end;
    }

    std::vector<Node> nodes_;
    std::unordered_map<std::uint64_t, std::int32_t> children_;
    Bytes text_;

    std::int32_t active_node_ = 0;
    std::int32_t active_edge_ = 0;  // index into text_ of the edge's first byte
    std::int32_t active_len_ = 0;
    std::int32_t remaining_ = 0;
    std::uint64_t steps_ = 0;
};

}  // namespace aphc
