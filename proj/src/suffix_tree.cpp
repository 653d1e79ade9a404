#include "aphc/suffix_tree.hpp"

namespace aphc {

namespace {
inline std::uint64_t child_key(std::int32_t node, std::uint8_t c) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(node)) << 8) | c;
}
}  // namespace

SuffixTree::SuffixTree(std::uint32_t capacity_hint) {
    nodes_.reserve(2 * static_cast<std::size_t>(capacity_hint) + 2);
    children_.reserve(2 * static_cast<std::size_t>(capacity_hint) + 2);
    text_.reserve(capacity_hint);
    nodes_.push_back(Node{-1, -1, 0, 0});  // root
}

std::int32_t SuffixTree::new_node(std::int32_t start, std::int32_t end,
                                  std::uint32_t occ) {
    nodes_.push_back(Node{start, end, 0, occ});
    return static_cast<std::int32_t>(nodes_.size() - 1);
}

std::int32_t SuffixTree::child_of(std::int32_t node, std::uint8_t c) const {
    auto it = children_.find(child_key(node, c));
    return it == children_.end() ? -1 : it->second;
}

void SuffixTree::set_child(std::int32_t node, std::uint8_t c, std::int32_t v) {
    children_[child_key(node, c)] = v;
}

void SuffixTree::extend(std::uint8_t b) {
    text_.push_back(b);
    const auto pos = static_cast<std::int32_t>(text_.size()) - 1;
    ++remaining_;
    std::int32_t pending_link = 0;  // internal node awaiting a suffix link

    auto link_to = [&](std::int32_t node) {
        if (pending_link > 0) nodes_[pending_link].link = node;
        pending_link = node;
    };

    while (remaining_ > 0) {
        ++steps_;
        if (active_len_ == 0) active_edge_ = pos;
        const std::uint8_t edge_byte = text_[active_edge_];
        const std::int32_t nxt = child_of(active_node_, edge_byte);

        if (nxt < 0) {
            // New leaf for the suffix starting at pos + 1 - remaining_.
            const auto suffix_start =
                static_cast<std::uint32_t>(pos + 1 - remaining_);
            set_child(active_node_, edge_byte, new_node(pos, -1, suffix_start));
            link_to(active_node_);
        } else {
            const std::int32_t el = edge_end(nodes_[nxt]) - nodes_[nxt].start;
            if (active_len_ >= el) {
                // Walk down one edge and retry from the new active node.
                active_node_ = nxt;
                active_edge_ += el;
                active_len_ -= el;
                continue;
            }
            if (text_[nodes_[nxt].start + active_len_] == b) {
                // Current byte already on the edge: extension is implicit.
                ++active_len_;
                link_to(active_node_);
                break;
            }
            // Split the edge; the new internal node inherits the child's
            // leftmost occurrence (its path string is a prefix of the
            // child's).
            const std::int32_t split =
                new_node(nodes_[nxt].start, nodes_[nxt].start + active_len_,
                         nodes_[nxt].occ);
            set_child(active_node_, edge_byte, split);
            const auto suffix_start =
                static_cast<std::uint32_t>(pos + 1 - remaining_);
            set_child(split, b, new_node(pos, -1, suffix_start));
            nodes_[nxt].start += active_len_;
            set_child(split, text_[nodes_[nxt].start], nxt);
            link_to(split);
        }

        --remaining_;
        if (active_node_ == 0 && active_len_ > 0) {
            --active_len_;
            active_edge_ = pos - remaining_ + 1;
        } else if (active_node_ != 0) {
            active_node_ = nodes_[active_node_].link;
        }
    }
}

SuffixTree::Match SuffixTree::longest_prefix_match(ByteSpan pattern,
                                                   std::uint32_t limit) const {
    const std::uint32_t cap =
        static_cast<std::uint32_t>(std::min<std::uint64_t>(pattern.size(), limit));
    std::int32_t cur = 0;
    std::int32_t deepest = -1;
    std::uint32_t matched = 0;

    while (matched < cap) {
        const std::int32_t nxt = child_of(cur, pattern[matched]);
        if (nxt < 0) break;
        deepest = nxt;
        const std::int32_t e = edge_end(nodes_[nxt]);
        std::int32_t i = nodes_[nxt].start;
        while (i < e && matched < cap && text_[i] == pattern[matched]) {
            ++i;
            ++matched;
        }
        if (i < e) break;  // stopped mid-edge
        cur = nxt;
    }

    if (matched == 0) return Match{};
    return Match{nodes_[deepest].occ, matched};
}

}  // namespace aphc
