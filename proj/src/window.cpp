#include "aphc/window.hpp"

namespace aphc {

Window::Window(std::uint32_t block_size, std::uint32_t max_blocks, Mode mode)
    : block_size_(block_size), max_blocks_(max_blocks), mode_(mode) {}

void Window::open_block() {
    Block b;
    b.data.reserve(block_size_);
    if (mode_ == Mode::indexed) b.tree.emplace(block_size_);
    blocks_.push_back(std::move(b));
}

std::size_t Window::append(ByteSpan data) {
    std::size_t evicted = 0;
    for (std::uint8_t byte : data) {
        if (blocks_.empty() || blocks_.back().data.size() == block_size_) {
            open_block();
            if (blocks_.size() > max_blocks_) {
                total_live_ -= blocks_.front().data.size();
                blocks_.pop_front();
                ++evicted;
            }
        }
        Block& cur = blocks_.back();
        cur.data.push_back(byte);
        if (cur.tree) cur.tree->extend(byte);
        ++total_live_;
    }
    return evicted;
}

std::optional<WindowMatch> Window::find_match(ByteSpan lookahead,
                                              std::uint32_t min_len,
                                              std::uint32_t max_len) const {
    std::optional<WindowMatch> best;
    std::uint64_t base = 0;
    for (const Block& b : blocks_) {
        if (!b.tree) throw Error("find_match on a store-only window");
        const SuffixTree::Match m = b.tree->longest_prefix_match(lookahead, max_len);
        // >= keeps the newest block on ties.
        if (m.length > 0 && m.length >= min_len && (!best || m.length >= best->length))
            best = WindowMatch{static_cast<std::uint32_t>(base + m.offset), m.length};
        base += b.data.size();
    }
    return best;
}

std::uint8_t Window::byte_at(std::uint64_t pos) const {
    return blocks_[pos / block_size_].data[pos % block_size_];
}

void Window::copy_range(std::uint64_t pos, std::uint32_t len, Bytes& out) const {
    while (len > 0) {
        const Block& b = blocks_[pos / block_size_];
        std::uint64_t off = pos % block_size_;
        auto run = static_cast<std::uint32_t>(
            std::min<std::uint64_t>(len, b.data.size() - off));
        out.insert(out.end(), b.data.begin() + static_cast<std::ptrdiff_t>(off),
                   b.data.begin() + static_cast<std::ptrdiff_t>(off + run));
        pos += run;
        len -= run;
    }
}

void Window::hash_into(Fnv64& h) const {
    h.update_u64(total_live_);
    for (const Block& b : blocks_) {
        h.update_u64(b.data.size());
        h.update(as_span(b.data));
    }
}

std::uint64_t Window::tree_steps() const {
    std::uint64_t total = 0;
    for (const Block& b : blocks_)
        if (b.tree) total += b.tree->steps();
    return total;
}

}  // namespace aphc
