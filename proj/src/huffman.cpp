#include "sparsemask/huffman.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <stdexcept>

namespace sparsemask {

namespace {

constexpr int kMaxCodeLength = 32;

// Heap construction of optimal code lengths. Ties break on node id so the
// result is deterministic.
std::vector<std::uint8_t> build_lengths(std::span<const std::uint64_t> histogram) {
    struct Node {
        std::uint64_t weight;
        std::uint32_t id;
        int left = -1, right = -1;
    };
    std::vector<Node> nodes;
    for (std::uint32_t s = 0; s < histogram.size(); ++s)
        if (histogram[s] > 0)
            nodes.push_back({histogram[s], s});
    std::size_t leaf_count = nodes.size();
    if (leaf_count == 0) throw std::runtime_error("huffman: empty histogram");

    std::vector<std::uint8_t> lengths(histogram.size(), 0);
    if (leaf_count == 1) {
        lengths[nodes[0].id] = 1;
        return lengths;
    }

    auto cmp = [&](std::uint32_t a, std::uint32_t b) {
        if (nodes[a].weight != nodes[b].weight) return nodes[a].weight > nodes[b].weight;
        return nodes[a].id > nodes[b].id;
    };
    std::priority_queue<std::uint32_t, std::vector<std::uint32_t>, decltype(cmp)> heap(cmp);
    for (std::uint32_t i = 0; i < nodes.size(); ++i) heap.push(i);
    while (heap.size() > 1) {
        std::uint32_t a = heap.top(); heap.pop();
        std::uint32_t b = heap.top(); heap.pop();
        Node parent{nodes[a].weight + nodes[b].weight,
                    static_cast<std::uint32_t>(histogram.size() + nodes.size()),
                    static_cast<int>(a), static_cast<int>(b)};
        nodes.push_back(parent);
        heap.push(static_cast<std::uint32_t>(nodes.size() - 1));
    }

    // Depth-first assignment of leaf depths.
    std::vector<std::pair<std::uint32_t, int>> stack{{heap.top(), 0}};
    while (!stack.empty()) {
        auto [idx, depth] = stack.back();
        stack.pop_back();
        const Node& n = nodes[idx];
        if (n.left < 0) {
            if (depth > kMaxCodeLength) throw std::runtime_error("huffman: code length overflow");
            lengths[n.id] = static_cast<std::uint8_t>(std::max(depth, 1));
        } else {
            stack.emplace_back(static_cast<std::uint32_t>(n.left), depth + 1);
            stack.emplace_back(static_cast<std::uint32_t>(n.right), depth + 1);
        }
    }
    return lengths;
}

}  // namespace

HuffmanTable HuffmanTable::build(std::span<const std::uint64_t> histogram) {
    // Flatten pathological weight distributions until the depth fits.
    std::vector<std::uint64_t> counts(histogram.begin(), histogram.end());
    for (;;) {
        try {
            HuffmanTable t;
            t.lengths_ = build_lengths(counts);
            t.assign_codes();
            return t;
        } catch (const std::runtime_error& e) {
            if (std::string(e.what()).find("overflow") == std::string::npos) throw;
            for (auto& c : counts)
                if (c > 0) c = (c + 1) / 2;
        }
    }
}

HuffmanTable HuffmanTable::from_lengths(std::vector<std::uint8_t> lengths) {
    HuffmanTable t;
    t.lengths_ = std::move(lengths);
    t.assign_codes();
    return t;
}

void HuffmanTable::assign_codes() {
    max_length_ = 0;
    for (std::uint8_t l : lengths_) {
        if (l > kMaxCodeLength) throw std::runtime_error("huffman: invalid code length");
        max_length_ = std::max(max_length_, static_cast<int>(l));
    }
    if (max_length_ == 0) throw std::runtime_error("huffman: no symbols");

    count_.assign(max_length_ + 1, 0);
    for (std::uint8_t l : lengths_)
        if (l > 0) ++count_[l];

    first_code_.assign(max_length_ + 1, 0);
    first_index_.assign(max_length_ + 1, 0);
    std::uint32_t code = 0, index = 0;
    for (int l = 1; l <= max_length_; ++l) {
        code <<= 1;
        first_code_[l] = code;
        first_index_[l] = index;
        code += count_[l];
        index += count_[l];
    }

    codes_.assign(lengths_.size(), 0);
    sorted_symbols_.resize(index);
    std::vector<std::uint32_t> next = first_index_;
    std::vector<std::uint32_t> next_code = first_code_;
    for (std::uint32_t s = 0; s < lengths_.size(); ++s) {
        int l = lengths_[s];
        if (l == 0) continue;
        codes_[s] = next_code[l]++;
        sorted_symbols_[next[l]++] = s;
    }
}

void HuffmanTable::write_symbol(BitWriter& out, std::uint32_t symbol) const {
    if (symbol >= lengths_.size() || lengths_[symbol] == 0)
        throw std::runtime_error("huffman: symbol absent from table");
    out.put_bits(codes_[symbol], lengths_[symbol]);
}

std::uint32_t HuffmanTable::read_symbol(BitReader& in) const {
    std::uint32_t code = 0;
    for (int l = 1; l <= max_length_; ++l) {
        code = (code << 1) | static_cast<std::uint32_t>(in.get());
        std::uint32_t offset = code - first_code_[l];
        if (code >= first_code_[l] && offset < count_[l])
            return sorted_symbols_[first_index_[l] + offset];
    }
    throw std::runtime_error("huffman: invalid code in stream");
}

std::vector<std::uint8_t> HuffmanTable::serialize() const {
    std::vector<std::uint8_t> out(lengths_.begin(), lengths_.end());
    out.push_back(0xFF);
    return out;
}

HuffmanTable HuffmanTable::deserialize(std::span<const std::uint8_t> bytes,
                                       std::size_t& consumed) {
    std::vector<std::uint8_t> lengths;
    std::size_t i = 0;
    for (;; ++i) {
        if (i >= bytes.size()) throw std::runtime_error("huffman: unterminated table");
        if (bytes[i] == 0xFF) break;
        lengths.push_back(bytes[i]);
    }
    consumed = i + 1;
    return from_lengths(std::move(lengths));
}

std::vector<std::uint8_t> huffman_encode(std::span<const std::uint32_t> symbols,
                                         const HuffmanTable& table) {
    BitWriter w;
    for (std::uint32_t s : symbols) table.write_symbol(w, s);
    return w.finish();
}

std::vector<std::uint32_t> huffman_decode(std::span<const std::uint8_t> bytes,
                                          std::size_t symbol_count,
                                          const HuffmanTable& table) {
    BitReader r(bytes);
    std::vector<std::uint32_t> out;
    out.reserve(symbol_count);
    for (std::size_t i = 0; i < symbol_count; ++i) out.push_back(table.read_symbol(r));
    return out;
}

}  // namespace sparsemask
