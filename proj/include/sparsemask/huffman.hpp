#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sparsemask/bitio.hpp"

namespace sparsemask {

// Canonical Huffman code. Codes are assigned by (length, symbol) order, so
// the table round-trips through its code-length serialization.
class HuffmanTable {
public:
    // histogram[s] = occurrence count of symbol s. At least one count must
    // be positive. A single-symbol alphabet gets a 1-bit code.
    static HuffmanTable build(std::span<const std::uint64_t> histogram);

    static HuffmanTable from_lengths(std::vector<std::uint8_t> lengths);

    std::size_t alphabet_size() const { return lengths_.size(); }
    int length(std::uint32_t symbol) const { return lengths_[symbol]; }
    std::uint32_t code(std::uint32_t symbol) const { return codes_[symbol]; }

    void write_symbol(BitWriter& out, std::uint32_t symbol) const;
    std::uint32_t read_symbol(BitReader& in) const;

    // One length byte per symbol, terminated by 0xFF.
    std::vector<std::uint8_t> serialize() const;
    // Reads a serialized table from the front of bytes; advances consumed.
    static HuffmanTable deserialize(std::span<const std::uint8_t> bytes,
                                    std::size_t& consumed);

private:
    void assign_codes();

    std::vector<std::uint8_t> lengths_;
    std::vector<std::uint32_t> codes_;
    // Decoding tables indexed by code length.
    std::vector<std::uint32_t> first_code_;
    std::vector<std::uint32_t> first_index_;
    std::vector<std::uint32_t> count_;
    std::vector<std::uint32_t> sorted_symbols_;
    int max_length_ = 0;
};

std::vector<std::uint8_t> huffman_encode(std::span<const std::uint32_t> symbols,
                                         const HuffmanTable& table);
std::vector<std::uint32_t> huffman_decode(std::span<const std::uint8_t> bytes,
                                          std::size_t symbol_count,
                                          const HuffmanTable& table);

}  // namespace sparsemask
