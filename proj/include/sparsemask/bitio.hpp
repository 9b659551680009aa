#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace sparsemask {

// MSB-first bit packing.
class BitWriter {
public:
    void put(int bit) {
        cur_ = static_cast<std::uint8_t>((cur_ << 1) | (bit & 1));
        if (++filled_ == 8) {
            bytes_.push_back(cur_);
            cur_ = 0;
            filled_ = 0;
        }
    }

    void put_bits(std::uint32_t value, int count) {
        for (int i = count - 1; i >= 0; --i) put((value >> i) & 1);
    }

    std::size_t bit_count() const { return bytes_.size() * 8 + filled_; }

    // Pads the final partial byte with zeros.
    std::vector<std::uint8_t> finish() {
        if (filled_ > 0) {
            bytes_.push_back(static_cast<std::uint8_t>(cur_ << (8 - filled_)));
            cur_ = 0;
            filled_ = 0;
        }
        return std::move(bytes_);
    }

private:
    std::vector<std::uint8_t> bytes_;
    std::uint8_t cur_ = 0;
    int filled_ = 0;
};

// MSB-first bit reader; reads past the end yield zeros, so a decoder driven
// by an exact symbol count never over-consumes.
class BitReader {
public:
    explicit BitReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

    int get() {
        std::size_t byte = pos_ >> 3;
        if (byte >= bytes_.size()) {
            ++pos_;
            return 0;
        }
        int bit = (bytes_[byte] >> (7 - (pos_ & 7))) & 1;
        ++pos_;
        return bit;
    }

    std::uint32_t get_bits(int count) {
        std::uint32_t v = 0;
        for (int i = 0; i < count; ++i) v = (v << 1) | static_cast<std::uint32_t>(get());
        return v;
    }

    std::size_t bits_read() const { return pos_; }

private:
    std::span<const std::uint8_t> bytes_;
    std::size_t pos_ = 0;
};

}  // namespace sparsemask
