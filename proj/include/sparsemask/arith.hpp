#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sparsemask/bitio.hpp"

namespace sparsemask {

// Integer binary arithmetic coder: 32-bit range registers, probabilities in
// 1/65536 units clamped to [1, 65535], carry handling via pending-bit
// counting. For any probability trace the payload stays within a small
// constant of the ideal -sum log2 p cost.
class ArithmeticEncoder {
public:
    // p1 = scaled probability that bit == 1, in [1, 65535].
    void encode(int bit, std::uint16_t p1);

    // Terminates the stream; at most two disambiguation bits plus padding.
    std::vector<std::uint8_t> finish();

private:
    void emit(int bit);

    std::uint32_t low_ = 0;
    std::uint32_t high_ = 0xFFFFFFFFu;
    std::uint64_t pending_ = 0;
    BitWriter out_;
};

class ArithmeticDecoder {
public:
    explicit ArithmeticDecoder(std::span<const std::uint8_t> payload);

    int decode(std::uint16_t p1);

private:
    std::uint32_t low_ = 0;
    std::uint32_t high_ = 0xFFFFFFFFu;
    std::uint32_t value_ = 0;
    BitReader in_;
};

// Zeroth-order adaptive bit predictor: p1 moves toward the observed bit by
// a power-of-two step, never touching 0 or 65536.
class AdaptiveBitModel {
public:
    explicit AdaptiveBitModel(int update_rate = 5, std::uint16_t initial = 32768)
        : p1_(initial), rate_(update_rate) {}

    std::uint16_t p1() const { return p1_; }

    void update(int bit) {
        int p = p1_;
        p += ((bit << 16) - p) >> rate_;
        if (p < 1) p = 1;
        if (p > 65535) p = 65535;
        p1_ = static_cast<std::uint16_t>(p);
    }

private:
    std::uint16_t p1_;
    int rate_;
};

// Quantizes a probability given as a ratio to 1/65536 units with round half
// up, clamped to [1, 65535]. den must be positive, num <= den.
std::uint16_t quantize_probability(std::uint64_t num, std::uint64_t den);

// Quantizes a probability in (0,1) given as a double.
std::uint16_t quantize_probability(double p);

}  // namespace sparsemask
