#include "sparsemask/arith.hpp"

#include <cmath>

namespace sparsemask {

namespace {
constexpr std::uint32_t kHalf = 0x80000000u;
constexpr std::uint32_t kQuarter = 0x40000000u;
constexpr std::uint32_t kThreeQuarters = 0xC0000000u;

// After renormalization high - low >= kQuarter, so with p1 in [1, 65535] the
// split leaves both subintervals nonempty.
std::uint32_t split_point(std::uint32_t low, std::uint32_t high, std::uint16_t p1) {
    std::uint64_t range = static_cast<std::uint64_t>(high) - low + 1;
    return low + static_cast<std::uint32_t>((range * p1) >> 16);
}
}  // namespace

void ArithmeticEncoder::emit(int bit) {
    out_.put(bit);
    for (; pending_ > 0; --pending_) out_.put(bit ^ 1);
}

void ArithmeticEncoder::encode(int bit, std::uint16_t p1) {
    std::uint32_t split = split_point(low_, high_, p1);
    if (bit)
        high_ = split - 1;
    else
        low_ = split;

    for (;;) {
        if (high_ < kHalf) {
            emit(0);
        } else if (low_ >= kHalf) {
            emit(1);
            low_ -= kHalf;
            high_ -= kHalf;
        } else if (low_ >= kQuarter && high_ < kThreeQuarters) {
            ++pending_;
            low_ -= kQuarter;
            high_ -= kQuarter;
        } else {
            break;
        }
        low_ <<= 1;
        high_ = (high_ << 1) | 1;
    }
}

std::vector<std::uint8_t> ArithmeticEncoder::finish() {
    ++pending_;
    emit(low_ < kQuarter ? 0 : 1);
    return out_.finish();
}

ArithmeticDecoder::ArithmeticDecoder(std::span<const std::uint8_t> payload) : in_(payload) {
    value_ = in_.get_bits(32);
}

int ArithmeticDecoder::decode(std::uint16_t p1) {
    std::uint32_t split = split_point(low_, high_, p1);
    int bit = value_ < split;
    if (bit)
        high_ = split - 1;
    else
        low_ = split;

    for (;;) {
        if (high_ < kHalf) {
            // no adjustment
        } else if (low_ >= kHalf) {
            low_ -= kHalf;
            high_ -= kHalf;
            value_ -= kHalf;
        } else if (low_ >= kQuarter && high_ < kThreeQuarters) {
            low_ -= kQuarter;
            high_ -= kQuarter;
            value_ -= kQuarter;
        } else {
            break;
        }
        low_ <<= 1;
        high_ = (high_ << 1) | 1;
        value_ = (value_ << 1) | static_cast<std::uint32_t>(in_.get());
    }
    return bit;
}

std::uint16_t quantize_probability(std::uint64_t num, std::uint64_t den) {
    std::uint64_t q = (num * 65536 + den / 2) / den;
    if (q < 1) q = 1;
    if (q > 65535) q = 65535;
    return static_cast<std::uint16_t>(q);
}

std::uint16_t quantize_probability(double p) {
    long q = std::lround(p * 65536.0);
    if (q < 1) q = 1;
    if (q > 65535) q = 65535;
    return static_cast<std::uint16_t>(q);
}

}  // namespace sparsemask
