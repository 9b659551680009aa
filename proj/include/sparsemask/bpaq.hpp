#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "sparsemask/image.hpp"

namespace sparsemask {

// Causal neighbour offsets in coding order. Offset m-1 extends the order-m
// context, so the order-m neighbourhood is the first m entries; the first
// four are the nearest causal pixels (left, above, and the two diagonals).
// All offsets strictly precede the current pixel in a row-major scan.
inline constexpr std::array<std::pair<int, int>, 12> kCausalOffsets{{
    {-1, 0},  {0, -1},  {-1, -1}, {1, -1},
    {-2, 0},  {0, -2},  {-2, -1}, {2, -1},
    {-1, -2}, {1, -2},  {-2, -2}, {2, -2},
}};

enum class BpaqVariant { S, M, L, XL };

const char* bpaq_variant_name(BpaqVariant v);

// Shared prediction state machine for the four context-mixing variants.
// The caller interleaves predict() and update(bit) once per pixel in
// row-major order; encoder and decoder replay the identical sequence.
class BpaqModel {
public:
    BpaqModel(BpaqVariant variant, int width, int height, std::uint64_t ones);

    // Probability that the current pixel is 1, in 1/65536 units.
    std::uint16_t predict();
    void update(int bit);

    bool done() const { return cursor_ >= grid_.size(); }

    // Digest folded over every state change; encoder/decoder divergence
    // shows up as a hash mismatch after the offending bit.
    std::uint64_t state_hash() const { return hash_; }

private:
    struct Counts {
        double n0 = 0.0;
        double n1 = 0.0;
    };
    struct Input {
        // Bit positions (within the causal pattern word) this context reads.
        std::uint32_t pattern_mask = 0;
        std::vector<Counts> table;
        double weight = 0.0;
        // Scratch from the last predict().
        Counts* entry = nullptr;
        double stretched = 0.0;
    };

    std::uint32_t causal_pattern() const;
    void fold_hash(double v);
    void fold_hash(std::uint64_t v);

    BpaqVariant variant_;
    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> grid_;
    std::size_t cursor_ = 0;

    std::vector<Input> inputs_;
    bool logistic_ = false;
    int stat_order_ = 0;

    std::uint64_t v_remaining_ = 0;
    std::uint64_t n_remaining_ = 0;

    // Mixer scratch carried from predict() to update().
    double s0_ = 0.0, s1_ = 0.0, s_ = 0.0;
    double p_dyn_ = 0.0;
    double p_final_ = 0.0;
    bool predicted_ = false;

    std::uint64_t hash_ = 1469598103934665603ull;
};

std::vector<std::uint8_t> bpaq_encode(const BinaryMask& mask, BpaqVariant variant);
BinaryMask bpaq_decode(std::span<const std::uint8_t> payload, int width, int height,
                       std::uint64_t ones, BpaqVariant variant);

}  // namespace sparsemask
