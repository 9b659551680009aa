#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sparsemask/arith.hpp"
#include "sparsemask/repr.hpp"

namespace sparsemask {

// LEB128-style varints: 7-bit groups, low group first, high bit set on
// continuation bytes.
void varint_append(std::vector<std::uint8_t>& out, std::uint64_t v);
std::uint64_t varint_read(std::span<const std::uint8_t> bytes, std::size_t& pos);

std::vector<std::uint8_t> runs_to_bytes(const RunLengthSeq& seq);
RunLengthSeq bytes_to_runs(std::span<const std::uint8_t> bytes);

struct UlpaqConfig {
    int model_rate = 5;  // intra-byte model adaptation shift
    int sse_rate = 7;    // knot adaptation shift
    bool freeze_sse = false;
};

// Byte-stream coder with a single intra-byte context model and one SSE
// stage: 33 knots per partial-byte context over the stretched probability
// axis, identity-initialized, linearly interpolated. The coded probability
// is the average of the model output and the refined output.
class UlpaqModel {
public:
    explicit UlpaqModel(const UlpaqConfig& config = {});

    // Probability for the next bit given the current intra-byte position.
    std::uint16_t predict();
    void update(int bit);

    std::uint64_t state_hash() const { return hash_; }

private:
    UlpaqConfig config_;
    std::vector<AdaptiveBitModel> model_;       // 256 entries, (1<<seen)|partial
    std::vector<std::uint16_t> sse_;            // 256 contexts x 33 knots
    std::vector<std::uint16_t> knot_identity_;  // initial knot outputs
    int context_ = 1;
    int knot_lo_ = 0;  // bracketing knots chosen by the last predict()
    std::uint64_t hash_ = 1469598103934665603ull;

    void fold_hash(std::uint64_t v);
};

std::vector<std::uint8_t> ulpaq_encode(std::span<const std::uint8_t> bytes,
                                       const UlpaqConfig& config = {});
std::vector<std::uint8_t> ulpaq_decode(std::span<const std::uint8_t> payload,
                                       std::size_t byte_count,
                                       const UlpaqConfig& config = {});

// Order-0 adaptive coder over bytes via the intra-byte binarization; the
// rle-arith baseline and the frozen-SSE reduction target. The decoder stops
// once `run_count` complete varints have been reconstructed, so no byte
// count needs to be stored.
std::vector<std::uint8_t> order0_encode(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> order0_decode_runs(std::span<const std::uint8_t> payload,
                                             std::size_t run_count);

}  // namespace sparsemask
