#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "sparsemask/container.hpp"
#include "sparsemask/image.hpp"

namespace sparsemask {

// A mask codec produces a self-contained payload; decoding additionally
// receives the container header fields (dimensions and ones count).
class MaskCodec {
public:
    virtual ~MaskCodec() = default;
    virtual const char* name() const = 0;
    virtual std::uint8_t id() const = 0;
    virtual std::vector<std::uint8_t> encode(const BinaryMask& mask) const = 0;
    virtual BinaryMask decode(std::span<const std::uint8_t> payload, int width,
                              int height, std::uint64_t ones) const = 0;
};

// All registered codecs, in codec-id order.
std::span<const MaskCodec* const> codec_registry();
const MaskCodec* find_codec(std::string_view name);
const MaskCodec* find_codec(std::uint8_t id);

EncodedMask encode_mask(const BinaryMask& mask, const MaskCodec& codec);
// Decodes and verifies the ones count against the header.
BinaryMask decode_mask(const EncodedMask& e);

}  // namespace sparsemask
