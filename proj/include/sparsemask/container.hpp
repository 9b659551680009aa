#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace sparsemask {

// Codec identifiers as stored in the container header.
namespace codec_ids {
inline constexpr std::uint8_t kMarwood = 1;
inline constexpr std::uint8_t kDemaret = 2;
inline constexpr std::uint8_t kBpaqS = 3;
inline constexpr std::uint8_t kBpaqM = 4;
inline constexpr std::uint8_t kBpaqL = 5;
inline constexpr std::uint8_t kBpaqXl = 6;
inline constexpr std::uint8_t kUlpaq = 7;
inline constexpr std::uint8_t kRleHuffman = 8;
inline constexpr std::uint8_t kRleArith = 9;
inline constexpr std::uint8_t kUlpaqCoo = 10;
inline constexpr std::uint8_t kUlpaqCsr = 11;

bool is_registered(std::uint8_t id);
}  // namespace codec_ids

// Self-describing encoded mask. The serialized form is:
//   "SBM1" | codec_id (1 byte) | width | height | ones_count | payload_length
// with the four counters as u32 little endian, followed by the payload.
struct EncodedMask {
    std::uint8_t codec_id = 0;
    std::uint32_t width = 0;
    std::uint32_t height = 0;
    std::uint32_t ones_count = 0;
    std::vector<std::uint8_t> payload;
};

inline constexpr std::size_t kContainerHeaderSize = 21;

std::vector<std::uint8_t> write_container(const EncodedMask& e);
EncodedMask read_container(std::span<const std::uint8_t> bytes);

}  // namespace sparsemask
