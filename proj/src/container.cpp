#include "sparsemask/container.hpp"

#include <cstring>
#include <stdexcept>

namespace sparsemask {

namespace codec_ids {
bool is_registered(std::uint8_t id) { return id >= kMarwood && id <= kUlpaqCsr; }
}  // namespace codec_ids

namespace {

void put_u32le(std::vector<std::uint8_t>& out, std::uint32_t v) {
    out.push_back(static_cast<std::uint8_t>(v));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v >> 16));
    out.push_back(static_cast<std::uint8_t>(v >> 24));
}

std::uint32_t get_u32le(const std::uint8_t* p) {
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

}  // namespace

std::vector<std::uint8_t> write_container(const EncodedMask& e) {
    std::vector<std::uint8_t> out;
    out.reserve(kContainerHeaderSize + e.payload.size());
    out.insert(out.end(), {'S', 'B', 'M', '1'});
    out.push_back(e.codec_id);
    put_u32le(out, e.width);
    put_u32le(out, e.height);
    put_u32le(out, e.ones_count);
    put_u32le(out, static_cast<std::uint32_t>(e.payload.size()));
    out.insert(out.end(), e.payload.begin(), e.payload.end());
    return out;
}

EncodedMask read_container(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < kContainerHeaderSize)
        throw std::runtime_error("container: truncated header");
    if (std::memcmp(bytes.data(), "SBM1", 4) != 0)
        throw std::runtime_error("container: bad magic");
    EncodedMask e;
    e.codec_id = bytes[4];
    if (!codec_ids::is_registered(e.codec_id))
        throw std::runtime_error("container: unknown codec id " + std::to_string(e.codec_id));
    e.width = get_u32le(bytes.data() + 5);
    e.height = get_u32le(bytes.data() + 9);
    e.ones_count = get_u32le(bytes.data() + 13);
    std::uint32_t payload_length = get_u32le(bytes.data() + 17);
    if (bytes.size() - kContainerHeaderSize != payload_length)
        throw std::runtime_error("container: payload length mismatch");
    e.payload.assign(bytes.begin() + kContainerHeaderSize, bytes.end());
    return e;
}

}  // namespace sparsemask
