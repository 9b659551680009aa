#include "sparsemask/codecs.hpp"

#include <stdexcept>

#include "sparsemask/arith.hpp"
#include "sparsemask/bpaq.hpp"
#include "sparsemask/huffman.hpp"
#include "sparsemask/repr.hpp"
#include "sparsemask/ulpaq.hpp"

namespace sparsemask {

namespace {

// Remaining-ones over remaining-pixels ratio, the global context.
class GlobalCounts {
public:
    GlobalCounts(std::uint64_t ones, std::uint64_t pixels) : v_(ones), n_(pixels) {
        if (v_ > n_) throw std::runtime_error("marwood: ones count exceeds pixel count");
    }

    std::uint16_t p1() const { return quantize_probability(v_, n_); }

    void update(int bit) {
        if (bit) --v_;
        --n_;
    }

private:
    std::uint64_t v_;
    std::uint64_t n_;
};

class MarwoodCodec final : public MaskCodec {
public:
    const char* name() const override { return "marwood"; }
    std::uint8_t id() const override { return codec_ids::kMarwood; }

    std::vector<std::uint8_t> encode(const BinaryMask& mask) const override {
        GlobalCounts counts(mask.ones(), mask.size());
        ArithmeticEncoder enc;
        for (std::size_t i = 0; i < mask.size(); ++i) {
            int bit = mask.get(i) ? 1 : 0;
            enc.encode(bit, counts.p1());
            counts.update(bit);
        }
        return enc.finish();
    }

    BinaryMask decode(std::span<const std::uint8_t> payload, int width, int height,
                      std::uint64_t ones) const override {
        BinaryMask mask(width, height);
        GlobalCounts counts(ones, mask.size());
        ArithmeticDecoder dec(payload);
        for (std::size_t i = 0; i < mask.size(); ++i) {
            int bit = dec.decode(counts.p1());
            if (bit) mask.set(i, true);
            counts.update(bit);
        }
        return mask;
    }
};

// Context: number of set pixels among the 12 causal neighbours. Per-context
// counts give p1 = (c1 + 0.2)/(c0 + c1 + 0.4), kept as integer ratios
// scaled by 5.
class DemaretModel {
public:
    DemaretModel(int width, int height)
        : width_(width), height_(height),
          grid_(static_cast<std::size_t>(width) * height, 0) {}

    std::uint16_t predict() const {
        const auto& c = counts_[context()];
        return quantize_probability(5 * c.c1 + 1, 5 * (c.c0 + c.c1) + 2);
    }

    void update(int bit) {
        auto& c = counts_[context()];
        if (bit)
            ++c.c1;
        else
            ++c.c0;
        grid_[cursor_++] = bit ? 1 : 0;
    }

private:
    int context() const {
        int x = static_cast<int>(cursor_ % width_);
        int y = static_cast<int>(cursor_ / width_);
        int count = 0;
        for (auto [dx, dy] : kCausalOffsets) {
            int nx = x + dx, ny = y + dy;
            if (nx < 0 || ny < 0 || nx >= width_ || ny >= height_) continue;
            count += grid_[static_cast<std::size_t>(ny) * width_ + nx];
        }
        return count;
    }

    struct Counts {
        std::uint64_t c0 = 0, c1 = 0;
    };
    int width_, height_;
    std::vector<std::uint8_t> grid_;
    std::size_t cursor_ = 0;
    std::array<Counts, 13> counts_{};
};

class DemaretCodec final : public MaskCodec {
public:
    const char* name() const override { return "demaret"; }
    std::uint8_t id() const override { return codec_ids::kDemaret; }

    std::vector<std::uint8_t> encode(const BinaryMask& mask) const override {
        DemaretModel model(mask.width(), mask.height());
        ArithmeticEncoder enc;
        for (std::size_t i = 0; i < mask.size(); ++i) {
            int bit = mask.get(i) ? 1 : 0;
            enc.encode(bit, model.predict());
            model.update(bit);
        }
        return enc.finish();
    }

    BinaryMask decode(std::span<const std::uint8_t> payload, int width, int height,
                      std::uint64_t /*ones*/) const override {
        BinaryMask mask(width, height);
        DemaretModel model(width, height);
        ArithmeticDecoder dec(payload);
        for (std::size_t i = 0; i < mask.size(); ++i) {
            int bit = dec.decode(model.predict());
            if (bit) mask.set(i, true);
            model.update(bit);
        }
        return mask;
    }
};

class BpaqCodec final : public MaskCodec {
public:
    explicit BpaqCodec(BpaqVariant v) : variant_(v) {}

    const char* name() const override { return bpaq_variant_name(variant_); }
    std::uint8_t id() const override {
        switch (variant_) {
            case BpaqVariant::S: return codec_ids::kBpaqS;
            case BpaqVariant::M: return codec_ids::kBpaqM;
            case BpaqVariant::L: return codec_ids::kBpaqL;
            case BpaqVariant::XL: return codec_ids::kBpaqXl;
        }
        return 0;
    }

    std::vector<std::uint8_t> encode(const BinaryMask& mask) const override {
        return bpaq_encode(mask, variant_);
    }

    BinaryMask decode(std::span<const std::uint8_t> payload, int width, int height,
                      std::uint64_t ones) const override {
        return bpaq_decode(payload, width, height, ones, variant_);
    }

private:
    BpaqVariant variant_;
};

void append_u32le(std::vector<std::uint8_t>& out, std::uint32_t v) {
    out.push_back(static_cast<std::uint8_t>(v));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v >> 16));
    out.push_back(static_cast<std::uint8_t>(v >> 24));
}

std::uint32_t read_u32le(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < 4) throw std::runtime_error("payload: truncated length prefix");
    return static_cast<std::uint32_t>(bytes[0]) | (static_cast<std::uint32_t>(bytes[1]) << 8) |
           (static_cast<std::uint32_t>(bytes[2]) << 16) |
           (static_cast<std::uint32_t>(bytes[3]) << 24);
}

// ULPAQ over a varint stream; the varint byte count is stored as a u32
// little-endian prefix inside the payload.
class UlpaqStreamCodec : public MaskCodec {
public:
    std::vector<std::uint8_t> encode(const BinaryMask& mask) const override {
        std::vector<std::uint8_t> bytes = serialize(mask);
        std::vector<std::uint8_t> payload;
        append_u32le(payload, static_cast<std::uint32_t>(bytes.size()));
        std::vector<std::uint8_t> coded = ulpaq_encode(bytes);
        payload.insert(payload.end(), coded.begin(), coded.end());
        return payload;
    }

    BinaryMask decode(std::span<const std::uint8_t> payload, int width, int height,
                      std::uint64_t ones) const override {
        std::uint32_t count = read_u32le(payload);
        std::vector<std::uint8_t> bytes = ulpaq_decode(payload.subspan(4), count);
        return deserialize(bytes, width, height, ones);
    }

protected:
    virtual std::vector<std::uint8_t> serialize(const BinaryMask& mask) const = 0;
    virtual BinaryMask deserialize(std::span<const std::uint8_t> bytes, int width,
                                   int height, std::uint64_t ones) const = 0;
};

class UlpaqRleCodec final : public UlpaqStreamCodec {
public:
    const char* name() const override { return "ulpaq"; }
    std::uint8_t id() const override { return codec_ids::kUlpaq; }

protected:
    std::vector<std::uint8_t> serialize(const BinaryMask& mask) const override {
        return runs_to_bytes(rle_encode(mask));
    }

    BinaryMask deserialize(std::span<const std::uint8_t> bytes, int width, int height,
                           std::uint64_t /*ones*/) const override {
        return rle_decode(bytes_to_runs(bytes), width, height);
    }
};

class UlpaqCooCodec final : public UlpaqStreamCodec {
public:
    const char* name() const override { return "ulpaq-coo"; }
    std::uint8_t id() const override { return codec_ids::kUlpaqCoo; }

protected:
    std::vector<std::uint8_t> serialize(const BinaryMask& mask) const override {
        std::vector<std::uint8_t> out;
        for (auto [row, col] : coo_encode(mask).entries) {
            varint_append(out, row);
            varint_append(out, col);
        }
        return out;
    }

    BinaryMask deserialize(std::span<const std::uint8_t> bytes, int width, int height,
                           std::uint64_t ones) const override {
        CooList coo;
        std::size_t pos = 0;
        for (std::uint64_t i = 0; i < ones; ++i) {
            std::uint32_t row = static_cast<std::uint32_t>(varint_read(bytes, pos));
            std::uint32_t col = static_cast<std::uint32_t>(varint_read(bytes, pos));
            coo.entries.emplace_back(row, col);
        }
        return coo_decode(coo, width, height);
    }
};

class UlpaqCsrCodec final : public UlpaqStreamCodec {
public:
    const char* name() const override { return "ulpaq-csr"; }
    std::uint8_t id() const override { return codec_ids::kUlpaqCsr; }

protected:
    std::vector<std::uint8_t> serialize(const BinaryMask& mask) const override {
        CsrForm csr = csr_encode(mask);
        std::vector<std::uint8_t> out;
        for (std::uint32_t c : csr.column_indices) varint_append(out, c);
        for (std::uint32_t c : csr.row_counts) varint_append(out, c);
        return out;
    }

    BinaryMask deserialize(std::span<const std::uint8_t> bytes, int width, int height,
                           std::uint64_t ones) const override {
        CsrForm csr;
        std::size_t pos = 0;
        for (std::uint64_t i = 0; i < ones; ++i)
            csr.column_indices.push_back(static_cast<std::uint32_t>(varint_read(bytes, pos)));
        for (int y = 0; y < height; ++y)
            csr.row_counts.push_back(static_cast<std::uint32_t>(varint_read(bytes, pos)));
        return csr_decode(csr, width, height);
    }
};

// Huffman over run lengths; runs above 254 use escape symbol 255 followed by
// the raw value in 32 bits.
class RleHuffmanCodec final : public MaskCodec {
public:
    const char* name() const override { return "rle-huffman"; }
    std::uint8_t id() const override { return codec_ids::kRleHuffman; }

    std::vector<std::uint8_t> encode(const BinaryMask& mask) const override {
        RunLengthSeq seq = rle_encode(mask);
        if (seq.runs.empty()) return {};
        std::vector<std::uint64_t> histogram(256, 0);
        for (std::uint64_t r : seq.runs) ++histogram[r < 255 ? r : 255];
        HuffmanTable table = HuffmanTable::build(histogram);

        std::vector<std::uint8_t> payload = table.serialize();
        BitWriter bits;
        for (std::uint64_t r : seq.runs) {
            if (r < 255) {
                table.write_symbol(bits, static_cast<std::uint32_t>(r));
            } else {
                table.write_symbol(bits, 255);
                bits.put_bits(static_cast<std::uint32_t>(r), 32);
            }
        }
        std::vector<std::uint8_t> coded = bits.finish();
        payload.insert(payload.end(), coded.begin(), coded.end());
        return payload;
    }

    BinaryMask decode(std::span<const std::uint8_t> payload, int width, int height,
                      std::uint64_t ones) const override {
        if (ones == 0) return BinaryMask(width, height);
        std::size_t consumed = 0;
        HuffmanTable table = HuffmanTable::deserialize(payload, consumed);
        BitReader bits(payload.subspan(consumed));
        RunLengthSeq seq;
        for (std::uint64_t i = 0; i < ones; ++i) {
            std::uint32_t sym = table.read_symbol(bits);
            seq.runs.push_back(sym < 255 ? sym : bits.get_bits(32));
        }
        return rle_decode(seq, width, height);
    }
};

// Order-0 adaptive arithmetic coding of the varint run stream.
class RleArithCodec final : public MaskCodec {
public:
    const char* name() const override { return "rle-arith"; }
    std::uint8_t id() const override { return codec_ids::kRleArith; }

    std::vector<std::uint8_t> encode(const BinaryMask& mask) const override {
        return order0_encode(runs_to_bytes(rle_encode(mask)));
    }

    BinaryMask decode(std::span<const std::uint8_t> payload, int width, int height,
                      std::uint64_t ones) const override {
        std::vector<std::uint8_t> bytes = order0_decode_runs(payload, ones);
        return rle_decode(bytes_to_runs(bytes), width, height);
    }
};

const MarwoodCodec kMarwoodCodec;
const DemaretCodec kDemaretCodec;
const BpaqCodec kBpaqSCodec{BpaqVariant::S};
const BpaqCodec kBpaqMCodec{BpaqVariant::M};
const BpaqCodec kBpaqLCodec{BpaqVariant::L};
const BpaqCodec kBpaqXlCodec{BpaqVariant::XL};
const UlpaqRleCodec kUlpaqCodec;
const RleHuffmanCodec kRleHuffmanCodec;
const RleArithCodec kRleArithCodec;
const UlpaqCooCodec kUlpaqCooCodec;
const UlpaqCsrCodec kUlpaqCsrCodec;

const MaskCodec* const kRegistry[] = {
    &kMarwoodCodec, &kDemaretCodec,  &kBpaqSCodec,    &kBpaqMCodec,
    &kBpaqLCodec,   &kBpaqXlCodec,   &kUlpaqCodec,    &kRleHuffmanCodec,
    &kRleArithCodec, &kUlpaqCooCodec, &kUlpaqCsrCodec,
};

}  // namespace

std::span<const MaskCodec* const> codec_registry() { return kRegistry; }

const MaskCodec* find_codec(std::string_view name) {
    for (const MaskCodec* c : kRegistry)
        if (name == c->name()) return c;
    return nullptr;
}

const MaskCodec* find_codec(std::uint8_t id) {
    for (const MaskCodec* c : kRegistry)
        if (id == c->id()) return c;
    return nullptr;
}

EncodedMask encode_mask(const BinaryMask& mask, const MaskCodec& codec) {
    EncodedMask e;
    e.codec_id = codec.id();
    e.width = static_cast<std::uint32_t>(mask.width());
    e.height = static_cast<std::uint32_t>(mask.height());
    e.ones_count = static_cast<std::uint32_t>(mask.ones());
    e.payload = codec.encode(mask);
    return e;
}

BinaryMask decode_mask(const EncodedMask& e) {
    const MaskCodec* codec = find_codec(e.codec_id);
    if (!codec)
        throw std::runtime_error("decode: unknown codec id " + std::to_string(e.codec_id));
    BinaryMask mask = codec->decode(e.payload, static_cast<int>(e.width),
                                    static_cast<int>(e.height), e.ones_count);
    if (mask.ones() != e.ones_count)
        throw std::runtime_error("decode: ones count mismatch, corrupt stream");
    return mask;
}

}  // namespace sparsemask
