#include "sparsemask/ulpaq.hpp"

#include <cmath>
#include <stdexcept>

namespace sparsemask {

void varint_append(std::vector<std::uint8_t>& out, std::uint64_t v) {
    do {
        std::uint8_t b = v & 0x7F;
        v >>= 7;
        if (v) b |= 0x80;
        out.push_back(b);
    } while (v);
}

std::uint64_t varint_read(std::span<const std::uint8_t> bytes, std::size_t& pos) {
    std::uint64_t v = 0;
    int shift = 0;
    for (;;) {
        if (pos >= bytes.size()) throw std::runtime_error("varint: truncated");
        if (shift >= 64) throw std::runtime_error("varint: overlong");
        std::uint8_t b = bytes[pos++];
        v |= static_cast<std::uint64_t>(b & 0x7F) << shift;
        if (!(b & 0x80)) return v;
        shift += 7;
    }
}

std::vector<std::uint8_t> runs_to_bytes(const RunLengthSeq& seq) {
    std::vector<std::uint8_t> out;
    out.reserve(seq.runs.size());
    for (std::uint64_t r : seq.runs) varint_append(out, r);
    return out;
}

RunLengthSeq bytes_to_runs(std::span<const std::uint8_t> bytes) {
    RunLengthSeq seq;
    std::size_t pos = 0;
    while (pos < bytes.size()) seq.runs.push_back(varint_read(bytes, pos));
    return seq;
}

namespace {

constexpr int kKnots = 33;
constexpr double kStretchLimit = 8.0;
constexpr double kKnotStep = 0.5;

std::uint16_t squash16(double t) {
    return quantize_probability(1.0 / (1.0 + std::exp(-t)));
}

int clamp16(int v) {
    if (v < 1) return 1;
    if (v > 65535) return 65535;
    return v;
}

}  // namespace

UlpaqModel::UlpaqModel(const UlpaqConfig& config)
    : config_(config), model_(256, AdaptiveBitModel(config.model_rate)) {
    knot_identity_.resize(kKnots);
    for (int k = 0; k < kKnots; ++k)
        knot_identity_[k] = squash16(-kStretchLimit + kKnotStep * k);
    sse_.resize(256 * kKnots);
    for (int c = 0; c < 256; ++c)
        for (int k = 0; k < kKnots; ++k) sse_[c * kKnots + k] = knot_identity_[k];
}

std::uint16_t UlpaqModel::predict() {
    int p = model_[context_].p1();
    double t = std::log(static_cast<double>(p) / (65536.0 - p));
    if (t < -kStretchLimit) t = -kStretchLimit;
    if (t > kStretchLimit) t = kStretchLimit;
    int i0 = static_cast<int>((t + kStretchLimit) / kKnotStep);
    if (i0 > kKnots - 2) i0 = kKnots - 2;
    knot_lo_ = i0;

    double s0 = knot_identity_[i0], s1 = knot_identity_[i0 + 1];
    double e0 = sse_[context_ * kKnots + i0], e1 = sse_[context_ * kKnots + i0 + 1];
    double refined = e0 + (p - s0) * (e1 - e0) / (s1 - s0);
    int p_sse = clamp16(static_cast<int>(std::lround(refined)));
    return static_cast<std::uint16_t>((p + p_sse + 1) / 2);
}

void UlpaqModel::update(int bit) {
    model_[context_].update(bit);
    if (!config_.freeze_sse) {
        for (int k = knot_lo_; k <= knot_lo_ + 1; ++k) {
            int e = sse_[context_ * kKnots + k];
            e += ((bit << 16) - e) >> config_.sse_rate;
            sse_[context_ * kKnots + k] = static_cast<std::uint16_t>(clamp16(e));
        }
    }
    context_ = (context_ << 1) | bit;
    if (context_ >= 256) context_ = 1;

    fold_hash(static_cast<std::uint64_t>(context_));
    fold_hash(model_[context_].p1());
    fold_hash(sse_[context_ * kKnots + knot_lo_]);
}

void UlpaqModel::fold_hash(std::uint64_t v) {
    hash_ ^= v;
    hash_ *= 1099511628211ull;
}

std::vector<std::uint8_t> ulpaq_encode(std::span<const std::uint8_t> bytes,
                                       const UlpaqConfig& config) {
    UlpaqModel model(config);
    ArithmeticEncoder enc;
    for (std::uint8_t byte : bytes) {
        for (int i = 7; i >= 0; --i) {
            int bit = (byte >> i) & 1;
            enc.encode(bit, model.predict());
            model.update(bit);
        }
    }
    return enc.finish();
}

std::vector<std::uint8_t> ulpaq_decode(std::span<const std::uint8_t> payload,
                                       std::size_t byte_count,
                                       const UlpaqConfig& config) {
    UlpaqModel model(config);
    ArithmeticDecoder dec(payload);
    std::vector<std::uint8_t> out;
    out.reserve(byte_count);
    for (std::size_t n = 0; n < byte_count; ++n) {
        int byte = 0;
        for (int i = 0; i < 8; ++i) {
            int bit = dec.decode(model.predict());
            model.update(bit);
            byte = (byte << 1) | bit;
        }
        out.push_back(static_cast<std::uint8_t>(byte));
    }
    return out;
}

std::vector<std::uint8_t> order0_encode(std::span<const std::uint8_t> bytes) {
    std::vector<AdaptiveBitModel> model(256);
    ArithmeticEncoder enc;
    int ctx = 1;
    for (std::uint8_t byte : bytes) {
        for (int i = 7; i >= 0; --i) {
            int bit = (byte >> i) & 1;
            enc.encode(bit, model[ctx].p1());
            model[ctx].update(bit);
            ctx = (ctx << 1) | bit;
            if (ctx >= 256) ctx = 1;
        }
    }
    return enc.finish();
}

std::vector<std::uint8_t> order0_decode_runs(std::span<const std::uint8_t> payload,
                                             std::size_t run_count) {
    std::vector<AdaptiveBitModel> model(256);
    ArithmeticDecoder dec(payload);
    std::vector<std::uint8_t> out;
    std::size_t complete = 0;
    while (complete < run_count) {
        int byte = 0;
        int ctx = 1;
        for (int i = 0; i < 8; ++i) {
            int bit = dec.decode(model[ctx].p1());
            model[ctx].update(bit);
            ctx = (ctx << 1) | bit;
            byte = (byte << 1) | bit;
        }
        out.push_back(static_cast<std::uint8_t>(byte));
        if (!(byte & 0x80)) ++complete;
    }
    return out;
}

}  // namespace sparsemask
