#include "sparsemask/bpaq.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "sparsemask/arith.hpp"

namespace sparsemask {

namespace {

constexpr double kEvidenceFloor = 0.5;
constexpr double kLogisticRate = 0.02;
constexpr double kLinearInitWeight = 1.0;
// The logistic mix starts as the pure global-ratio predictor: unit weight on
// the tableless input, zero on the local contexts. The first prediction then
// already codes at the combinatorial rate and training only improves on it,
// which matters on sparse masks where every mask is a fresh model.
constexpr double kLogisticLocalInitWeight = 0.0;
constexpr double kLogisticGlobalInitWeight = 1.0;
// Bounding each input to [1/16, 15/16] caps |stretch| at ln 15, so one update
// moves the mix by at most rate * inputs * ln^2(15) ~ 1.9 logits. Without the
// cap the saturated contexts of a sparse mask sit near +-11 logits and the
// fixed-rate mixer oscillates, costing about a bit per coded one.
constexpr double kStretchClamp = 1.0 / 16.0;

// Laplace rule of succession; counts are halved, not reset, so the prior keeps
// mattering after context flips.
double smoothed(double n0, double n1) { return (n1 + 1.0) / (n0 + n1 + 2.0); }

double stretch(double p) {
    if (p < kStretchClamp) p = kStretchClamp;
    if (p > 1.0 - kStretchClamp) p = 1.0 - kStretchClamp;
    return std::log(p / (1.0 - p));
}

// Gathers the bits of `pattern` selected by `mask` into a dense index.
std::uint32_t extract_bits(std::uint32_t pattern, std::uint32_t mask) {
    std::uint32_t out = 0;
    int k = 0;
    while (mask) {
        int b = std::countr_zero(mask);
        out |= ((pattern >> b) & 1u) << k;
        ++k;
        mask &= mask - 1;
    }
    return out;
}

}  // namespace

const char* bpaq_variant_name(BpaqVariant v) {
    switch (v) {
        case BpaqVariant::S: return "bpaq-s";
        case BpaqVariant::M: return "bpaq-m";
        case BpaqVariant::L: return "bpaq-l";
        case BpaqVariant::XL: return "bpaq-xl";
    }
    return "?";
}

BpaqModel::BpaqModel(BpaqVariant variant, int width, int height, std::uint64_t ones)
    : variant_(variant), width_(width), height_(height),
      grid_(static_cast<std::size_t>(width) * height, 0) {
    if (width <= 0 || height <= 0)
        throw std::invalid_argument("bpaq: dimensions must be positive");
    if (ones > grid_.size())
        throw std::runtime_error("bpaq: ones count exceeds pixel count");
    v_remaining_ = ones;
    n_remaining_ = grid_.size();

    logistic_ = variant == BpaqVariant::L || variant == BpaqVariant::XL;
    double w0 = logistic_ ? kLogisticLocalInitWeight : kLinearInitWeight;

    auto add_context = [&](std::uint32_t mask) {
        Input in;
        in.pattern_mask = mask;
        in.table.resize(std::size_t{1} << std::popcount(mask));
        in.weight = w0;
        inputs_.push_back(std::move(in));
    };

    switch (variant) {
        case BpaqVariant::S:
            add_context(0x1);  // order 1: left neighbour
            stat_order_ = 0;
            break;
        case BpaqVariant::M:
        case BpaqVariant::L:
            for (int m = 1; m <= 12; ++m) add_context((1u << m) - 1);
            stat_order_ = 3;  // fourth-order context
            break;
        case BpaqVariant::XL:
            // All nonempty subsets of the four nearest causal pixels.
            for (std::uint32_t s = 1; s <= 15; ++s) add_context(s);
            break;
    }
    if (logistic_) {
        Input marwood;  // tableless input fed by the global ratio
        marwood.weight = kLogisticGlobalInitWeight;
        inputs_.push_back(std::move(marwood));
    }
}

std::uint32_t BpaqModel::causal_pattern() const {
    int x = static_cast<int>(cursor_ % width_);
    int y = static_cast<int>(cursor_ / width_);
    int needed = variant_ == BpaqVariant::S ? 1 : (variant_ == BpaqVariant::XL ? 4 : 12);
    std::uint32_t pattern = 0;
    for (int j = 0; j < needed; ++j) {
        auto [dx, dy] = kCausalOffsets[j];
        int nx = x + dx, ny = y + dy;
        if (nx < 0 || ny < 0 || nx >= width_ || ny >= height_) continue;
        if (grid_[static_cast<std::size_t>(ny) * width_ + nx])
            pattern |= 1u << j;
    }
    return pattern;
}

std::uint16_t BpaqModel::predict() {
    if (done()) throw std::logic_error("bpaq: predict past end");
    std::uint32_t pattern = causal_pattern();
    double p_global = static_cast<double>(v_remaining_) / static_cast<double>(n_remaining_);

    if (!logistic_) {
        s0_ = kEvidenceFloor;
        s1_ = kEvidenceFloor;
        for (Input& in : inputs_) {
            in.entry = &in.table[extract_bits(pattern, in.pattern_mask)];
            s0_ += in.weight * in.entry->n0;
            s1_ += in.weight * in.entry->n1;
        }
        s_ = s0_ + s1_;
        p_dyn_ = s1_ / s_;
        const Counts* st = inputs_[stat_order_].entry;
        double p_stat = smoothed(st->n0, st->n1);
        p_final_ = 0.4 * p_dyn_ + 0.2 * p_stat + 0.4 * p_global;
    } else {
        double mix = 0.0;
        for (Input& in : inputs_) {
            double p;
            if (in.table.empty()) {
                p = p_global;
            } else {
                in.entry = &in.table[extract_bits(pattern, in.pattern_mask)];
                p = smoothed(in.entry->n0, in.entry->n1);
            }
            in.stretched = stretch(p);
            mix += in.weight * in.stretched;
        }
        p_final_ = 1.0 / (1.0 + std::exp(-mix));
    }
    predicted_ = true;
    return quantize_probability(p_final_);
}

void BpaqModel::update(int bit) {
    if (!predicted_) throw std::logic_error("bpaq: update without predict");
    predicted_ = false;
    double x = bit ? 1.0 : 0.0;

    if (!logistic_) {
        for (Input& in : inputs_) {
            double n0 = in.entry->n0, n1 = in.entry->n1;
            double grad = (s_ * n1 - s1_ * (n0 + n1)) / (s0_ * s1_);
            in.weight = std::max(0.0, in.weight + (x - p_dyn_) * grad);
        }
    } else {
        for (Input& in : inputs_)
            in.weight += kLogisticRate * in.stretched * (x - p_final_);
    }

    for (Input& in : inputs_) {
        if (in.table.empty()) continue;
        if (bit) {
            in.entry->n1 += 1.0;
            if (in.entry->n0 > 2.0) in.entry->n0 /= 2.0;
        } else {
            in.entry->n0 += 1.0;
            if (in.entry->n1 > 2.0) in.entry->n1 /= 2.0;
        }
    }

    if (bit) --v_remaining_;
    --n_remaining_;
    grid_[cursor_] = bit ? 1 : 0;
    ++cursor_;

    fold_hash(static_cast<std::uint64_t>(cursor_));
    fold_hash(static_cast<std::uint64_t>(bit));
    for (const Input& in : inputs_) {
        fold_hash(in.weight);
        if (!in.table.empty()) {
            fold_hash(in.entry->n0);
            fold_hash(in.entry->n1);
        }
    }
    fold_hash(v_remaining_);
}

void BpaqModel::fold_hash(double v) { fold_hash(std::bit_cast<std::uint64_t>(v)); }

void BpaqModel::fold_hash(std::uint64_t v) {
    hash_ ^= v;
    hash_ *= 1099511628211ull;
}

std::vector<std::uint8_t> bpaq_encode(const BinaryMask& mask, BpaqVariant variant) {
    BpaqModel model(variant, mask.width(), mask.height(), mask.ones());
    ArithmeticEncoder enc;
    for (std::size_t i = 0; i < mask.size(); ++i) {
        std::uint16_t p1 = model.predict();
        int bit = mask.get(i) ? 1 : 0;
        enc.encode(bit, p1);
        model.update(bit);
    }
    return enc.finish();
}

BinaryMask bpaq_decode(std::span<const std::uint8_t> payload, int width, int height,
                       std::uint64_t ones, BpaqVariant variant) {
    BpaqModel model(variant, width, height, ones);
    ArithmeticDecoder dec(payload);
    BinaryMask mask(width, height);
    for (std::size_t i = 0; i < mask.size(); ++i) {
        std::uint16_t p1 = model.predict();
        int bit = dec.decode(p1);
        if (bit) mask.set(i, true);
        model.update(bit);
    }
    if (mask.ones() != ones)
        throw std::runtime_error("bpaq: decoded ones count mismatch");
    return mask;
}

}  // namespace sparsemask
