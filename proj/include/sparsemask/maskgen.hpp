#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "sparsemask/image.hpp"
#include "sparsemask/inpaint.hpp"

namespace sparsemask {

struct SelectionConfig {
    double target_density = 0.05;    // fraction of pixels, (0, 1]
    double candidate_fraction = 0.02;  // sparsification: share of current mask tried per pass
    double removal_fraction = 0.5;     // sparsification: share of candidates removed per pass
    int batch_size = 0;  // densification points per pass; 0 = max(1, 1% of target)
    std::uint64_t seed = 0;
};

using InpaintOp = std::function<GrayImage(const GrayImage&, const BinaryMask&)>;

// Exactly round(density * width * height) points, uniform without
// replacement, reproducible for a given seed.
BinaryMask random_mask(int width, int height, double density, std::uint64_t seed);

// Starts from the full mask; per pass samples candidate_fraction of the
// current points, tentatively drops them, inpaints, and permanently drops
// the removal_fraction with the lowest squared reconstruction error (ties by
// row-major index). Stops exactly at the target count.
BinaryMask sparsify(const GrayImage& image, const InpaintOp& inpaint,
                    const SelectionConfig& config);

// One sparsification trajectory snapshotted at several descending targets;
// element i equals a single-target run at targets[i] with the same seed.
std::vector<BinaryMask> sparsify_to_targets(const GrayImage& image,
                                            const InpaintOp& inpaint,
                                            SelectionConfig config,
                                            std::span<const double> targets);

// Starts from batch_size random seed points; per pass inpaints and adds the
// batch_size unknown pixels with the largest squared error (ties by
// row-major index) until the target count is reached.
BinaryMask densify(const GrayImage& image, const InpaintOp& inpaint,
                   const SelectionConfig& config);

// Stock pairings: sparsification drives homogeneous diffusion,
// densification drives Shepard interpolation.
BinaryMask sparsify_homdiff(const GrayImage& image, const SelectionConfig& config,
                            const DiffusionSolveConfig& solver = {});
BinaryMask densify_shepard(const GrayImage& image, const SelectionConfig& config,
                           const ShepardConfig& shepard = {});

}  // namespace sparsemask
