#pragma once

#include <cstdint>

#include "sparsemask/image.hpp"

namespace sparsemask {

struct DiffusionSolveConfig {
    double residual_tolerance = 1e-6;  // relative to the right-hand side
    int max_iterations = 10000;
};

// Steady-state homogeneous diffusion: at unknown pixels the 5-point
// Laplacian vanishes (Neumann mirroring at image borders), known pixels keep
// their values exactly, and the result stays within [min, max] of the known
// values.
GrayImage inpaint_homogeneous(const GrayImage& image, const BinaryMask& mask,
                              const DiffusionSolveConfig& config = {});

// Reusable solver that warm-starts each solve from the previous solution;
// sparsification shrinks the mask gradually, so successive steady states are
// close and conjugate gradients converge in a few sweeps.
class HomogeneousInpainter {
public:
    explicit HomogeneousInpainter(GrayImage image, DiffusionSolveConfig config = {});
    const GrayImage& solve(const BinaryMask& mask);

private:
    GrayImage image_;
    DiffusionSolveConfig config_;
    GrayImage solution_;
    bool warm_ = false;
};

struct ShepardConfig {
    double truncation_radius_in_sigmas = 4.0;
};

// sigma adapted to the mask density: sqrt((width*height)/(pi*|K|)).
double shepard_sigma(int width, int height, std::uint64_t mask_points);

// Truncated-Gaussian-weighted average of the mask values within the
// truncation disc. Known pixels keep their input values; a pixel whose disc
// holds no mask point takes the nearest mask point's value.
GrayImage inpaint_shepard(const GrayImage& image, const BinaryMask& mask,
                          const ShepardConfig& config = {});

double mse(const GrayImage& a, const GrayImage& b);

}  // namespace sparsemask
