#pragma once

#include <cstdint>
#include <random>

#include "sparsemask/image.hpp"

namespace sparsemask::testsupport {

// 4x4 mask used across the representation and codec tests:
//   1 0 1 0
//   0 0 0 1
//   0 1 0 0
//   0 0 1 0
inline BinaryMask make_fixture_mask() {
    BinaryMask m(4, 4);
    m.set(0, 0, true);
    m.set(2, 0, true);
    m.set(3, 1, true);
    m.set(1, 2, true);
    m.set(2, 3, true);
    return m;
}

inline BinaryMask make_bernoulli_mask(int width, int height, double density,
                                      std::mt19937_64& rng) {
    BinaryMask m(width, height);
    std::bernoulli_distribution coin(density);
    for (std::size_t i = 0; i < m.size(); ++i)
        if (coin(rng)) m.set(i, true);
    return m;
}

inline GrayImage make_noise_image(int width, int height, std::mt19937_64& rng) {
    GrayImage img(width, height);
    std::uniform_real_distribution<double> level(0.0, 255.0);
    for (double& v : img.values()) v = level(rng);
    return img;
}

}  // namespace sparsemask::testsupport
