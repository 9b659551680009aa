#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace sparsemask {

// Row-major grayscale raster. Values live in [0, 255]; stored as doubles so
// inpainted reconstructions keep fractional precision.
class GrayImage {
public:
    GrayImage() = default;
    GrayImage(int width, int height, double fill = 0.0)
        : width_(width), height_(height),
          values_(static_cast<std::size_t>(width) * height, fill) {
        if (width <= 0 || height <= 0)
            throw std::invalid_argument("GrayImage: dimensions must be positive");
    }

    int width() const { return width_; }
    int height() const { return height_; }
    std::size_t size() const { return values_.size(); }

    double at(int x, int y) const { return values_[index(x, y)]; }
    double& at(int x, int y) { return values_[index(x, y)]; }
    double at(std::size_t i) const { return values_[i]; }

    const std::vector<double>& values() const { return values_; }
    std::vector<double>& values() { return values_; }

    std::size_t index(int x, int y) const {
        return static_cast<std::size_t>(y) * width_ + x;
    }

    bool operator==(const GrayImage&) const = default;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<double> values_;
};

// Row-major bit grid; set bits are the mask points. The ones count is kept
// in sync by set().
class BinaryMask {
public:
    BinaryMask() = default;
    BinaryMask(int width, int height)
        : width_(width), height_(height),
          bits_(static_cast<std::size_t>(width) * height, 0) {
        if (width <= 0 || height <= 0)
            throw std::invalid_argument("BinaryMask: dimensions must be positive");
    }

    int width() const { return width_; }
    int height() const { return height_; }
    std::size_t size() const { return bits_.size(); }
    std::uint64_t ones() const { return ones_; }

    bool get(int x, int y) const { return bits_[index(x, y)] != 0; }
    bool get(std::size_t i) const { return bits_[i] != 0; }

    void set(int x, int y, bool v) { set(index(x, y), v); }
    void set(std::size_t i, bool v) {
        std::uint8_t nv = v ? 1 : 0;
        if (bits_[i] != nv) {
            ones_ += v ? 1 : -1;
            bits_[i] = nv;
        }
    }

    std::size_t index(int x, int y) const {
        return static_cast<std::size_t>(y) * width_ + x;
    }

    bool operator==(const BinaryMask&) const = default;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> bits_;
    std::uint64_t ones_ = 0;
};

}  // namespace sparsemask
