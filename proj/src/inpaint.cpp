#include "sparsemask/inpaint.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace sparsemask {

namespace {

void check_dims(const GrayImage& image, const BinaryMask& mask) {
    if (image.width() != mask.width() || image.height() != mask.height())
        throw std::invalid_argument("inpaint: image and mask dimensions differ");
    if (mask.ones() == 0)
        throw std::invalid_argument("inpaint: mask is empty");
}

std::pair<double, double> known_range(const GrayImage& image, const BinaryMask& mask) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (std::size_t i = 0; i < mask.size(); ++i) {
        if (!mask.get(i)) continue;
        lo = std::min(lo, image.at(i));
        hi = std::max(hi, image.at(i));
    }
    return {lo, hi};
}

// Conjugate gradients on the unknown pixels of the mirrored 5-point Laplace
// system. Vectors live on the full grid with zeros at known pixels.
class LaplaceSystem {
public:
    LaplaceSystem(const GrayImage& image, const BinaryMask& mask)
        : w_(image.width()), h_(image.height()), mask_(&mask) {
        unknowns_.reserve(mask.size() - mask.ones());
        for (std::size_t i = 0; i < mask.size(); ++i)
            if (!mask.get(i)) unknowns_.push_back(i);

        b_.assign(mask.size(), 0.0);
        for (std::size_t i : unknowns_) {
            int x = static_cast<int>(i % w_), y = static_cast<int>(i / w_);
            double rhs = 0.0;
            for_neighbours(x, y, [&](std::size_t j) {
                if (mask.get(j)) rhs += image.at(j);
            });
            b_[i] = rhs;
        }
    }

    // y = A x: degree(p) * x_p - sum of unknown in-image neighbours.
    void apply(const std::vector<double>& x, std::vector<double>& y) const {
        for (std::size_t i : unknowns_) {
            int px = static_cast<int>(i % w_), py = static_cast<int>(i / w_);
            double acc = 0.0;
            int degree = 0;
            for_neighbours(px, py, [&](std::size_t j) {
                ++degree;
                if (!mask_->get(j)) acc += x[j];
            });
            y[i] = degree * x[i] - acc;
        }
    }

    const std::vector<std::size_t>& unknowns() const { return unknowns_; }
    const std::vector<double>& rhs() const { return b_; }

private:
    template <class F>
    void for_neighbours(int x, int y, F&& f) const {
        if (x > 0) f(idx(x - 1, y));
        if (x + 1 < w_) f(idx(x + 1, y));
        if (y > 0) f(idx(x, y - 1));
        if (y + 1 < h_) f(idx(x, y + 1));
    }

    std::size_t idx(int x, int y) const { return static_cast<std::size_t>(y) * w_ + x; }

    int w_, h_;
    const BinaryMask* mask_;
    std::vector<std::size_t> unknowns_;
    std::vector<double> b_;
};

double dot(const std::vector<std::size_t>& support, const std::vector<double>& a,
           const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i : support) s += a[i] * b[i];
    return s;
}

// Solves in place; x holds the initial guess at unknown pixels.
void conjugate_gradients(const LaplaceSystem& sys, std::vector<double>& x,
                         const DiffusionSolveConfig& config) {
    const auto& unknowns = sys.unknowns();
    const auto& b = sys.rhs();
    std::size_t n = x.size();

    std::vector<double> r(n, 0.0), p(n, 0.0), ap(n, 0.0);
    sys.apply(x, ap);
    for (std::size_t i : unknowns) r[i] = b[i] - ap[i];
    p = r;

    double b_norm = std::sqrt(dot(unknowns, b, b));
    if (b_norm == 0.0) {
        for (std::size_t i : unknowns) x[i] = 0.0;
        return;
    }
    // Solve slightly below the contract tolerance; the max-principle clamp
    // applied afterwards may perturb the residual marginally.
    double target = 0.5 * config.residual_tolerance * b_norm;
    double rr = dot(unknowns, r, r);

    for (int it = 0; it < config.max_iterations; ++it) {
        if (std::sqrt(rr) <= target) return;
        sys.apply(p, ap);
        double alpha = rr / dot(unknowns, p, ap);
        for (std::size_t i : unknowns) {
            x[i] += alpha * p[i];
            r[i] -= alpha * ap[i];
        }
        double rr_next = dot(unknowns, r, r);
        double beta = rr_next / rr;
        rr = rr_next;
        for (std::size_t i : unknowns) p[i] = r[i] + beta * p[i];
    }
    if (std::sqrt(rr) > config.residual_tolerance * b_norm)
        throw std::runtime_error(
            "inpaint: no convergence within " + std::to_string(config.max_iterations) +
            " iterations, relative residual " + std::to_string(std::sqrt(rr) / b_norm));
}

GrayImage solve_homogeneous(const GrayImage& image, const BinaryMask& mask,
                            const DiffusionSolveConfig& config, const GrayImage* warm) {
    check_dims(image, mask);
    if (config.residual_tolerance <= 0.0 || config.max_iterations < 1)
        throw std::invalid_argument("inpaint: invalid solver configuration");

    auto [lo, hi] = known_range(image, mask);
    LaplaceSystem sys(image, mask);

    std::vector<double> x(mask.size(), 0.0);
    double mean = 0.0;
    for (std::size_t i = 0; i < mask.size(); ++i)
        if (mask.get(i)) mean += image.at(i);
    mean /= static_cast<double>(mask.ones());
    for (std::size_t i : sys.unknowns()) x[i] = warm ? warm->at(i) : mean;

    conjugate_gradients(sys, x, config);

    GrayImage out(image);
    for (std::size_t i : sys.unknowns())
        out.values()[i] = std::clamp(x[i], lo, hi);
    return out;
}

}  // namespace

GrayImage inpaint_homogeneous(const GrayImage& image, const BinaryMask& mask,
                              const DiffusionSolveConfig& config) {
    return solve_homogeneous(image, mask, config, nullptr);
}

HomogeneousInpainter::HomogeneousInpainter(GrayImage image, DiffusionSolveConfig config)
    : image_(std::move(image)), config_(config) {}

const GrayImage& HomogeneousInpainter::solve(const BinaryMask& mask) {
    solution_ = solve_homogeneous(image_, mask, config_, warm_ ? &solution_ : nullptr);
    warm_ = true;
    return solution_;
}

double shepard_sigma(int width, int height, std::uint64_t mask_points) {
    if (mask_points == 0) throw std::invalid_argument("shepard: mask is empty");
    constexpr double kPi = 3.14159265358979323846;
    return std::sqrt(static_cast<double>(width) * height /
                     (kPi * static_cast<double>(mask_points)));
}

GrayImage inpaint_shepard(const GrayImage& image, const BinaryMask& mask,
                          const ShepardConfig& config) {
    check_dims(image, mask);
    if (config.truncation_radius_in_sigmas <= 0.0)
        throw std::invalid_argument("shepard: truncation radius must be positive");

    int w = image.width(), h = image.height();
    double sigma = shepard_sigma(w, h, mask.ones());
    double radius = config.truncation_radius_in_sigmas * sigma;
    double r2 = radius * radius;
    int reach = static_cast<int>(radius);

    // Weights depend only on the squared offset.
    std::vector<double> weight(static_cast<std::size_t>(r2) + 1);
    for (std::size_t d2 = 0; d2 < weight.size(); ++d2)
        weight[d2] = std::exp(-static_cast<double>(d2) / (2.0 * sigma * sigma));

    std::vector<double> num(image.size(), 0.0), den(image.size(), 0.0);
    std::vector<std::size_t> points;
    points.reserve(mask.ones());
    for (std::size_t i = 0; i < mask.size(); ++i)
        if (mask.get(i)) points.push_back(i);

    // Accumulating offsets from a reference value keeps constant inputs
    // bit-exact: every term is then a true zero.
    double reference = image.at(points.front());
    auto [lo, hi] = known_range(image, mask);

    for (std::size_t q : points) {
        int qx = static_cast<int>(q % w), qy = static_cast<int>(q / w);
        double value = image.at(q) - reference;
        int y0 = std::max(0, qy - reach), y1 = std::min(h - 1, qy + reach);
        int x0 = std::max(0, qx - reach), x1 = std::min(w - 1, qx + reach);
        for (int y = y0; y <= y1; ++y) {
            int dy2 = (y - qy) * (y - qy);
            for (int x = x0; x <= x1; ++x) {
                int d2 = (x - qx) * (x - qx) + dy2;
                if (d2 > r2) continue;
                std::size_t p = static_cast<std::size_t>(y) * w + x;
                num[p] += weight[d2] * value;
                den[p] += weight[d2];
            }
        }
    }

    GrayImage out(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            std::size_t p = static_cast<std::size_t>(y) * w + x;
            if (mask.get(p)) {
                out.values()[p] = image.at(p);
            } else if (den[p] > 0.0) {
                out.values()[p] = std::clamp(reference + num[p] / den[p], lo, hi);
            } else {
                // Empty truncation window: copy the nearest mask point.
                std::size_t best = points.front();
                long best_d2 = std::numeric_limits<long>::max();
                for (std::size_t q : points) {
                    long dx = static_cast<long>(q % w) - x;
                    long dy = static_cast<long>(q / w) - y;
                    long d2 = dx * dx + dy * dy;
                    if (d2 < best_d2) {
                        best_d2 = d2;
                        best = q;
                    }
                }
                out.values()[p] = image.at(best);
            }
        }
    }
    return out;
}

double mse(const GrayImage& a, const GrayImage& b) {
    if (a.width() != b.width() || a.height() != b.height())
        throw std::invalid_argument("mse: dimension mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double d = a.at(i) - b.at(i);
        s += d * d;
    }
    return s / static_cast<double>(a.size());
}

}  // namespace sparsemask
