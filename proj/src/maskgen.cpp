#include "sparsemask/maskgen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace sparsemask {

namespace {

// mt19937_64 with rejection sampling keeps draws identical across platforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t below(std::uint64_t n) {
        std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
        std::uint64_t v;
        do {
            v = gen_();
        } while (v >= limit);
        return v % n;
    }

private:
    std::mt19937_64 gen_;
};

std::uint64_t target_points(double density, std::size_t pixels, bool allow_zero) {
    if (density < 0.0 || density > 1.0)
        throw std::invalid_argument("maskgen: density must be in [0, 1]");
    auto t = static_cast<std::uint64_t>(std::llround(density * static_cast<double>(pixels)));
    if (t == 0 && !allow_zero)
        throw std::invalid_argument("maskgen: target density rounds to zero points");
    return t;
}

// First k entries of a seeded permutation of [0, n).
std::vector<std::uint32_t> sample_indices(std::uint64_t k, std::uint64_t n, Rng& rng) {
    std::vector<std::uint32_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0u);
    for (std::uint64_t i = 0; i < k; ++i)
        std::swap(idx[i], idx[i + rng.below(n - i)]);
    idx.resize(k);
    return idx;
}

std::vector<std::uint32_t> mask_points(const BinaryMask& mask) {
    std::vector<std::uint32_t> points;
    points.reserve(mask.ones());
    for (std::size_t i = 0; i < mask.size(); ++i)
        if (mask.get(i)) points.push_back(static_cast<std::uint32_t>(i));
    return points;
}

int resolve_batch(const SelectionConfig& config, std::uint64_t target) {
    if (config.batch_size > 0) return config.batch_size;
    return static_cast<int>(std::max<std::uint64_t>(
        1, static_cast<std::uint64_t>(std::ceil(0.01 * static_cast<double>(target)))));
}

}  // namespace

BinaryMask random_mask(int width, int height, double density, std::uint64_t seed) {
    BinaryMask mask(width, height);
    std::uint64_t k = target_points(density, mask.size(), /*allow_zero=*/true);
    Rng rng(seed);
    for (std::uint32_t i : sample_indices(k, mask.size(), rng)) mask.set(i, true);
    return mask;
}

std::vector<BinaryMask> sparsify_to_targets(const GrayImage& image,
                                            const InpaintOp& inpaint,
                                            SelectionConfig config,
                                            std::span<const double> targets) {
    if (config.candidate_fraction <= 0.0 || config.candidate_fraction > 1.0 ||
        config.removal_fraction <= 0.0 || config.removal_fraction > 1.0)
        throw std::invalid_argument("sparsify: fractions must be in (0, 1]");

    std::size_t n = image.size();
    struct Goal {
        std::uint64_t points;
        std::size_t slot;
    };
    std::vector<Goal> goals;
    for (std::size_t i = 0; i < targets.size(); ++i)
        goals.push_back({target_points(targets[i], n, false), i});
    // Largest target is reached first while the mask shrinks.
    std::sort(goals.begin(), goals.end(),
              [](const Goal& a, const Goal& b) { return a.points > b.points; });

    BinaryMask mask(image.width(), image.height());
    for (std::size_t i = 0; i < n; ++i) mask.set(i, true);

    std::vector<BinaryMask> out(targets.size());
    std::size_t next_goal = 0;
    while (next_goal < goals.size() && goals[next_goal].points >= mask.ones()) {
        out[goals[next_goal].slot] = mask;
        ++next_goal;
    }

    Rng rng(config.seed);
    while (next_goal < goals.size()) {
        std::uint64_t current = mask.ones();
        auto candidate_count = static_cast<std::uint64_t>(
            std::ceil(config.candidate_fraction * static_cast<double>(current)));
        // Keep the tentative mask nonempty for the inpainting operator.
        candidate_count = std::min(candidate_count, current - 1);
        if (candidate_count == 0)
            throw std::logic_error("sparsify: cannot make progress");

        std::vector<std::uint32_t> points = mask_points(mask);
        for (std::uint64_t i = 0; i < candidate_count; ++i)
            std::swap(points[i], points[i + rng.below(points.size() - i)]);
        points.resize(candidate_count);

        for (std::uint32_t c : points) mask.set(c, false);
        GrayImage recon = inpaint(image, mask);

        std::vector<std::pair<double, std::uint32_t>> ranked;
        ranked.reserve(points.size());
        for (std::uint32_t c : points) {
            double d = recon.at(c) - image.at(c);
            ranked.emplace_back(d * d, c);
        }
        std::sort(ranked.begin(), ranked.end());

        auto removal = static_cast<std::uint64_t>(
            std::ceil(config.removal_fraction * static_cast<double>(candidate_count)));
        removal = std::min(removal, current - goals.back().points);

        // Snapshot every target this pass crosses: keep its first
        // `current - points` removals, restore the rest.
        while (next_goal < goals.size() && current - goals[next_goal].points <= removal) {
            std::uint64_t need = current - goals[next_goal].points;
            BinaryMask snapshot = mask;
            for (std::uint64_t i = need; i < candidate_count; ++i)
                snapshot.set(ranked[i].second, true);
            out[goals[next_goal].slot] = std::move(snapshot);
            ++next_goal;
        }

        for (std::uint64_t i = removal; i < candidate_count; ++i)
            mask.set(ranked[i].second, true);
    }
    return out;
}

BinaryMask sparsify(const GrayImage& image, const InpaintOp& inpaint,
                    const SelectionConfig& config) {
    double t[] = {config.target_density};
    return std::move(sparsify_to_targets(image, inpaint, config, t).front());
}

BinaryMask densify(const GrayImage& image, const InpaintOp& inpaint,
                   const SelectionConfig& config) {
    std::size_t n = image.size();
    std::uint64_t target = target_points(config.target_density, n, false);
    int batch = resolve_batch(config, target);

    BinaryMask mask(image.width(), image.height());
    Rng rng(config.seed);
    std::uint64_t seeds = std::min<std::uint64_t>(batch, target);
    for (std::uint32_t i : sample_indices(seeds, n, rng)) mask.set(i, true);

    std::vector<std::pair<double, std::uint32_t>> ranked;
    while (mask.ones() < target) {
        GrayImage recon = inpaint(image, mask);
        std::uint64_t add = std::min<std::uint64_t>(batch, target - mask.ones());

        ranked.clear();
        for (std::size_t i = 0; i < n; ++i) {
            if (mask.get(i)) continue;
            double d = recon.at(i) - image.at(i);
            ranked.emplace_back(d * d, static_cast<std::uint32_t>(i));
        }
        auto mid = ranked.begin() + static_cast<std::ptrdiff_t>(add);
        std::partial_sort(ranked.begin(), mid, ranked.end(),
                          [](const auto& a, const auto& b) {
                              if (a.first != b.first) return a.first > b.first;
                              return a.second < b.second;
                          });
        for (auto it = ranked.begin(); it != mid; ++it) mask.set(it->second, true);
    }
    return mask;
}

BinaryMask sparsify_homdiff(const GrayImage& image, const SelectionConfig& config,
                            const DiffusionSolveConfig& solver) {
    HomogeneousInpainter inpainter(image, solver);
    return sparsify(image,
                    [&](const GrayImage&, const BinaryMask& m) { return inpainter.solve(m); },
                    config);
}

BinaryMask densify_shepard(const GrayImage& image, const SelectionConfig& config,
                           const ShepardConfig& shepard) {
    return densify(image,
                   [&](const GrayImage& img, const BinaryMask& m) {
                       return inpaint_shepard(img, m, shepard);
                   },
                   config);
}

}  // namespace sparsemask
