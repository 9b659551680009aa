#include "corpus.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>

namespace sparsemask::testsupport {

namespace {

double uniform(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

void box_blur(GrayImage& img) {
    GrayImage src = img;
    for (int y = 0; y < img.height(); ++y)
        for (int x = 0; x < img.width(); ++x) {
            double sum = 0.0;
            int n = 0;
            for (int dy = -1; dy <= 1; ++dy)
                for (int dx = -1; dx <= 1; ++dx) {
                    int nx = x + dx, ny = y + dy;
                    if (nx < 0 || ny < 0 || nx >= img.width() || ny >= img.height())
                        continue;
                    sum += src.at(nx, ny);
                    ++n;
                }
            img.at(x, y) = sum / n;
        }
}

}  // namespace

GrayImage make_desk_image(int id, int width, int height) {
    std::mt19937_64 rng(0x5eedc0deull + static_cast<std::uint64_t>(id) * 7919);
    GrayImage img(width, height);

    double gx = uniform(rng, -40.0, 40.0), gy = uniform(rng, -40.0, 40.0);
    double base = uniform(rng, 80.0, 170.0);
    for (int y = 0; y < height; ++y)
        for (int x = 0; x < width; ++x)
            img.at(x, y) = base + gx * (static_cast<double>(x) / width - 0.5) +
                           gy * (static_cast<double>(y) / height - 0.5);

    int rects = 3 + static_cast<int>(rng() % 4);
    for (int r = 0; r < rects; ++r) {
        int x0 = static_cast<int>(rng() % width), y0 = static_cast<int>(rng() % height);
        int w = 4 + static_cast<int>(rng() % (width / 2));
        int h = 4 + static_cast<int>(rng() % (height / 2));
        double level = uniform(rng, 20.0, 235.0);
        for (int y = y0; y < std::min(height, y0 + h); ++y)
            for (int x = x0; x < std::min(width, x0 + w); ++x) img.at(x, y) = level;
    }

    int disks = 2 + static_cast<int>(rng() % 3);
    for (int d = 0; d < disks; ++d) {
        double cx = uniform(rng, 0.0, width), cy = uniform(rng, 0.0, height);
        double rad = uniform(rng, 3.0, width / 6.0);
        double level = uniform(rng, 20.0, 235.0);
        for (int y = 0; y < height; ++y)
            for (int x = 0; x < width; ++x)
                if ((x - cx) * (x - cx) + (y - cy) * (y - cy) <= rad * rad)
                    img.at(x, y) = level;
    }

    box_blur(img);
    box_blur(img);
    for (double& v : img.values()) v = std::clamp(v, 0.0, 255.0);
    return img;
}

std::vector<CorpusEntry> make_desk_corpus(int count, int width, int height) {
    std::vector<CorpusEntry> corpus;
    corpus.reserve(count);
    for (int id = 0; id < count; ++id) {
        char name[32];
        std::snprintf(name, sizeof name, "desk%02d", id);
        corpus.push_back({name, make_desk_image(id, width, height)});
    }
    return corpus;
}

}  // namespace sparsemask::testsupport
