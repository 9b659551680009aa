#include "sparsemask/pnm.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace sparsemask {
namespace {

// Token scanner over a PNM header. Whitespace separates tokens; '#' starts a
// comment that runs to end of line.
struct Scanner {
    std::span<const std::uint8_t> data;
    std::size_t pos = 0;

    bool eof() const { return pos >= data.size(); }

    void skip_space() {
        while (!eof()) {
            std::uint8_t c = data[pos];
            if (c == '#') {
                while (!eof() && data[pos] != '\n') ++pos;
            } else if (std::isspace(c)) {
                ++pos;
            } else {
                break;
            }
        }
    }

    long next_int(const char* what) {
        skip_space();
        if (eof() || !std::isdigit(data[pos]))
            throw std::runtime_error(std::string("pnm: expected integer for ") + what);
        long v = 0;
        while (!eof() && std::isdigit(data[pos])) {
            v = v * 10 + (data[pos] - '0');
            if (v > 1000000000L) throw std::runtime_error("pnm: integer overflow in header");
            ++pos;
        }
        return v;
    }

    // After the last header token, exactly one whitespace byte precedes raw data.
    void skip_single_space() {
        if (eof() || !std::isspace(data[pos]))
            throw std::runtime_error("pnm: missing whitespace before raster data");
        ++pos;
    }
};

std::pair<int, int> read_dims(Scanner& s) {
    long w = s.next_int("width");
    long h = s.next_int("height");
    if (w <= 0 || h <= 0) throw std::runtime_error("pnm: non-positive dimensions");
    if (w * h > (1L << 30)) throw std::runtime_error("pnm: image too large");
    return {static_cast<int>(w), static_cast<int>(h)};
}

}  // namespace

GrayImage read_pgm(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '2' && bytes[1] != '5'))
        throw std::runtime_error("pgm: not a P2/P5 file");
    bool raw = bytes[1] == '5';
    Scanner s{bytes, 2};
    auto [w, h] = read_dims(s);
    long maxval = s.next_int("maxval");
    if (maxval <= 0) throw std::runtime_error("pgm: non-positive maxval");
    if (maxval > 255) throw std::runtime_error("pgm: maxval above 255 unsupported");

    GrayImage img(w, h);
    std::size_t n = img.size();
    if (raw) {
        s.skip_single_space();
        if (bytes.size() - s.pos < n) throw std::runtime_error("pgm: truncated raster");
        for (std::size_t i = 0; i < n; ++i) img.values()[i] = bytes[s.pos + i];
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            long v = s.next_int("sample");
            if (v > maxval) throw std::runtime_error("pgm: sample above maxval");
            img.values()[i] = static_cast<double>(v);
        }
    }
    return img;
}

std::vector<std::uint8_t> write_pgm(const GrayImage& image) {
    char header[64];
    int n = std::snprintf(header, sizeof header, "P5\n%d %d\n255\n",
                          image.width(), image.height());
    std::vector<std::uint8_t> out(header, header + n);
    out.reserve(out.size() + image.size());
    for (double v : image.values()) {
        double c = std::lround(std::min(255.0, std::max(0.0, v)));
        out.push_back(static_cast<std::uint8_t>(c));
    }
    return out;
}

BinaryMask read_pbm(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '1' && bytes[1] != '4'))
        throw std::runtime_error("pbm: not a P1/P4 file");
    bool raw = bytes[1] == '4';
    Scanner s{bytes, 2};
    auto [w, h] = read_dims(s);

    BinaryMask mask(w, h);
    if (raw) {
        s.skip_single_space();
        std::size_t row_bytes = (static_cast<std::size_t>(w) + 7) / 8;
        if (bytes.size() - s.pos < row_bytes * h)
            throw std::runtime_error("pbm: truncated raster");
        for (int y = 0; y < h; ++y) {
            const std::uint8_t* row = bytes.data() + s.pos + static_cast<std::size_t>(y) * row_bytes;
            for (int x = 0; x < w; ++x)
                if (row[x / 8] & (0x80u >> (x % 8))) mask.set(x, y, true);
        }
    } else {
        for (int y = 0; y < h; ++y) {
            for (int x = 0; x < w; ++x) {
                s.skip_space();
                if (s.eof()) throw std::runtime_error("pbm: truncated raster");
                std::uint8_t c = bytes[s.pos++];
                if (c != '0' && c != '1') throw std::runtime_error("pbm: sample must be 0 or 1");
                if (c == '1') mask.set(x, y, true);
            }
        }
    }
    return mask;
}

std::vector<std::uint8_t> write_pbm(const BinaryMask& mask) {
    char header[64];
    int n = std::snprintf(header, sizeof header, "P4\n%d %d\n",
                          mask.width(), mask.height());
    std::vector<std::uint8_t> out(header, header + n);
    std::size_t row_bytes = (static_cast<std::size_t>(mask.width()) + 7) / 8;
    out.reserve(out.size() + row_bytes * mask.height());
    for (int y = 0; y < mask.height(); ++y) {
        std::size_t base = out.size();
        out.resize(base + row_bytes, 0);
        for (int x = 0; x < mask.width(); ++x)
            if (mask.get(x, y)) out[base + x / 8] |= 0x80u >> (x % 8);
    }
    return out;
}

std::vector<std::uint8_t> read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open file: " + path);
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(f)),
                                    std::istreambuf_iterator<char>());
    return bytes;
}

void write_file(const std::string& path, std::span<const std::uint8_t> bytes) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open file for writing: " + path);
    f.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
    if (!f) throw std::runtime_error("write failed: " + path);
}

GrayImage read_pgm_file(const std::string& path) {
    auto bytes = read_file(path);
    return read_pgm(bytes);
}

BinaryMask read_pbm_file(const std::string& path) {
    auto bytes = read_file(path);
    return read_pbm(bytes);
}

void write_pgm_file(const std::string& path, const GrayImage& image) {
    write_file(path, write_pgm(image));
}

void write_pbm_file(const std::string& path, const BinaryMask& mask) {
    write_file(path, write_pbm(mask));
}

}  // namespace sparsemask
