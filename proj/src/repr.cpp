#include "sparsemask/repr.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace sparsemask {

std::vector<std::uint8_t> vectorise_row_major(const BinaryMask& mask) {
    std::vector<std::uint8_t> bits(mask.size());
    for (std::size_t i = 0; i < mask.size(); ++i) bits[i] = mask.get(i) ? 1 : 0;
    return bits;
}

BinaryMask devectorise_row_major(std::span<const std::uint8_t> bits, int width, int height) {
    BinaryMask mask(width, height);
    if (bits.size() != mask.size())
        throw std::runtime_error("devectorise: bit count does not match dimensions");
    for (std::size_t i = 0; i < bits.size(); ++i)
        if (bits[i]) mask.set(i, true);
    return mask;
}

RunLengthSeq rle_encode(const BinaryMask& mask) {
    RunLengthSeq seq;
    seq.runs.reserve(mask.ones());
    std::uint64_t gap = 0;
    for (int x = 0; x < mask.width(); ++x) {
        for (int y = 0; y < mask.height(); ++y) {
            if (mask.get(x, y)) {
                seq.runs.push_back(gap);
                gap = 0;
            } else {
                ++gap;
            }
        }
    }
    return seq;
}

BinaryMask rle_decode(const RunLengthSeq& seq, int width, int height) {
    BinaryMask mask(width, height);
    std::uint64_t pos = 0;
    for (std::uint64_t gap : seq.runs) {
        pos += gap;
        if (pos >= mask.size())
            throw std::runtime_error("rle_decode: runs overflow the image area");
        // pos indexes the column-major scan.
        int x = static_cast<int>(pos / height);
        int y = static_cast<int>(pos % height);
        mask.set(x, y, true);
        ++pos;
    }
    return mask;
}

CooList coo_encode(const BinaryMask& mask) {
    CooList coo;
    coo.entries.reserve(mask.ones());
    for (int y = 0; y < mask.height(); ++y)
        for (int x = 0; x < mask.width(); ++x)
            if (mask.get(x, y))
                coo.entries.emplace_back(static_cast<std::uint32_t>(y + 1),
                                         static_cast<std::uint32_t>(x + 1));
    return coo;
}

BinaryMask coo_decode(const CooList& coo, int width, int height) {
    BinaryMask mask(width, height);
    for (auto [row, col] : coo.entries) {
        if (row < 1 || col < 1 || row > static_cast<std::uint32_t>(height) ||
            col > static_cast<std::uint32_t>(width))
            throw std::runtime_error("coo_decode: entry out of bounds");
        mask.set(static_cast<int>(col - 1), static_cast<int>(row - 1), true);
    }
    return mask;
}

CsrForm csr_encode(const BinaryMask& mask) {
    CsrForm csr;
    csr.column_indices.reserve(mask.ones());
    csr.row_counts.resize(mask.height(), 0);
    for (int y = 0; y < mask.height(); ++y)
        for (int x = 0; x < mask.width(); ++x)
            if (mask.get(x, y)) {
                csr.column_indices.push_back(static_cast<std::uint32_t>(x + 1));
                ++csr.row_counts[y];
            }
    return csr;
}

BinaryMask csr_decode(const CsrForm& csr, int width, int height) {
    if (csr.row_counts.size() != static_cast<std::size_t>(height))
        throw std::runtime_error("csr_decode: row count list does not match height");
    std::uint64_t total = 0;
    for (std::uint32_t c : csr.row_counts) total += c;
    if (total != csr.column_indices.size())
        throw std::runtime_error("csr_decode: counts inconsistent with column indices");
    BinaryMask mask(width, height);
    std::size_t k = 0;
    for (int y = 0; y < height; ++y) {
        for (std::uint32_t j = 0; j < csr.row_counts[y]; ++j, ++k) {
            std::uint32_t col = csr.column_indices[k];
            if (col < 1 || col > static_cast<std::uint32_t>(width))
                throw std::runtime_error("csr_decode: column index out of bounds");
            mask.set(static_cast<int>(col - 1), y, true);
        }
    }
    return mask;
}

double shannon_entropy(std::span<const std::uint64_t> counts) {
    std::uint64_t total = 0;
    for (std::uint64_t c : counts) total += c;
    if (total == 0) throw std::runtime_error("shannon_entropy: empty histogram");
    double h = 0.0;
    for (std::uint64_t c : counts) {
        if (c == 0) continue;
        double p = static_cast<double>(c) / static_cast<double>(total);
        h -= p * std::log2(p);
    }
    return h;
}

std::vector<std::uint64_t> representation_histogram(const BinaryMask& mask,
                                                    const std::string& form) {
    std::map<std::uint64_t, std::uint64_t> hist;
    if (form == "vector") {
        for (std::size_t i = 0; i < mask.size(); ++i) ++hist[mask.get(i) ? 1 : 0];
    } else if (form == "rle") {
        for (std::uint64_t r : rle_encode(mask).runs) ++hist[r];
    } else if (form == "coo") {
        for (auto [row, col] : coo_encode(mask).entries) {
            ++hist[row];
            ++hist[col];
        }
    } else if (form == "csr") {
        CsrForm csr = csr_encode(mask);
        for (std::uint32_t c : csr.column_indices) ++hist[c];
        for (std::uint32_t c : csr.row_counts) ++hist[c];
    } else {
        throw std::runtime_error("unknown representation form: " + form);
    }
    std::vector<std::uint64_t> counts;
    counts.reserve(hist.size());
    for (auto& [sym, c] : hist) counts.push_back(c);
    return counts;
}

namespace {

template <class It, class Fmt>
std::string join(It begin, It end, const char* sep, Fmt fmt) {
    std::string out;
    for (It it = begin; it != end; ++it) {
        if (it != begin) out += sep;
        out += fmt(*it);
    }
    return out;
}

std::string u64s(std::uint64_t v) { return std::to_string(v); }

}  // namespace

std::string format_vector(std::span<const std::uint8_t> bits) {
    return join(bits.begin(), bits.end(), " ",
                [](std::uint8_t b) { return std::string(b ? "1" : "0"); });
}

std::string format_rle(const RunLengthSeq& seq) {
    return join(seq.runs.begin(), seq.runs.end(), " ", u64s);
}

std::string format_coo(const CooList& coo) {
    return join(coo.entries.begin(), coo.entries.end(), ", ",
                [](const std::pair<std::uint32_t, std::uint32_t>& e) {
                    return "(" + std::to_string(e.first) + "," + std::to_string(e.second) + ")";
                });
}

std::string format_csr(const CsrForm& csr) {
    std::string cols = join(csr.column_indices.begin(), csr.column_indices.end(), " ",
                            [](std::uint32_t v) { return std::to_string(v); });
    std::string counts = join(csr.row_counts.begin(), csr.row_counts.end(), " ",
                              [](std::uint32_t v) { return std::to_string(v); });
    return cols + " | " + counts;
}

}  // namespace sparsemask
