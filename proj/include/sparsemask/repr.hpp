#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sparsemask/image.hpp"

namespace sparsemask {

// Zero-gap lengths before each 1 in a column-major scan. Trailing zeros are
// implied by the image dimensions.
struct RunLengthSeq {
    std::vector<std::uint64_t> runs;
    bool operator==(const RunLengthSeq&) const = default;
};

// (row, column) pairs, 1-indexed, sorted row-major.
struct CooList {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> entries;
    bool operator==(const CooList&) const = default;
};

// Modified CSR: 1-indexed column indices scanned row-by-row plus the number
// of non-zeros in each row.
struct CsrForm {
    std::vector<std::uint32_t> column_indices;
    std::vector<std::uint32_t> row_counts;
    bool operator==(const CsrForm&) const = default;
};

std::vector<std::uint8_t> vectorise_row_major(const BinaryMask& mask);
BinaryMask devectorise_row_major(std::span<const std::uint8_t> bits, int width, int height);

RunLengthSeq rle_encode(const BinaryMask& mask);
BinaryMask rle_decode(const RunLengthSeq& seq, int width, int height);

CooList coo_encode(const BinaryMask& mask);
BinaryMask coo_decode(const CooList& coo, int width, int height);

CsrForm csr_encode(const BinaryMask& mask);
BinaryMask csr_decode(const CsrForm& csr, int width, int height);

// H = -sum p_i log2 p_i over a histogram of symbol counts. Zero counts
// contribute nothing; an all-zero histogram is an error.
double shannon_entropy(std::span<const std::uint64_t> counts);

// Histogram of the symbols a representation would emit, used for entropy
// reports: "vector" counts bits, "rle" run lengths, "coo" row and column
// indices, "csr" column indices and row counts.
std::vector<std::uint64_t> representation_histogram(const BinaryMask& mask,
                                                    const std::string& form);

// Text dumps: bits and runs space-separated, COO as "(r,c), ..." pairs,
// CSR as column indices, a pipe, then row counts.
std::string format_vector(std::span<const std::uint8_t> bits);
std::string format_rle(const RunLengthSeq& seq);
std::string format_coo(const CooList& coo);
std::string format_csr(const CsrForm& csr);

}  // namespace sparsemask
