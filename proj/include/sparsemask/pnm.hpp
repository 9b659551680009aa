#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sparsemask/image.hpp"

namespace sparsemask {

// Netpbm readers/writers. PGM covers P2 (ASCII) and P5 (raw), maxval <= 255.
// PBM covers P1 (ASCII) and P4 (packed, MSB first, rows padded to a byte
// boundary). A PBM '1' (black) is a mask point.

GrayImage read_pgm(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> write_pgm(const GrayImage& image);

BinaryMask read_pbm(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> write_pbm(const BinaryMask& mask);

GrayImage read_pgm_file(const std::string& path);
BinaryMask read_pbm_file(const std::string& path);
void write_pgm_file(const std::string& path, const GrayImage& image);
void write_pbm_file(const std::string& path, const BinaryMask& mask);

std::vector<std::uint8_t> read_file(const std::string& path);
void write_file(const std::string& path, std::span<const std::uint8_t> bytes);

}  // namespace sparsemask
