#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sparsemask/image.hpp"

namespace sparsemask {

struct BenchRecord {
    std::string codec;
    std::string image;
    std::string distribution;  // random | sparsify-homdiff | densify-shepard
    double density = 0.0;
    std::uint64_t mask_pixels = 0;
    std::uint64_t payload_bytes = 0;
    std::uint64_t total_bytes = 0;  // payload plus container header
    double encode_ms = 0.0;
    double decode_ms = 0.0;
    double bytes_per_mask_pixel = 0.0;
};

struct CorpusEntry {
    std::string name;
    GrayImage image;
};

struct BenchPlan {
    std::vector<CorpusEntry> corpus;
    std::vector<std::string> codecs;
    std::vector<double> densities = default_densities();
    std::vector<std::string> distributions = {"random", "sparsify-homdiff",
                                              "densify-shepard"};
    std::uint64_t seed = 0;
    int repetitions = 3;  // timing takes the best of at least 3 runs
    bool include_header_in_ratio = false;

    static std::vector<double> default_densities();  // 1% .. 10%, 1-point steps
};

double bytes_per_mask_pixel(std::uint64_t payload_bytes, const BinaryMask& mask);

// All *.pgm files under dir, sorted by filename.
std::vector<CorpusEntry> load_corpus(const std::string& dir);

// Runs the full sweep. Size fields are deterministic for a fixed plan seed;
// every decode is verified against the generated mask before a record is
// emitted. Honors the SPARSEMASK_THREADS cap.
std::vector<BenchRecord> run_benchmark(const BenchPlan& plan);

struct AggregateRow {
    std::vector<std::string> keys;
    std::size_t records = 0;
    double mean_bytes_per_mask_pixel = 0.0;
    double mean_encode_ms = 0.0;
    double mean_decode_ms = 0.0;
};

// group_by lists record fields: codec, image, distribution, density.
std::vector<AggregateRow> aggregate(std::span<const BenchRecord> records,
                                    std::span<const std::string> group_by);

std::string emit_csv(std::span<const BenchRecord> records);
std::string emit_csv(std::span<const AggregateRow> rows,
                     std::span<const std::string> group_by);

// Deterministic per-stream seed derived from the plan seed and the tuple
// identity. Sparsification omits the density so one trajectory serves every
// target; see sparsify_to_targets.
std::uint64_t mix_seed(std::uint64_t seed, std::string_view image,
                       std::string_view distribution, double density);

}  // namespace sparsemask
