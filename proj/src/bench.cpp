#include "sparsemask/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "sparsemask/codecs.hpp"
#include "sparsemask/container.hpp"
#include "sparsemask/maskgen.hpp"
#include "sparsemask/pnm.hpp"

namespace sparsemask {

namespace {

std::uint64_t fnv1a(std::uint64_t h, const void* data, std::size_t len) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 1099511628211ull;
    }
    return h;
}

double now_ms() {
    auto t = std::chrono::steady_clock::now().time_since_epoch();
    return std::chrono::duration<double, std::milli>(t).count();
}

int worker_count(std::size_t items) {
    unsigned n = std::thread::hardware_concurrency();
    if (n == 0) n = 1;
    if (const char* env = std::getenv("SPARSEMASK_THREADS")) {
        long cap = std::strtol(env, nullptr, 10);
        if (cap >= 1 && static_cast<unsigned long>(cap) < n) n = static_cast<unsigned>(cap);
    }
    return static_cast<int>(std::min<std::size_t>(n, std::max<std::size_t>(items, 1)));
}

std::string format_density(double d) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", d);
    return buf;
}

}  // namespace

std::vector<double> BenchPlan::default_densities() {
    std::vector<double> d;
    for (int pct = 1; pct <= 10; ++pct) d.push_back(pct / 100.0);
    return d;
}

double bytes_per_mask_pixel(std::uint64_t payload_bytes, const BinaryMask& mask) {
    if (mask.ones() == 0)
        throw std::invalid_argument("bytes_per_mask_pixel: mask is empty");
    return static_cast<double>(payload_bytes) / static_cast<double>(mask.ones());
}

std::vector<CorpusEntry> load_corpus(const std::string& dir) {
    namespace fs = std::filesystem;
    std::vector<CorpusEntry> corpus;
    if (!fs::is_directory(dir))
        throw std::runtime_error("bench: corpus directory not found: " + dir);
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.is_regular_file() && e.path().extension() == ".pgm")
            files.push_back(e.path());
    std::sort(files.begin(), files.end());
    for (const auto& f : files)
        corpus.push_back({f.stem().string(), read_pgm_file(f.string())});
    if (corpus.empty())
        throw std::runtime_error("bench: no .pgm files in " + dir);
    return corpus;
}

std::uint64_t mix_seed(std::uint64_t seed, std::string_view image,
                       std::string_view distribution, double density) {
    std::uint64_t h = fnv1a(1469598103934665603ull, &seed, sizeof seed);
    h = fnv1a(h, image.data(), image.size());
    h = fnv1a(h, distribution.data(), distribution.size());
    if (density > 0.0) h = fnv1a(h, &density, sizeof density);
    return h;
}

namespace {

// Masks for one (image, distribution) pair across all plan densities.
std::vector<BinaryMask> generate_masks(const CorpusEntry& entry,
                                       const std::string& dist,
                                       const std::vector<double>& densities,
                                       std::uint64_t plan_seed) {
    const GrayImage& img = entry.image;
    std::vector<BinaryMask> masks;
    masks.reserve(densities.size());
    if (dist == "random") {
        for (double d : densities)
            masks.push_back(random_mask(img.width(), img.height(), d,
                                        mix_seed(plan_seed, entry.name, dist, d)));
    } else if (dist == "sparsify-homdiff") {
        // One trajectory, density-independent seed: each snapshot matches a
        // single-target run with the same configuration.
        SelectionConfig cfg;
        cfg.seed = mix_seed(plan_seed, entry.name, dist, 0.0);
        HomogeneousInpainter inpainter(img);
        masks = sparsify_to_targets(
            img, [&](const GrayImage&, const BinaryMask& m) { return inpainter.solve(m); },
            cfg, densities);
    } else if (dist == "densify-shepard") {
        for (double d : densities) {
            SelectionConfig cfg;
            cfg.target_density = d;
            cfg.seed = mix_seed(plan_seed, entry.name, dist, d);
            masks.push_back(densify_shepard(img, cfg));
        }
    } else {
        throw std::runtime_error("bench: unknown distribution: " + dist);
    }
    return masks;
}

}  // namespace

std::vector<BenchRecord> run_benchmark(const BenchPlan& plan) {
    if (plan.corpus.empty() || plan.codecs.empty() || plan.densities.empty() ||
        plan.distributions.empty())
        throw std::invalid_argument("bench: plan lists must be nonempty");
    for (double d : plan.densities)
        if (d <= 0.0 || d >= 1.0)
            throw std::invalid_argument("bench: densities must lie in (0, 1)");
    int reps = std::max(plan.repetitions, 3);

    std::vector<const MaskCodec*> codecs;
    for (const std::string& name : plan.codecs) {
        const MaskCodec* c = find_codec(name);
        if (!c) throw std::runtime_error("bench: unknown codec: " + name);
        codecs.push_back(c);
    }
    for (const CorpusEntry& e : plan.corpus)
        for (double d : plan.densities)
            if (std::llround(d * static_cast<double>(e.image.size())) < 1)
                throw std::invalid_argument("bench: density " + format_density(d) +
                                            " rounds to zero points on " + e.name);

    struct WorkItem {
        const CorpusEntry* entry;
        const std::string* dist;
        std::size_t record_base;
    };
    std::vector<WorkItem> items;
    std::size_t per_item = plan.densities.size() * codecs.size();
    for (const CorpusEntry& e : plan.corpus)
        for (const std::string& dist : plan.distributions)
            items.push_back({&e, &dist, items.size() * per_item});

    std::vector<BenchRecord> records(items.size() * per_item);
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::string failure;
    std::mutex failure_mutex;

    auto worker = [&]() {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= items.size() || failed.load()) return;
            const WorkItem& item = items[i];
            try {
                std::vector<BinaryMask> masks = generate_masks(
                    *item.entry, *item.dist, plan.densities, plan.seed);
                std::size_t slot = item.record_base;
                for (std::size_t di = 0; di < plan.densities.size(); ++di) {
                    const BinaryMask& mask = masks[di];
                    for (const MaskCodec* codec : codecs) {
                        BenchRecord& rec = records[slot++];
                        rec.codec = codec->name();
                        rec.image = item.entry->name;
                        rec.distribution = *item.dist;
                        rec.density = plan.densities[di];
                        rec.mask_pixels = mask.ones();

                        EncodedMask encoded;
                        double best_enc = 0.0, best_dec = 0.0;
                        for (int r = 0; r < reps; ++r) {
                            double t0 = now_ms();
                            encoded = encode_mask(mask, *codec);
                            double t1 = now_ms();
                            if (r == 0 || t1 - t0 < best_enc) best_enc = t1 - t0;
                        }
                        BinaryMask decoded(mask.width(), mask.height());
                        for (int r = 0; r < reps; ++r) {
                            double t0 = now_ms();
                            decoded = decode_mask(encoded);
                            double t1 = now_ms();
                            if (r == 0 || t1 - t0 < best_dec) best_dec = t1 - t0;
                        }
                        if (!(decoded == mask))
                            throw std::runtime_error("round-trip mismatch");

                        rec.payload_bytes = encoded.payload.size();
                        rec.total_bytes = encoded.payload.size() + kContainerHeaderSize;
                        rec.encode_ms = best_enc;
                        rec.decode_ms = best_dec;
                        std::uint64_t measured = plan.include_header_in_ratio
                                                     ? rec.total_bytes
                                                     : rec.payload_bytes;
                        rec.bytes_per_mask_pixel = bytes_per_mask_pixel(measured, mask);
                    }
                }
            } catch (const std::exception& ex) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failed.exchange(true))
                    failure = "bench: " + item.entry->name + "/" + *item.dist + ": " +
                              ex.what();
                return;
            }
        }
    };

    int threads = worker_count(items.size());
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (failed.load()) throw std::runtime_error(failure);
    return records;
}

std::vector<AggregateRow> aggregate(std::span<const BenchRecord> records,
                                    std::span<const std::string> group_by) {
    if (records.empty()) throw std::invalid_argument("aggregate: no records");
    auto key_of = [&](const BenchRecord& r) {
        std::vector<std::string> key;
        for (const std::string& field : group_by) {
            if (field == "codec") key.push_back(r.codec);
            else if (field == "image") key.push_back(r.image);
            else if (field == "distribution") key.push_back(r.distribution);
            else if (field == "density") key.push_back(format_density(r.density));
            else throw std::invalid_argument("aggregate: unknown field: " + field);
        }
        return key;
    };

    std::map<std::vector<std::string>, AggregateRow> groups;
    for (const BenchRecord& r : records) {
        AggregateRow& row = groups[key_of(r)];
        ++row.records;
        row.mean_bytes_per_mask_pixel += r.bytes_per_mask_pixel;
        row.mean_encode_ms += r.encode_ms;
        row.mean_decode_ms += r.decode_ms;
    }
    std::vector<AggregateRow> out;
    out.reserve(groups.size());
    for (auto& [key, row] : groups) {
        row.keys = key;
        double n = static_cast<double>(row.records);
        row.mean_bytes_per_mask_pixel /= n;
        row.mean_encode_ms /= n;
        row.mean_decode_ms /= n;
        out.push_back(std::move(row));
    }
    return out;
}

std::string emit_csv(std::span<const BenchRecord> records) {
    std::string out =
        "codec,image,distribution,density,mask_pixels,payload_bytes,total_bytes,"
        "encode_ms,decode_ms,bytes_per_mask_pixel\n";
    char buf[160];
    for (const BenchRecord& r : records) {
        std::snprintf(buf, sizeof buf, ",%s,%llu,%llu,%llu,%.4f,%.4f,%.6f\n",
                      format_density(r.density).c_str(),
                      static_cast<unsigned long long>(r.mask_pixels),
                      static_cast<unsigned long long>(r.payload_bytes),
                      static_cast<unsigned long long>(r.total_bytes), r.encode_ms,
                      r.decode_ms, r.bytes_per_mask_pixel);
        out += r.codec + "," + r.image + "," + r.distribution + buf;
    }
    return out;
}

std::string emit_csv(std::span<const AggregateRow> rows,
                     std::span<const std::string> group_by) {
    std::string out;
    for (const std::string& field : group_by) out += field + ",";
    out += "records,mean_bytes_per_mask_pixel,mean_encode_ms,mean_decode_ms\n";
    char buf[128];
    for (const AggregateRow& row : rows) {
        std::string line;
        for (const std::string& k : row.keys) line += k + ",";
        std::snprintf(buf, sizeof buf, "%zu,%.6f,%.4f,%.4f\n", row.records,
                      row.mean_bytes_per_mask_pixel, row.mean_encode_ms,
                      row.mean_decode_ms);
        out += line + buf;
    }
    return out;
}

}  // namespace sparsemask
