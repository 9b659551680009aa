#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "sparsemask/bench.hpp"
#include "sparsemask/codecs.hpp"
#include "sparsemask/container.hpp"
#include "sparsemask/maskgen.hpp"
#include "sparsemask/pnm.hpp"
#include "sparsemask/repr.hpp"

namespace {

using namespace sparsemask;

// Comma-separated densities; "a..b" expands at one-percentage-point steps.
std::vector<double> parse_densities(const std::string& spec) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= spec.size()) {
        std::size_t comma = spec.find(',', pos);
        std::string token = spec.substr(pos, comma == std::string::npos ? comma : comma - pos);
        pos = comma == std::string::npos ? spec.size() + 1 : comma + 1;
        if (token.empty()) continue;
        std::size_t dots = token.find("..");
        if (dots == std::string::npos) {
            out.push_back(std::stod(token));
        } else {
            double lo = std::stod(token.substr(0, dots));
            double hi = std::stod(token.substr(dots + 2));
            // Step in whole percentage points to dodge float drift.
            for (int pct = static_cast<int>(std::lround(lo * 100));
                 pct <= static_cast<int>(std::lround(hi * 100)); ++pct)
                out.push_back(pct / 100.0);
        }
    }
    if (out.empty()) throw std::runtime_error("no densities given");
    return out;
}

std::vector<std::string> split_list(const std::string& spec) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos <= spec.size()) {
        std::size_t comma = spec.find(',', pos);
        std::string token = spec.substr(pos, comma == std::string::npos ? comma : comma - pos);
        pos = comma == std::string::npos ? spec.size() + 1 : comma + 1;
        if (!token.empty()) out.push_back(token);
    }
    return out;
}

int run(int argc, char** argv) {
    CLI::App app{"sparse binary mask compression toolkit"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate a mask for an image");
    std::string gen_image, gen_dist, gen_out;
    double gen_density = 0.05, gen_p = 0.02, gen_q = 0.5;
    int gen_batch = 0;
    std::uint64_t gen_seed = 0;
    gen->add_option("--image", gen_image, "source PGM image")->required();
    gen->add_option("--dist", gen_dist, "random|sparsify|densify")->required();
    gen->add_option("--density", gen_density, "mask density as a fraction")->required();
    gen->add_option("--seed", gen_seed, "random seed");
    gen->add_option("--p", gen_p, "sparsify candidate fraction");
    gen->add_option("--q", gen_q, "sparsify removal fraction");
    gen->add_option("--batch", gen_batch, "densify points per pass (0 = auto)");
    gen->add_option("--out", gen_out, "output PBM mask")->required();

    // encode
    auto* encode = app.add_subcommand("encode", "compress a mask into an SBM1 file");
    std::string enc_codec, enc_in, enc_out;
    encode->add_option("--codec", enc_codec, "codec name")->required();
    encode->add_option("--in", enc_in, "input PBM mask")->required();
    encode->add_option("--out", enc_out, "output SBM1 file")->required();

    // decode
    auto* decode = app.add_subcommand("decode", "decompress an SBM1 file");
    std::string dec_in, dec_out;
    decode->add_option("--in", dec_in, "input SBM1 file")->required();
    decode->add_option("--out", dec_out, "output PBM mask")->required();

    // repr
    auto* repr = app.add_subcommand("repr", "dump a sparse representation");
    std::string repr_in, repr_form;
    repr->add_option("--in", repr_in, "input PBM mask")->required();
    repr->add_option("--form", repr_form, "vector|rle|coo|csr")->required();

    // entropy
    auto* entropy = app.add_subcommand("entropy", "Shannon entropy of a representation");
    std::string ent_in, ent_form;
    entropy->add_option("--in", ent_in, "input PBM mask")->required();
    entropy->add_option("--form", ent_form, "vector|rle|coo|csr")->required();

    // bench
    auto* bench = app.add_subcommand("bench", "codec x distribution x density sweep");
    std::string bench_corpus, bench_codecs, bench_densities = "0.01..0.10";
    std::string bench_dists = "random,sparsify-homdiff,densify-shepard";
    std::string bench_csv;
    std::uint64_t bench_seed = 0;
    bool bench_include_header = false;
    bench->add_option("--corpus", bench_corpus, "directory of PGM images")->required();
    bench->add_option("--codecs", bench_codecs, "comma-separated codec names")->required();
    bench->add_option("--densities", bench_densities, "list or a..b range of fractions");
    bench->add_option("--dists", bench_dists, "comma-separated distributions");
    bench->add_option("--seed", bench_seed, "plan seed");
    bench->add_option("--csv", bench_csv, "output CSV path")->required();
    bench->add_flag("--include-header", bench_include_header,
                    "count the container header in bytes-per-mask-pixel");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    if (gen->parsed()) {
        GrayImage image = read_pgm_file(gen_image);
        SelectionConfig cfg;
        cfg.target_density = gen_density;
        cfg.candidate_fraction = gen_p;
        cfg.removal_fraction = gen_q;
        cfg.batch_size = gen_batch;
        cfg.seed = gen_seed;
        BinaryMask mask(image.width(), image.height());
        if (gen_dist == "random")
            mask = random_mask(image.width(), image.height(), gen_density, gen_seed);
        else if (gen_dist == "sparsify")
            mask = sparsify_homdiff(image, cfg);
        else if (gen_dist == "densify")
            mask = densify_shepard(image, cfg);
        else
            throw std::runtime_error("unknown distribution: " + gen_dist);
        write_pbm_file(gen_out, mask);
    } else if (encode->parsed()) {
        const MaskCodec* codec = find_codec(std::string_view(enc_codec));
        if (!codec) throw std::runtime_error("unknown codec: " + enc_codec);
        BinaryMask mask = read_pbm_file(enc_in);
        write_file(enc_out, write_container(encode_mask(mask, *codec)));
    } else if (decode->parsed()) {
        auto bytes = read_file(dec_in);
        write_pbm_file(dec_out, decode_mask(read_container(bytes)));
    } else if (repr->parsed()) {
        BinaryMask mask = read_pbm_file(repr_in);
        std::string text;
        if (repr_form == "vector") {
            auto bits = vectorise_row_major(mask);
            text = format_vector(bits);
        } else if (repr_form == "rle") {
            text = format_rle(rle_encode(mask));
        } else if (repr_form == "coo") {
            text = format_coo(coo_encode(mask));
        } else if (repr_form == "csr") {
            text = format_csr(csr_encode(mask));
        } else {
            throw std::runtime_error("unknown representation form: " + repr_form);
        }
        std::printf("%s\n", text.c_str());
    } else if (entropy->parsed()) {
        BinaryMask mask = read_pbm_file(ent_in);
        auto counts = representation_histogram(mask, ent_form);
        std::printf("%.6f\n", shannon_entropy(counts));
    } else if (bench->parsed()) {
        BenchPlan plan;
        plan.corpus = load_corpus(bench_corpus);
        plan.codecs = split_list(bench_codecs);
        plan.densities = parse_densities(bench_densities);
        plan.distributions = split_list(bench_dists);
        plan.seed = bench_seed;
        plan.include_header_in_ratio = bench_include_header;
        std::vector<BenchRecord> records = run_benchmark(plan);
        std::string csv = emit_csv(records);
        write_file(bench_csv, std::span<const std::uint8_t>(
                                  reinterpret_cast<const std::uint8_t*>(csv.data()),
                                  csv.size()));
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
