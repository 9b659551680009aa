#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "sparsemask/bench.hpp"
#include "sparsemask/codecs.hpp"
#include "sparsemask/container.hpp"
#include "sparsemask/maskgen.hpp"
#include "sparsemask/repr.hpp"

namespace py = pybind11;
using namespace sparsemask;

namespace {

BinaryMask mask_from_bytes(int width, int height, const py::bytes& bits) {
    std::string raw = bits;
    if (raw.size() != static_cast<std::size_t>(width) * height)
        throw std::invalid_argument("bits length does not match width * height");
    BinaryMask mask(width, height);
    for (std::size_t i = 0; i < raw.size(); ++i)
        if (raw[i]) mask.set(static_cast<int>(i % width), static_cast<int>(i / width), true);
    return mask;
}

py::bytes mask_to_bytes(const BinaryMask& mask) {
    std::string raw(mask.size(), '\0');
    for (std::size_t i = 0; i < mask.size(); ++i) raw[i] = mask.get(i) ? 1 : 0;
    return py::bytes(raw);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "lossless codecs for sparse binary masks";

    m.def("codecs", [] {
        std::vector<std::string> names;
        for (const MaskCodec* codec : codec_registry()) names.emplace_back(codec->name());
        return names;
    });

    m.def(
        "encode",
        [](const std::string& codec_name, int width, int height, const py::bytes& bits) {
            const MaskCodec* codec = find_codec(std::string_view(codec_name));
            if (!codec) throw std::invalid_argument("unknown codec: " + codec_name);
            BinaryMask mask = mask_from_bytes(width, height, bits);
            auto file = write_container(encode_mask(mask, *codec));
            return py::bytes(std::string(file.begin(), file.end()));
        },
        py::arg("codec"), py::arg("width"), py::arg("height"), py::arg("bits"));

    m.def(
        "decode",
        [](const py::bytes& data) {
            std::string raw = data;
            std::vector<std::uint8_t> bytes(raw.begin(), raw.end());
            BinaryMask mask = decode_mask(read_container(bytes));
            return py::make_tuple(mask.width(), mask.height(), mask_to_bytes(mask));
        },
        py::arg("data"));

    m.def(
        "random_mask",
        [](int width, int height, double density, std::uint64_t seed) {
            return mask_to_bytes(random_mask(width, height, density, seed));
        },
        py::arg("width"), py::arg("height"), py::arg("density"), py::arg("seed") = 0);

    m.def(
        "entropy",
        [](int width, int height, const py::bytes& bits, const std::string& form) {
            BinaryMask mask = mask_from_bytes(width, height, bits);
            return shannon_entropy(representation_histogram(mask, form));
        },
        py::arg("width"), py::arg("height"), py::arg("bits"), py::arg("form"));

    m.def(
        "bytes_per_mask_pixel",
        [](std::uint64_t payload_bytes, int width, int height, const py::bytes& bits) {
            return bytes_per_mask_pixel(payload_bytes, mask_from_bytes(width, height, bits));
        },
        py::arg("payload_bytes"), py::arg("width"), py::arg("height"), py::arg("bits"));
}
