#include <vector>

#include "doctest.h"
#include "sparsemask/container.hpp"

using namespace sparsemask;

TEST_SUITE("container") {

TEST_CASE("registered ids") {
    for (std::uint8_t id = 1; id <= 11; ++id) CHECK(codec_ids::is_registered(id));
    CHECK_FALSE(codec_ids::is_registered(0));
    CHECK_FALSE(codec_ids::is_registered(12));
    CHECK_FALSE(codec_ids::is_registered(255));
}

TEST_CASE("round trip") {
    EncodedMask e;
    e.codec_id = codec_ids::kUlpaq;
    e.width = 640;
    e.height = 480;
    e.ones_count = 12345;
    e.payload = {0xde, 0xad, 0xbe, 0xef, 0x00};
    auto bytes = write_container(e);
    REQUIRE(bytes.size() == kContainerHeaderSize + e.payload.size());
    CHECK(bytes[0] == 'S');
    CHECK(bytes[1] == 'B');
    CHECK(bytes[2] == 'M');
    CHECK(bytes[3] == '1');
    CHECK(bytes[4] == codec_ids::kUlpaq);
    // u32 little endian fields
    CHECK(bytes[5] == 0x80);
    CHECK(bytes[6] == 0x02);
    EncodedMask back = read_container(bytes);
    CHECK(back.codec_id == e.codec_id);
    CHECK(back.width == e.width);
    CHECK(back.height == e.height);
    CHECK(back.ones_count == e.ones_count);
    CHECK(back.payload == e.payload);
}

TEST_CASE("empty payload round trip") {
    EncodedMask e;
    e.codec_id = codec_ids::kMarwood;
    e.width = 1;
    e.height = 1;
    e.ones_count = 0;
    auto bytes = write_container(e);
    REQUIRE(bytes.size() == kContainerHeaderSize);
    CHECK(read_container(bytes).payload.empty());
}

TEST_CASE("errors") {
    EncodedMask e;
    e.codec_id = codec_ids::kMarwood;
    e.width = 4;
    e.height = 4;
    e.ones_count = 5;
    e.payload = {1, 2, 3};
    auto bytes = write_container(e);

    auto truncated = std::vector<std::uint8_t>(bytes.begin(), bytes.begin() + 10);
    CHECK_THROWS_WITH(read_container(truncated), doctest::Contains("truncated header"));

    auto magic = bytes;
    magic[0] = 'X';
    CHECK_THROWS_WITH(read_container(magic), doctest::Contains("bad magic"));

    auto codec = bytes;
    codec[4] = 99;
    CHECK_THROWS_WITH(read_container(codec), doctest::Contains("unknown codec id"));

    auto longer = bytes;
    longer.push_back(0);
    CHECK_THROWS_WITH(read_container(longer), doctest::Contains("payload length mismatch"));
    auto shorter = std::vector<std::uint8_t>(bytes.begin(), bytes.end() - 1);
    CHECK_THROWS_WITH(read_container(shorter), doctest::Contains("payload length mismatch"));
}

}
