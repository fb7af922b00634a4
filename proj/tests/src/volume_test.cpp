#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "kgrid/volume.hpp"
#include "test_support.hpp"

using namespace kgrid;
using namespace kgridtest;

namespace {

// Brute-force ball membership, shared by no production code.
std::uint64_t ball_count_oracle(const Space& s, const std::vector<std::uint64_t>& c,
                                std::uint64_t r, bool inclusive) {
    const int n = s.dimension();
    std::uint64_t count = 0;
    std::vector<std::uint64_t> x(static_cast<std::size_t>(n), 0);
    for (;;) {
        std::uint64_t d2 = 0;
        for (int i = 0; i < n; ++i) {
            const std::int64_t d = static_cast<std::int64_t>(x[static_cast<std::size_t>(i)]) -
                                   static_cast<std::int64_t>(c[static_cast<std::size_t>(i)]);
            d2 += static_cast<std::uint64_t>(d * d);
        }
        if (inclusive ? d2 <= r * r : d2 < r * r) ++count;
        int i = 0;
        for (; i < n; ++i) {
            if (x[static_cast<std::size_t>(i)] < s.coord_max(i)) {
                ++x[static_cast<std::size_t>(i)];
                break;
            }
            x[static_cast<std::size_t>(i)] = 0;
        }
        if (i == n) break;
    }
    return count;
}

}  // namespace

TEST_CASE("small ball cardinalities") {
    Space s3({15, 15, 15});
    CHECK(digital_ball(s3, {8, 8, 8}, 0).spels.cardinality() == 0);
    CHECK(digital_ball(s3, {8, 8, 8}, 1).spels.cardinality() == 7);
    CHECK(digital_ball(s3, {8, 8, 8}, 2).spels.cardinality() == 33);
    CHECK(digital_ball(s3, {8, 8, 8}, 1, BallPredicate::strict).spels.cardinality() == 1);
    CHECK(digital_ball(s3, {8, 8, 8}, 2, BallPredicate::strict).spels.cardinality() == 27);

    Space s2({15, 15});
    CHECK(digital_ball(s2, {8, 8}, 2).spels.cardinality() == 13);
    CHECK(digital_ball(s2, {8, 8}, 2, BallPredicate::strict).spels.cardinality() == 9);
}

TEST_CASE("balls match the brute-force predicate") {
    std::mt19937_64 rng(0xBA11);
    for (int n = 2; n <= 4; ++n) {
        Space s(std::vector<std::uint64_t>(static_cast<std::size_t>(n), 15));
        const std::vector<std::uint64_t> c(static_cast<std::size_t>(n), 8);
        for (std::uint64_t r = 0; r <= 6; ++r) {
            const VolumeImage inc = digital_ball(s, c, r);
            const VolumeImage str = digital_ball(s, c, r, BallPredicate::strict);
            if (r == 0) {
                CHECK(inc.spels.empty());
                CHECK(str.spels.empty());
                continue;
            }
            CHECK(inc.spels.cardinality() == ball_count_oracle(s, c, r, true));
            CHECK(str.spels.cardinality() == ball_count_oracle(s, c, r, false));

            // the two predicates differ exactly at squared distance r^2
            const std::uint64_t at_r = ball_count_oracle(s, c, r, true) -
                                       ball_count_oracle(s, c, r, false);
            CHECK(inc.spels.cardinality() - str.spels.cardinality() == at_r);

            // spot-check membership, not just cardinality
            for (int probe = 0; probe < 30; ++probe) {
                std::vector<std::uint64_t> x(static_cast<std::size_t>(n));
                std::uint64_t d2 = 0;
                for (int i = 0; i < n; ++i) {
                    x[static_cast<std::size_t>(i)] = 8 - r + rng() % (2 * r + 1);
                    const std::int64_t d =
                        static_cast<std::int64_t>(x[static_cast<std::size_t>(i)]) - 8;
                    d2 += static_cast<std::uint64_t>(d * d);
                }
                CHECK(inc.spels.contains(s.make_spel(x)) == (d2 <= r * r));
                CHECK(str.spels.contains(s.make_spel(x)) == (d2 < r * r));
            }
        }
    }
}

TEST_CASE("balls are reflection-symmetric about the center") {
    Space s({31, 31, 31});
    const VolumeImage ball = digital_ball(s, {16, 16, 16}, 9);
    ball.spels.for_each_code([&](std::uint64_t code) {
        const Cell c{code};
        for (int axis = 0; axis < 3; ++axis) {
            std::vector<std::uint64_t> m = s.coords(c);
            m[static_cast<std::size_t>(axis)] =
                32 - m[static_cast<std::size_t>(axis)];
            CHECK(ball.spels.contains(s.make_spel(m)));
        }
    });
}

TEST_CASE("ball margins") {
    Space s({15, 15, 15});
    CHECK_NOTHROW(digital_ball(s, {8, 8, 8}, 6));
    CHECK_THROWS_AS(digital_ball(s, {8, 8, 8}, 7), BallTouchesBorder);
    CHECK_THROWS_AS(digital_ball(s, {8, 8, 8}, 8), BallTouchesBorder);
    CHECK_THROWS_AS(digital_ball(s, {2, 8, 8}, 2), BallTouchesBorder);
    CHECK_NOTHROW(digital_ball(s, {3, 8, 8}, 2));
    CHECK_THROWS_AS(digital_ball(s, {8, 8}, 2), WrongDimension);
}

TEST_CASE("volume bytes are exactly the documented layout") {
    Space s({3, 1});
    VolumeImage img = make_volume(s);
    img.spels.add(s.make_spel({0, 0}));
    img.spels.add(s.make_spel({3, 1}));

    std::ostringstream out;
    write_volume(out, img);
    const std::string bytes = out.str();
    const std::string header = "CUBV1 2 4 2\n";
    REQUIRE(bytes.size() == header.size() + 1);
    CHECK(bytes.substr(0, header.size()) == header);
    CHECK(static_cast<unsigned char>(bytes.back()) == 0x81);

    std::istringstream in(bytes);
    const VolumeImage back = read_volume(in);
    CHECK(back.space == s);
    CHECK(back.spels == img.spels);
}

TEST_CASE("volume round trip on random images") {
    std::mt19937_64 rng(0xCBA);
    for (std::initializer_list<std::uint64_t> bounds :
         {std::initializer_list<std::uint64_t>{15, 15},
          std::initializer_list<std::uint64_t>{5, 9, 6},
          std::initializer_list<std::uint64_t>{2, 3, 2, 3}}) {
        Space s(bounds);
        for (int trial = 0; trial < 10; ++trial) {
            VolumeImage img = make_volume(s);
            const double density = 0.05 + 0.1 * static_cast<double>(trial);
            std::bernoulli_distribution keep(density);
            // fill anywhere, border included: the format covers the whole box
            std::vector<std::uint64_t> x(bounds.size(), 0);
            for (;;) {
                if (keep(rng)) img.spels.add(s.make_spel(x));
                std::size_t i = 0;
                while (i < x.size() && x[i] == s.coord_max(static_cast<int>(i)))
                    x[i++] = 0;
                if (i == x.size()) break;
                ++x[i];
            }
            std::ostringstream out;
            write_volume(out, img);
            std::istringstream in(out.str());
            const VolumeImage back = read_volume(in);
            CHECK(back.space == s);
            CHECK(back.spels == img.spels);
        }
    }
}

TEST_CASE("volume file round trip") {
    const std::filesystem::path path =
        std::filesystem::temp_directory_path() / "kgrid_volume_test.cub";
    Space s({15, 15, 15});
    const VolumeImage img = digital_ball(s, {8, 8, 8}, 5);
    write_volume_file(path, img);
    const VolumeImage back = read_volume_file(path);
    CHECK(back.space == s);
    CHECK(back.spels == img.spels);
    std::filesystem::remove(path);
}

TEST_CASE("volume header validation") {
    auto read_str = [](const std::string& text) {
        std::istringstream in(text);
        return read_volume(in);
    };
    CHECK_THROWS_AS(read_str("XUBV1 2 4 2\n\x81"), BadMagic);
    CHECK_THROWS_AS(read_str(""), BadMagic);
    CHECK_THROWS_AS(read_str("CUBV1 0\n"), HeaderMismatch);
    CHECK_THROWS_AS(read_str("CUBV1 2 4\n"), HeaderMismatch);
    CHECK_THROWS_AS(read_str("CUBV1 2 4 0\n"), HeaderMismatch);
    CHECK_THROWS_AS(read_str("CUBV1 2 4 2"), HeaderMismatch);
    CHECK_THROWS_AS(read_str("CUBV1 2 4 2 \n\x81"), HeaderMismatch);
    CHECK_THROWS_AS(read_str("CUBV1 2 4 2\n"), TruncatedPayload);
    CHECK_THROWS_AS(read_str("CUBV1 2 16 16\n too short"), TruncatedPayload);
}

TEST_CASE("threshold import") {
    const std::vector<std::uint64_t> sizes = {3, 2};

    const std::vector<std::uint8_t> zeros(6, 0);
    CHECK(threshold_import(zeros, sizes, 1).spels.empty());

    const std::vector<std::uint8_t> bright(6, 255);
    const VolumeImage full = threshold_import(bright, sizes, 1);
    CHECK(full.spels.cardinality() == 6);

    std::vector<std::uint8_t> one(6, 0);
    one[4] = 200;  // x0-fastest: index 4 = (1, 1)
    const VolumeImage single = threshold_import(one, sizes, 100);
    CHECK(single.spels.cardinality() == 1);
    CHECK(single.spels.contains(single.space.make_spel({1, 1})));

    CHECK_THROWS_AS(threshold_import(zeros, std::vector<std::uint64_t>{4, 2}, 1),
                    SizeMismatch);

    // threshold is inclusive
    std::vector<std::uint8_t> edge = {99, 100, 101, 0, 0, 0};
    CHECK(threshold_import(edge, sizes, 100).spels.cardinality() == 2);
}

TEST_CASE("occupied bounds") {
    Space s({15, 15});
    LutCharSet empty_set(s, CellFamily::spels(s));
    CHECK_FALSE(spel_bounds(s, empty_set).has_value());

    const VolumeImage ball = digital_ball(s, {8, 8}, 2);
    const auto bounds = spel_bounds(s, ball.spels);
    REQUIRE(bounds.has_value());
    CHECK(bounds->first == std::vector<std::uint64_t>{6, 6});
    CHECK(bounds->second == std::vector<std::uint64_t>{10, 10});
}
