#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "kgrid/charset_io.hpp"
#include "kgrid/mesh.hpp"
#include "kgrid/volume.hpp"
#include "test_support.hpp"

using namespace kgrid;
using namespace kgridtest;

namespace {

struct OffMesh {
    std::vector<std::array<std::int64_t, 3>> vertices;
    std::vector<std::array<std::uint32_t, 4>> faces;
};

OffMesh parse_off(const std::string& text) {
    std::istringstream in(text);
    std::string magic;
    REQUIRE((in >> magic));
    REQUIRE(magic == "OFF");
    std::size_t nv = 0, nf = 0, ne = 0;
    REQUIRE((in >> nv >> nf >> ne));
    OffMesh mesh;
    mesh.vertices.resize(nv);
    for (auto& v : mesh.vertices) REQUIRE((in >> v[0] >> v[1] >> v[2]));
    mesh.faces.resize(nf);
    for (auto& f : mesh.faces) {
        int arity = 0;
        REQUIRE((in >> arity));
        REQUIRE(arity == 4);
        REQUIRE((in >> f[0] >> f[1] >> f[2] >> f[3]));
    }
    return mesh;
}

// Signed volume enclosed by the quad mesh (origin-based tetrahedra); equals
// the spel count exactly when every quad is wound outward.
double signed_volume(const OffMesh& mesh) {
    auto det = [&](std::uint32_t a, std::uint32_t b, std::uint32_t c) {
        const auto& va = mesh.vertices[a];
        const auto& vb = mesh.vertices[b];
        const auto& vc = mesh.vertices[c];
        return static_cast<double>(
            va[0] * (vb[1] * vc[2] - vb[2] * vc[1]) -
            va[1] * (vb[0] * vc[2] - vb[2] * vc[0]) +
            va[2] * (vb[0] * vc[1] - vb[1] * vc[0]));
    };
    double six_v = 0;
    for (const auto& f : mesh.faces) {
        six_v += det(f[0], f[1], f[2]);
        six_v += det(f[0], f[2], f[3]);
    }
    return six_v / 6.0;
}

void check_watertight_coherent(const OffMesh& mesh) {
    // every undirected edge shared by exactly two quads, traversed once in
    // each direction
    std::map<std::pair<std::uint32_t, std::uint32_t>, int> directed;
    for (const auto& f : mesh.faces) {
        for (int k = 0; k < 4; ++k) {
            const std::uint32_t a = f[static_cast<std::size_t>(k)];
            const std::uint32_t b = f[static_cast<std::size_t>((k + 1) % 4)];
            ++directed[{a, b}];
        }
    }
    for (const auto& [edge, count] : directed) {
        CHECK(count == 1);
        const auto rev = directed.find({edge.second, edge.first});
        REQUIRE(rev != directed.end());
        CHECK(rev->second == 1);
    }
}

LutCharSet boundary_of_ball(const Space& s, std::initializer_list<std::uint64_t> center,
                            std::uint64_t r) {
    const VolumeImage img = digital_ball(s, center, r);
    LutCharSet oriented(s, CellFamily::oriented_surfels(s));
    object_boundary(s, img.spels).for_each_code(
        [&](std::uint64_t code) { oriented.add(SignedCell{code}); });
    return oriented;
}

}  // namespace

TEST_CASE("quad export of one voxel") {
    Space s({15, 15, 15});
    LutCharSet o(s, CellFamily::spels(s));
    o.add(s.make_spel({5, 5, 5}));
    const SignedCellSet bd = object_boundary(s, o);
    LutCharSet oriented(s, CellFamily::oriented_surfels(s));
    bd.for_each_code([&](std::uint64_t code) { oriented.add(SignedCell{code}); });

    const std::string off = export_mesh(oriented, MeshFormat::off_quads);
    const OffMesh mesh = parse_off(off);
    CHECK(mesh.vertices.size() == 8);
    CHECK(mesh.faces.size() == 6);
    for (const auto& v : mesh.vertices) {
        for (int i = 0; i < 3; ++i) {
            CHECK(v[static_cast<std::size_t>(i)] >= 5);
            CHECK(v[static_cast<std::size_t>(i)] <= 6);
        }
    }
    check_watertight_coherent(mesh);
    CHECK(signed_volume(mesh) == doctest::Approx(1.0));
}

TEST_CASE("quad export of a ball is watertight and encloses the object") {
    Space s({31, 31, 31});
    const LutCharSet oriented = boundary_of_ball(s, {16, 16, 16}, 7);
    const VolumeImage ball = digital_ball(s, {16, 16, 16}, 7);

    const OffMesh mesh = parse_off(export_mesh(oriented, MeshFormat::off_quads));
    CHECK(mesh.faces.size() == oriented.cardinality());
    check_watertight_coherent(mesh);
    CHECK(signed_volume(mesh) ==
          doctest::Approx(static_cast<double>(ball.spels.cardinality())));
}

TEST_CASE("quad export accepts unsigned surfel sets") {
    Space s({15, 15, 15});
    LutCharSet o(s, CellFamily::spels(s));
    o.add(s.make_spel({5, 5, 5}));
    const LutCharSet unsigned_bd = scan_full(s, o);
    const OffMesh mesh = parse_off(export_mesh(unsigned_bd, MeshFormat::off_quads));
    CHECK(mesh.vertices.size() == 8);
    CHECK(mesh.faces.size() == 6);
}

TEST_CASE("segment export of one pixel") {
    Space s({15, 15});
    LutCharSet o(s, CellFamily::spels(s));
    o.add(s.make_spel({5, 5}));
    const LutCharSet bd = scan_full(s, o);
    const std::string svg = export_mesh(bd, MeshFormat::svg_segments);

    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("viewBox=\"0 0 16 16\"") != std::string::npos);
    std::size_t paths = 0;
    for (std::size_t pos = svg.find("<path "); pos != std::string::npos;
         pos = svg.find("<path ", pos + 1))
        ++paths;
    CHECK(paths == 4);
    CHECK(svg.rfind("</svg>\n") == svg.size() - 7);
}

TEST_CASE("khalimsky csv lists cells in code order") {
    Space s({15, 15});
    LutCharSet o(s, CellFamily::spels(s));
    o.add(s.make_spel({2, 3}));
    LutCharSet oriented(s, CellFamily::oriented_surfels(s));
    object_boundary(s, o).for_each_code(
        [&](std::uint64_t code) { oriented.add(SignedCell{code}); });

    CHECK(export_mesh(oriented, MeshFormat::csv_khalimsky) ==
          "+,5,6\n-,5,8\n+,6,7\n-,4,7\n");

    // unsigned sets render with a plain positive sign
    const LutCharSet shadow = scan_full(s, o);
    const std::string csv = export_mesh(shadow, MeshFormat::csv_khalimsky);
    CHECK(csv == "+,5,6\n+,5,8\n+,4,7\n+,6,7\n");
}

TEST_CASE("csv line count equals cardinality in any dimension") {
    Space s({7, 7, 7, 7});
    std::mt19937_64 rng(321);
    const LutCharSet o = random_object(s, rng, 0.3);
    const LutCharSet bd = scan_full(s, o);
    const std::string csv = export_mesh(bd, MeshFormat::csv_khalimsky);
    const std::size_t lines =
        static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n'));
    CHECK(lines == bd.cardinality());
}

TEST_CASE("mesh export rejects wrong inputs") {
    Space s2({15, 15});
    Space s3({15, 15, 15});
    LutCharSet spels2(s2, CellFamily::spels(s2));
    LutCharSet surf2(s2, CellFamily::surfels(s2));
    LutCharSet surf3(s3, CellFamily::surfels(s3));

    CHECK_THROWS_AS(export_mesh(spels2, MeshFormat::csv_khalimsky), FamilyMismatch);
    CHECK_THROWS_AS(export_mesh(surf2, MeshFormat::off_quads), WrongDimension);
    CHECK_THROWS_AS(export_mesh(surf3, MeshFormat::svg_segments), WrongDimension);
}

TEST_CASE("charset snapshot header") {
    Space s({15, 15});
    LutCharSet set(s, CellFamily::oriented_surfels(s));
    set.add(s.make_cell(0b01, Sign::positive, {2, 3}));
    std::ostringstream out;
    write_charset(out, set);
    const std::string bytes = out.str();
    const std::string header = "CSET1 lut-s1 2 15 15\n";
    REQUIRE(bytes.size() == header.size() + set.words().size() * 8);
    CHECK(bytes.substr(0, header.size()) == header);

    MinCharSet min_set(s, CellFamily::spels(s));
    std::ostringstream out2;
    write_charset(out2, min_set);
    CHECK(out2.str().substr(0, 20) == "CSET1 min-u2 2 15 15");
}

TEST_CASE("charset snapshots round trip bit-exact") {
    std::mt19937_64 rng(888);
    Space s({5, 9, 6});

    auto fill = [&](auto& set, auto make) {
        for (int i = 0; i < 200; ++i) make(set);
        return set.cardinality();
    };

    // lut container, oriented surfel family
    {
        LutCharSet set(s, CellFamily::oriented_surfels(s));
        fill(set, [&](LutCharSet& t) {
            const int orth = static_cast<int>(rng() % 3);
            const Sign sg = (rng() & 1) ? Sign::positive : Sign::negative;
            t.add(s.make_surfel(orth, sg, {rng() % 6, rng() % 10, rng() % 7}));
        });
        std::ostringstream out;
        write_charset(out, set);
        std::istringstream in(out.str());
        const LoadedCharSet loaded = read_charset(in);
        CHECK(loaded.space == s);
        REQUIRE(std::holds_alternative<LutCharSet>(loaded.set));
        CHECK(std::get<LutCharSet>(loaded.set) == set);
    }

    // min container, unsigned spel family
    {
        MinCharSet set(s, CellFamily::spels(s));
        fill(set, [&](MinCharSet& t) {
            t.add(s.make_spel({rng() % 6, rng() % 10, rng() % 7}));
        });
        std::ostringstream out;
        write_charset(out, set);
        std::istringstream in(out.str());
        const LoadedCharSet loaded = read_charset(in);
        REQUIRE(std::holds_alternative<MinCharSet>(loaded.set));
        CHECK(std::get<MinCharSet>(loaded.set) == set);
    }
}

TEST_CASE("charset snapshot file round trip") {
    const std::filesystem::path path =
        std::filesystem::temp_directory_path() / "kgrid_charset_test.cset";
    Space s({15, 15});
    LutCharSet set(s, CellFamily::surfels(s));
    set.add(s.make_cell(0b01, {2, 3}));
    set.add(s.make_cell(0b10, {9, 9}));
    write_charset_file(path, set);
    const LoadedCharSet loaded = read_charset_file(path);
    REQUIRE(std::holds_alternative<LutCharSet>(loaded.set));
    CHECK(std::get<LutCharSet>(loaded.set) == set);
    std::filesystem::remove(path);
}

TEST_CASE("charset snapshot validation") {
    Space s({3, 3});
    LutCharSet set(s, CellFamily::spels(s));
    set.add(s.make_spel({1, 2}));
    std::ostringstream out;
    write_charset(out, set);
    const std::string good = out.str();

    auto read_str = [](std::string text) {
        std::istringstream in(text);
        return read_charset(in);
    };

    std::string bad_magic = good;
    bad_magic[0] = 'X';
    CHECK_THROWS_AS(read_str(bad_magic), BadMagic);

    CHECK_THROWS_AS(read_str("CSET1 zut-u2 2 3 3\n"), HeaderMismatch);
    CHECK_THROWS_AS(read_str("CSET1 lut-x2 2 3 3\n"), HeaderMismatch);
    CHECK_THROWS_AS(read_str("CSET1 lut-u5 2 3 3\n"), HeaderMismatch);
    CHECK_THROWS_AS(read_str("CSET1 lut-u2 2 3\n"), HeaderMismatch);
    CHECK_THROWS_AS(read_str("CSET1 lut-u2 0\n"), HeaderMismatch);
    CHECK_THROWS_AS(read_str("CSET1 lut-u2\n"), HeaderMismatch);

    CHECK_THROWS_AS(read_str(good.substr(0, good.size() - 3)), TruncatedPayload);
}
