#include "kgrid/mesh.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "kgrid/boundary.hpp"
#include "kgrid/errors.hpp"
#include "kgrid/space.hpp"

namespace kgrid {
namespace {

void require_surfel_family(const LutCharSet& set) {
    if (set.family().rank != set.space().dimension() - 1)
        throw FamilyMismatch("mesh export needs a surfel family");
}

struct SurfelView {
    std::uint64_t topo;
    Sign sign;
    int orth;
};

SurfelView view_of(const Space& s, const LutCharSet& set, std::uint64_t code) {
    if (set.family().oriented) {
        const SignedCell c{code};
        return {s.topology(c), s.sign_of(c), s.orth_dir(c)};
    }
    const Cell c{code};
    return {s.topology(c), Sign::positive, s.orth_dir(c)};
}

std::uint64_t surfel_coord(const Space& s, const LutCharSet& set, std::uint64_t code,
                           int axis) {
    return set.family().oriented ? s.coord(SignedCell{code}, axis)
                                 : s.coord(Cell{code}, axis);
}

std::string off_quads(const LutCharSet& set) {
    const Space& s = set.space();
    if (s.dimension() != 3) throw WrongDimension("quad export needs a 3D space");

    std::unordered_map<std::uint64_t, std::uint32_t> vertex_id;
    std::vector<std::array<std::uint64_t, 3>> vertices;
    std::vector<std::array<std::uint32_t, 4>> faces;
    std::vector<std::uint64_t> corner(3, 0);

    set.for_each_code([&](std::uint64_t code) {
        const SurfelView v = view_of(s, set, code);
        const int o = v.orth;
        const int t1 = o == 0 ? 1 : 0;
        const int t2 = o == 2 ? 1 : 2;

        std::array<std::uint32_t, 4> q{};
        // corners in (t1, t2) offsets (0,0) (1,0) (1,1) (0,1): a loop that
        // is counter-clockwise in the (t1, t2) plane
        static constexpr int kOff[4][2] = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
        for (int k = 0; k < 4; ++k) {
            for (int i = 0; i < 3; ++i) corner[static_cast<std::size_t>(i)] =
                surfel_coord(s, set, code, i);
            corner[static_cast<std::size_t>(t1)] += static_cast<std::uint64_t>(kOff[k][0]);
            corner[static_cast<std::size_t>(t2)] += static_cast<std::uint64_t>(kOff[k][1]);
            const std::uint64_t pcode = s.make_pointel(corner).code;
            auto [it, fresh] =
                vertex_id.try_emplace(pcode, static_cast<std::uint32_t>(vertices.size()));
            if (fresh)
                vertices.push_back({corner[0], corner[1], corner[2]});
            q[static_cast<std::size_t>(k)] = it->second;
        }

        // The counter-clockwise loop's normal is +e_o exactly for o in
        // {0, 2}; the outward normal is +e_o exactly when the positive
        // coboundary spel sits below the face.
        const bool ccw_points_up = o != 1;
        const bool outward_up = (v.sign * axis_parity(v.topo, o)) == Sign::negative;
        if (ccw_points_up != outward_up) std::swap(q[1], q[3]);
        faces.push_back(q);
    });

    std::string out = "OFF\n";
    out += std::to_string(vertices.size());
    out += ' ';
    out += std::to_string(faces.size());
    out += " 0\n";
    for (const auto& p : vertices) {
        out += std::to_string(p[0]);
        out += ' ';
        out += std::to_string(p[1]);
        out += ' ';
        out += std::to_string(p[2]);
        out += '\n';
    }
    for (const auto& f : faces) {
        out += "4";
        for (std::uint32_t idx : f) {
            out += ' ';
            out += std::to_string(idx);
        }
        out += '\n';
    }
    return out;
}

std::string svg_segments(const LutCharSet& set) {
    const Space& s = set.space();
    if (s.dimension() != 2) throw WrongDimension("segment export needs a 2D space");

    std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"0 0 ";
    out += std::to_string(s.coord_max(0) + 1);
    out += ' ';
    out += std::to_string(s.coord_max(1) + 1);
    out += "\">\n";
    set.for_each_code([&](std::uint64_t code) {
        const SurfelView v = view_of(s, set, code);
        const int t = 1 - v.orth;
        const std::uint64_t x = surfel_coord(s, set, code, 0);
        const std::uint64_t y = surfel_coord(s, set, code, 1);
        const std::uint64_t x2 = t == 0 ? x + 1 : x;
        const std::uint64_t y2 = t == 1 ? y + 1 : y;
        out += "<path d=\"M ";
        out += std::to_string(x);
        out += ' ';
        out += std::to_string(y);
        out += " L ";
        out += std::to_string(x2);
        out += ' ';
        out += std::to_string(y2);
        out += "\" stroke=\"black\" stroke-width=\"0.1\" fill=\"none\"/>\n";
    });
    out += "</svg>\n";
    return out;
}

std::string csv_khalimsky(const LutCharSet& set) {
    const Space& s = set.space();
    const int n = s.dimension();
    const bool oriented = set.family().oriented;
    std::string out;
    set.for_each_code([&](std::uint64_t code) {
        if (oriented) {
            out += s.sign_of(SignedCell{code}) == Sign::positive ? '+' : '-';
        } else {
            out += '+';
        }
        for (int i = 0; i < n; ++i) {
            out += ',';
            out += std::to_string(oriented ? s.khalimsky_coord(SignedCell{code}, i)
                                           : s.khalimsky_coord(Cell{code}, i));
        }
        out += '\n';
    });
    return out;
}

}  // namespace

std::string export_mesh(const LutCharSet& surfels, MeshFormat format) {
    require_surfel_family(surfels);
    switch (format) {
        case MeshFormat::off_quads:
            return off_quads(surfels);
        case MeshFormat::svg_segments:
            return svg_segments(surfels);
        case MeshFormat::csv_khalimsky:
            return csv_khalimsky(surfels);
    }
    throw Error("unknown mesh format");
}

}  // namespace kgrid
