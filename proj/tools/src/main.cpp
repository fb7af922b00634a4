#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "kgrid/charset.hpp"
#include "kgrid/errors.hpp"
#include "kgrid/mesh.hpp"
#include "kgrid/suite.hpp"
#include "kgrid/tracking.hpp"
#include "kgrid/volume.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

kgrid::Cell first_spel_or_throw(const kgrid::VolumeImage& image) {
    std::uint64_t found = 0;
    bool any = false;
    image.spels.for_each_code([&](std::uint64_t code) {
        if (!any) {
            found = code;
            any = true;
        }
    });
    if (!any) throw kgrid::EmptyObject("the volume holds no spel");
    return kgrid::Cell{found};
}

kgrid::BelAdjacency adjacency_from(const std::string& text, int n) {
    if (text == "interior") return kgrid::BelAdjacency::all_interior(n);
    if (text == "exterior") return kgrid::BelAdjacency::all_exterior(n);
    return kgrid::BelAdjacency::parse(n, text);
}

void export_surfels(const kgrid::LutCharSet& surfels, const std::string& format,
                    const std::string& path) {
    kgrid::MeshFormat f{};
    if (format == "off") {
        f = kgrid::MeshFormat::off_quads;
    } else if (format == "svg") {
        f = kgrid::MeshFormat::svg_segments;
    } else if (format == "csv") {
        f = kgrid::MeshFormat::csv_khalimsky;
    } else {
        throw kgrid::Error("unknown export format '" + format + "'");
    }
    const std::string text = kgrid::export_mesh(surfels, f);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw kgrid::Error("cannot open " + path + " for writing");
    out << text;
    if (!out) throw kgrid::Error("write to " + path + " failed");
}

void cmd_gen_ball(const std::vector<std::uint64_t>& dims,
                  std::vector<std::uint64_t> center, std::uint64_t radius,
                  const std::string& predicate, const std::string& out_path) {
    std::vector<std::uint64_t> maxes(dims);
    for (auto& v : maxes) {
        if (v == 0) throw kgrid::Error("--dims entries must be positive");
        --v;
    }
    const kgrid::Space space(maxes);
    if (center.empty()) {
        center = dims;
        for (auto& v : center) v /= 2;
    }
    const auto pred = predicate == "strict" ? kgrid::BallPredicate::strict
                                            : kgrid::BallPredicate::inclusive;
    const kgrid::VolumeImage image = kgrid::digital_ball(space, center, radius, pred);
    kgrid::write_volume_file(out_path, image);
    std::cout << image.spels.cardinality() << "\n";
}

void cmd_boundary(const std::string& in_path, const std::string& method,
                  const std::string& adjacency, const std::string& export_format,
                  const std::string& out_path) {
    const kgrid::VolumeImage image = kgrid::read_volume_file(in_path);
    const kgrid::Space& s = image.space;

    const auto t0 = Clock::now();
    std::uint64_t count = 0;
    kgrid::LutCharSet result(s, kgrid::CellFamily::surfels(s));
    if (method == "scan-a") {
        result = kgrid::scan_full(s, image.spels);
        count = result.cardinality();
    } else if (method == "scan-b") {
        const auto box = kgrid::spel_bounds(s, image.spels);
        if (box) {
            result = kgrid::scan_box(s, image.spels, box->first, box->second);
            count = result.cardinality();
        }
    } else {
        const kgrid::BelAdjacency adj = adjacency_from(adjacency, s.dimension());
        const kgrid::SignedCell start =
            kgrid::find_start_bel(s, image.spels, first_spel_or_throw(image));
        kgrid::TrackResult tracked = [&] {
            if (method == "track-a") return kgrid::track_any(s, image.spels, start, adj);
            if (method == "track-b") return kgrid::track_closed(s, image.spels, start, adj);
            if (method == "track-c")
                return kgrid::track_closed_tail(s, image.spels, start, adj);
            throw kgrid::Error("unknown method '" + method + "'");
        }();
        count = tracked.bel_count();
        result = std::move(tracked.surfels);
    }
    const double secs = seconds_since(t0);

    std::cout << count << "\n";
    std::cout << "time_s " << secs << " ns_per_surfel "
              << (count > 0 ? secs * 1e9 / static_cast<double>(count) : 0.0) << "\n";
    if (!export_format.empty()) {
        if (out_path.empty()) throw kgrid::Error("--export needs --out FILE");
        export_surfels(result, export_format, out_path);
    }
}

void cmd_set_op(const std::string& op, const std::string& a_path, const std::string& b_path,
                const std::string& out_path) {
    kgrid::VolumeImage a = kgrid::read_volume_file(a_path);
    const std::uint64_t total_spels = [&] {
        std::uint64_t t = 1;
        for (int i = 0; i < a.space.dimension(); ++i) t *= a.space.coord_max(i) + 1;
        return t;
    }();

    double secs = 0.0;
    if (op == "complement") {
        const auto t0 = Clock::now();
        a.spels.complement_in_place();
        secs = seconds_since(t0);
    } else {
        if (b_path.empty()) throw kgrid::Error("--op " + op + " needs --b FILE");
        const kgrid::VolumeImage b = kgrid::read_volume_file(b_path);
        const auto t0 = Clock::now();
        if (op == "union") {
            a.spels.unite(b.spels);
        } else if (op == "intersection") {
            a.spels.intersect(b.spels);
        } else if (op == "difference") {
            a.spels.subtract(b.spels);
        } else {
            throw kgrid::Error("unknown op '" + op + "'");
        }
        secs = seconds_since(t0);
    }
    kgrid::write_volume_file(out_path, a);
    std::cout << a.spels.cardinality() << "\n";
    std::cout << "time_s " << secs << " ns_per_spel "
              << secs * 1e9 / static_cast<double>(total_spels) << "\n";
}

int cmd_bench(const std::string& suite, const std::string& scale, bool csv) {
    if (suite != "table3") throw kgrid::Error("unknown suite '" + suite + "'");
    const auto records = kgrid::run_suite(scale == "full" ? kgrid::SuiteScale::full
                                                          : kgrid::SuiteScale::small);
    std::cout << (csv ? kgrid::render_csv(records) : kgrid::render_table(records));
    for (const auto& r : records) {
        if (!r.counts_match) {
            std::cerr << "error: counts mismatch in case " << r.config.name << "\n";
            return 2;
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"boundary extraction toolkit for n-dimensional binary images"};
    app.require_subcommand(1);
    int rc = 0;

    auto* gen = app.add_subcommand("gen-ball", "generate a digital ball volume");
    std::vector<std::uint64_t> dims;
    std::vector<std::uint64_t> center;
    std::uint64_t radius = 0;
    std::string predicate = "inclusive";
    std::string gen_out;
    gen->add_option("--dims", dims, "image size per axis")->required()->expected(1, 62);
    gen->add_option("--center", center, "ball center (default: image center)");
    gen->add_option("--radius", radius, "ball radius")->required();
    gen->add_option("--predicate", predicate, "inclusive|strict (default inclusive)")
        ->check(CLI::IsMember({"inclusive", "strict"}));
    gen->add_option("--out", gen_out, "output CUBV1 file")->required();
    gen->callback([&] { cmd_gen_ball(dims, center, radius, predicate, gen_out); });

    auto* bnd = app.add_subcommand("boundary", "extract the boundary of a volume");
    std::string in_path;
    std::string method;
    std::string adjacency = "interior";
    std::string export_format;
    std::string bnd_out;
    bnd->add_option("--in", in_path, "input CUBV1 file")->required();
    bnd->add_option("--method", method, "boundary method")
        ->required()
        ->check(CLI::IsMember({"scan-a", "scan-b", "track-a", "track-b", "track-c"}));
    bnd->add_option("--adjacency", adjacency,
                    "interior|exterior|matrix-spec (e.g. 0,1=interior;0,2=exterior)");
    bnd->add_option("--export", export_format, "off|svg|csv")
        ->check(CLI::IsMember({"off", "svg", "csv"}));
    bnd->add_option("--out", bnd_out, "export output file");
    bnd->callback([&] { cmd_boundary(in_path, method, adjacency, export_format, bnd_out); });

    auto* sop = app.add_subcommand("set-op", "combine volumes with set algebra");
    std::string op;
    std::string a_path;
    std::string b_path;
    std::string sop_out;
    sop->add_option("--op", op, "union|intersection|difference|complement")
        ->required()
        ->check(CLI::IsMember({"union", "intersection", "difference", "complement"}));
    sop->add_option("--a", a_path, "first CUBV1 operand")->required();
    sop->add_option("--b", b_path, "second CUBV1 operand");
    sop->add_option("--out", sop_out, "output CUBV1 file")->required();
    sop->callback([&] { cmd_set_op(op, a_path, b_path, sop_out); });

    auto* ben = app.add_subcommand("bench", "run the reference benchmark suite");
    std::string suite = "table3";
    std::string scale = "small";
    bool csv = false;
    ben->add_option("--suite", suite, "suite name (table3)");
    ben->add_option("--scale", scale, "small|full")
        ->check(CLI::IsMember({"small", "full"}));
    ben->add_flag("--csv", csv, "emit CSV instead of the text table");
    ben->callback([&] { rc = cmd_bench(suite, scale, csv); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const kgrid::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return rc;
}
