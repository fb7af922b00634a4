#include "kgrid/volume.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "kgrid/errors.hpp"

namespace kgrid {
namespace {

std::uint64_t isqrt(std::uint64_t v) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(v)));
    while (r > 0 && r * r > v) --r;
    while ((r + 1) * (r + 1) <= v) ++r;
    return r;
}

// Visits every combination of coordinates of axes 1..n-1 (axis 0 is the
// line direction).  fn receives the coordinate vector (x[0] is scratch) and
// the zero-based line index in x0-fastest mixed-radix order.
template <typename Fn>
void for_each_line(const Space& s, Fn&& fn) {
    const int n = s.dimension();
    std::vector<std::uint64_t> x(static_cast<std::size_t>(n), 0);
    std::uint64_t line = 0;
    for (;;) {
        fn(x, line);
        ++line;
        int i = 1;
        for (; i < n; ++i) {
            if (x[static_cast<std::size_t>(i)] < s.coord_max(i)) {
                ++x[static_cast<std::size_t>(i)];
                break;
            }
            x[static_cast<std::size_t>(i)] = 0;
        }
        if (i >= n) return;
    }
}

std::uint64_t spel_count_of(const Space& s) {
    std::uint64_t total = 1;
    for (int i = 0; i < s.dimension(); ++i) total *= s.coord_max(i) + 1;
    return total;
}

}  // namespace

VolumeImage make_volume(const Space& space) {
    return {space, LutCharSet(space, CellFamily::spels(space))};
}

VolumeImage digital_ball(const Space& space, std::span<const std::uint64_t> center,
                         std::uint64_t radius, BallPredicate predicate) {
    const int n = space.dimension();
    if (static_cast<int>(center.size()) != n)
        throw WrongDimension("ball center needs one coordinate per axis");
    VolumeImage image = make_volume(space);
    if (radius == 0) return image;
    for (int i = 0; i < n; ++i) {
        const std::uint64_t c = center[static_cast<std::size_t>(i)];
        if (c < radius + 1 || c + radius + 1 > space.coord_max(i))
            throw BallTouchesBorder("axis " + std::to_string(i));
    }

    const std::uint64_t r2 = radius * radius;
    std::vector<std::uint64_t> x(static_cast<std::size_t>(n), 0);
    // odometer over axes 1..n-1 within the ball's bounding box
    for (int i = 1; i < n; ++i)
        x[static_cast<std::size_t>(i)] = center[static_cast<std::size_t>(i)] - radius;
    for (;;) {
        std::uint64_t d2 = 0;
        for (int i = 1; i < n; ++i) {
            const std::int64_t d = static_cast<std::int64_t>(x[static_cast<std::size_t>(i)]) -
                                   static_cast<std::int64_t>(center[static_cast<std::size_t>(i)]);
            d2 += static_cast<std::uint64_t>(d * d);
        }
        if (d2 <= r2) {
            const std::uint64_t rem = r2 - d2;
            bool any = true;
            std::uint64_t half = 0;
            if (predicate == BallPredicate::inclusive) {
                half = isqrt(rem);
            } else if (rem >= 1) {
                half = isqrt(rem - 1);
            } else {
                any = false;
            }
            if (any) {
                x[0] = center[0] - half;
                image.spels.add_axis0_run(space.make_spel(x).code, 2 * half + 1);
            }
        }
        int i = 1;
        for (; i < n; ++i) {
            const std::size_t ui = static_cast<std::size_t>(i);
            if (x[ui] < center[ui] + radius) {
                ++x[ui];
                break;
            }
            x[ui] = center[ui] - radius;
        }
        if (i >= n) break;
    }
    return image;
}

VolumeImage digital_ball(const Space& space, std::initializer_list<std::uint64_t> center,
                         std::uint64_t radius, BallPredicate predicate) {
    return digital_ball(space, std::span<const std::uint64_t>(center.begin(), center.size()),
                        radius, predicate);
}

void write_volume(std::ostream& out, const VolumeImage& image) {
    const Space& s = image.space;
    const int n = s.dimension();
    out << "CUBV1 " << n;
    for (int i = 0; i < n; ++i) out << ' ' << (s.coord_max(i) + 1);
    out << '\n';

    const std::uint64_t total = spel_count_of(s);
    std::vector<std::uint8_t> payload(static_cast<std::size_t>((total + 7) / 8), 0);
    const std::uint64_t line_len = s.coord_max(0) + 1;
    for_each_line(s, [&](std::vector<std::uint64_t>& x, std::uint64_t line) {
        x[0] = 0;
        Cell spel = s.make_spel(x);
        std::uint64_t bit = line * line_len;
        for (std::uint64_t x0 = 0;; ++x0, ++bit) {
            if (image.spels.contains(spel))
                payload[static_cast<std::size_t>(bit >> 3)] |=
                    static_cast<std::uint8_t>(1u << (bit & 7));
            if (x0 == s.coord_max(0)) break;
            spel = s.translated(spel, 0, 1);
        }
    });
    out.write(reinterpret_cast<const char*>(payload.data()),
              static_cast<std::streamsize>(payload.size()));
}

void write_volume_file(const std::filesystem::path& path, const VolumeImage& image) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open " + path.string() + " for writing");
    write_volume(out, image);
    if (!out) throw Error("write to " + path.string() + " failed");
}

VolumeImage read_volume(std::istream& in) {
    std::string magic;
    if (!(in >> magic) || magic != "CUBV1") throw BadMagic("expected a CUBV1 header");
    int n = 0;
    if (!(in >> n) || n < 1 || n > 62)
        throw HeaderMismatch("bad dimension count");
    std::vector<std::uint64_t> sizes(static_cast<std::size_t>(n), 0);
    for (auto& v : sizes) {
        if (!(in >> v) || v == 0) throw HeaderMismatch("bad axis size");
    }
    if (in.get() != '\n') throw HeaderMismatch("header not newline-terminated");

    std::vector<std::uint64_t> maxes(sizes);
    for (auto& v : maxes) --v;
    const Space space(maxes);
    VolumeImage image = make_volume(space);

    std::uint64_t total = 1;
    for (std::uint64_t v : sizes) total *= v;
    std::vector<std::uint8_t> payload(static_cast<std::size_t>((total + 7) / 8), 0);
    in.read(reinterpret_cast<char*>(payload.data()),
            static_cast<std::streamsize>(payload.size()));
    if (static_cast<std::uint64_t>(in.gcount()) != payload.size())
        throw TruncatedPayload("occupancy bits end early");

    const std::uint64_t line_len = space.coord_max(0) + 1;
    for_each_line(space, [&](std::vector<std::uint64_t>& x, std::uint64_t line) {
        const std::uint64_t base = line * line_len;
        std::uint64_t run_start = 0;
        bool in_run = false;
        for (std::uint64_t x0 = 0; x0 < line_len; ++x0) {
            const std::uint64_t bit = base + x0;
            const bool on =
                (payload[static_cast<std::size_t>(bit >> 3)] >> (bit & 7)) & 1u;
            if (on && !in_run) {
                run_start = x0;
                in_run = true;
            } else if (!on && in_run) {
                x[0] = run_start;
                image.spels.add_axis0_run(space.make_spel(x).code, x0 - run_start);
                in_run = false;
            }
        }
        if (in_run) {
            x[0] = run_start;
            image.spels.add_axis0_run(space.make_spel(x).code, line_len - run_start);
        }
    });
    return image;
}

VolumeImage read_volume_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path.string() + " for reading");
    return read_volume(in);
}

VolumeImage threshold_import(std::span<const std::uint8_t> samples,
                             std::span<const std::uint64_t> sizes, std::uint8_t threshold) {
    std::uint64_t total = 1;
    for (std::uint64_t v : sizes) total *= v;
    if (samples.size() != total)
        throw SizeMismatch("sample count differs from the image size");

    std::vector<std::uint64_t> maxes(sizes.begin(), sizes.end());
    for (auto& v : maxes) {
        if (v == 0) throw SizeMismatch("zero-sized axis");
        --v;
    }
    const Space space(maxes);
    VolumeImage image = make_volume(space);
    const std::uint64_t line_len = space.coord_max(0) + 1;
    for_each_line(space, [&](std::vector<std::uint64_t>& x, std::uint64_t line) {
        const std::uint64_t base = line * line_len;
        for (std::uint64_t x0 = 0; x0 < line_len; ++x0) {
            if (samples[static_cast<std::size_t>(base + x0)] >= threshold) {
                x[0] = x0;
                image.spels.add(space.make_spel(x));
            }
        }
    });
    return image;
}

std::optional<std::pair<std::vector<std::uint64_t>, std::vector<std::uint64_t>>>
spel_bounds(const Space& space, const LutCharSet& spels) {
    const int n = space.dimension();
    std::vector<std::uint64_t> lo(static_cast<std::size_t>(n), ~std::uint64_t{0});
    std::vector<std::uint64_t> hi(static_cast<std::size_t>(n), 0);
    bool any = false;
    spels.for_each_code([&](std::uint64_t code) {
        any = true;
        const Cell c{code};
        for (int i = 0; i < n; ++i) {
            const std::uint64_t v = space.coord(c, i);
            const std::size_t ui = static_cast<std::size_t>(i);
            if (v < lo[ui]) lo[ui] = v;
            if (v > hi[ui]) hi[ui] = v;
        }
    });
    if (!any) return std::nullopt;
    return std::make_pair(std::move(lo), std::move(hi));
}

}  // namespace kgrid
