#include "kgrid/charset_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "kgrid/errors.hpp"

namespace kgrid {
namespace {

std::string family_tag(bool lut, const CellFamily& f) {
    std::string tag = lut ? "lut-" : "min-";
    tag += f.oriented ? 's' : 'u';
    tag += std::to_string(f.rank);
    return tag;
}

template <class Set>
void write_impl(std::ostream& out, const Set& set, bool lut) {
    const Space& s = set.space();
    out << "CSET1 " << family_tag(lut, set.family()) << ' ' << s.dimension();
    for (int i = 0; i < s.dimension(); ++i) out << ' ' << s.coord_max(i);
    out << '\n';

    std::vector<std::uint8_t> buf(set.words().size() * 8);
    std::size_t k = 0;
    for (std::uint64_t w : set.words()) {
        for (int b = 0; b < 8; ++b) buf[k++] = static_cast<std::uint8_t>(w >> (8 * b));
    }
    out.write(reinterpret_cast<const char*>(buf.data()),
              static_cast<std::streamsize>(buf.size()));
}

template <class Set>
LoadedCharSet read_payload(std::istream& in, const Space& space, CellFamily family) {
    Set set(space, family);
    std::vector<std::uint8_t> buf(set.words().size() * 8);
    in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
    if (static_cast<std::size_t>(in.gcount()) != buf.size())
        throw TruncatedPayload("table words end early");
    std::vector<std::uint64_t> words(set.words().size(), 0);
    for (std::size_t i = 0; i < words.size(); ++i) {
        std::uint64_t w = 0;
        for (int b = 0; b < 8; ++b)
            w |= static_cast<std::uint64_t>(buf[i * 8 + static_cast<std::size_t>(b)])
                 << (8 * b);
        words[i] = w;
    }
    set.assign_words(words);
    return {space, std::move(set)};
}

}  // namespace

void write_charset(std::ostream& out, const MinCharSet& set) { write_impl(out, set, false); }
void write_charset(std::ostream& out, const LutCharSet& set) { write_impl(out, set, true); }

void write_charset_file(const std::filesystem::path& path, const MinCharSet& set) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open " + path.string() + " for writing");
    write_charset(out, set);
    if (!out) throw Error("write to " + path.string() + " failed");
}

void write_charset_file(const std::filesystem::path& path, const LutCharSet& set) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open " + path.string() + " for writing");
    write_charset(out, set);
    if (!out) throw Error("write to " + path.string() + " failed");
}

LoadedCharSet read_charset(std::istream& in) {
    std::string magic;
    if (!(in >> magic) || magic != "CSET1") throw BadMagic("expected a CSET1 header");
    std::string tag;
    if (!(in >> tag)) throw HeaderMismatch("missing family tag");
    int n = 0;
    if (!(in >> n) || n < 1 || n > 62) throw HeaderMismatch("bad dimension count");
    std::vector<std::uint64_t> maxes(static_cast<std::size_t>(n), 0);
    for (auto& v : maxes) {
        if (!(in >> v)) throw HeaderMismatch("bad coordinate bound");
    }
    if (in.get() != '\n') throw HeaderMismatch("header not newline-terminated");

    bool lut = false;
    if (tag.rfind("lut-", 0) == 0) {
        lut = true;
    } else if (tag.rfind("min-", 0) != 0) {
        throw HeaderMismatch("unknown container tag '" + tag + "'");
    }
    if (tag.size() < 6) throw HeaderMismatch("malformed family tag '" + tag + "'");
    bool oriented = false;
    if (tag[4] == 's') {
        oriented = true;
    } else if (tag[4] != 'u') {
        throw HeaderMismatch("malformed family tag '" + tag + "'");
    }
    int rank = -1;
    const auto rc = std::from_chars(tag.data() + 5, tag.data() + tag.size(), rank);
    if (rc.ec != std::errc() || rc.ptr != tag.data() + tag.size() || rank < 0 || rank > n)
        throw HeaderMismatch("bad family rank in tag '" + tag + "'");

    const Space space(maxes);
    const CellFamily family{rank, oriented};
    if (lut) return read_payload<LutCharSet>(in, space, family);
    return read_payload<MinCharSet>(in, space, family);
}

LoadedCharSet read_charset_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path.string() + " for reading");
    return read_charset(in);
}

}  // namespace kgrid
