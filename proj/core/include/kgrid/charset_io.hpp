#pragma once

#include <filesystem>
#include <iosfwd>
#include <variant>

#include "kgrid/charset.hpp"

namespace kgrid {

/// Writes a characteristic set in the CSET1 format: ASCII header
/// `CSET1 <family-tag> <n> <coordmax_0> ... <coordmax_{n-1}>` plus newline,
/// then the table words little-endian.  The family tag is
/// `<min|lut>-<u|s><rank>`, e.g. `lut-s2`.  Round trips are bit-exact.
void write_charset(std::ostream& out, const MinCharSet& set);
void write_charset(std::ostream& out, const LutCharSet& set);
void write_charset_file(const std::filesystem::path& path, const MinCharSet& set);
void write_charset_file(const std::filesystem::path& path, const LutCharSet& set);

struct LoadedCharSet {
    Space space;
    std::variant<MinCharSet, LutCharSet> set;
};

/// Reads a CSET1 snapshot back into the container kind named by its tag.
/// Raises BadMagic, HeaderMismatch, TruncatedPayload.
LoadedCharSet read_charset(std::istream& in);
LoadedCharSet read_charset_file(const std::filesystem::path& path);

}  // namespace kgrid
