#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

#include "coarea/grid.hpp"

namespace coarea {

/// File-level failure (missing file, short read/write).
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed content; `offset` is the byte position where parsing stopped.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t offset)
        : std::runtime_error(what + " (byte offset " + std::to_string(offset) + ")"),
          offset_(offset) {}
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

/// Reads an ASCII (P2) or binary (P5) PGM image, maxval <= 65535, into a 2D
/// field with unit spacing and origin 0. Axis 0 is the image row, axis 1 the
/// column; intensities are kept as-is (no maxval normalization).
ScalarField load_pgm(const std::string& path);

/// Writes a 2D field as PGM. Values must be integers in [0, maxval];
/// maxval <= 255 emits one byte per sample, larger maxval two (big-endian).
void write_pgm(const ScalarField& field, const std::string& path,
               unsigned maxval = 255, bool binary = true);

/// Flat binary field cache: magic "CAF1", u32 ndims, u32 dims[ndims], then
/// little-endian float64 values row-major. Spacing/origin are not stored;
/// read_field_bin restores unit spacing at origin 0.
void write_field_bin(const ScalarField& field, const std::string& path);
ScalarField read_field_bin(const std::string& path);

}  // namespace coarea
