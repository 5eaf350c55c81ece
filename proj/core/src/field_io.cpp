#include "coarea/field_io.hpp"

#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <limits>
#include <vector>

namespace coarea {

namespace {

// Streams the file through a cursor that tracks the absolute byte offset so
// parse errors can point at the exact position.
struct ByteCursor {
    std::vector<unsigned char> bytes;
    std::size_t pos = 0;

    bool eof() const { return pos >= bytes.size(); }
    int peek() const { return eof() ? -1 : bytes[pos]; }
    int get() { return eof() ? -1 : bytes[pos++]; }
};

ByteCursor slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    ByteCursor c;
    c.bytes.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
    return c;
}

// PGM header tokens are separated by whitespace; '#' starts a comment that
// runs to end of line.
void skip_pgm_space(ByteCursor& c) {
    for (;;) {
        int ch = c.peek();
        if (ch == '#') {
            while (!c.eof() && c.get() != '\n') {
            }
        } else if (ch >= 0 && std::isspace(ch)) {
            c.get();
        } else {
            return;
        }
    }
}

unsigned long parse_pgm_uint(ByteCursor& c, const char* what, unsigned long max_allowed) {
    skip_pgm_space(c);
    const std::size_t start = c.pos;
    if (c.eof() || !std::isdigit(c.peek())) {
        throw ParseError(std::string("PGM: expected ") + what, c.pos);
    }
    unsigned long value = 0;
    while (!c.eof() && std::isdigit(c.peek())) {
        value = value * 10 + static_cast<unsigned long>(c.get() - '0');
        if (value > max_allowed) {
            throw ParseError(std::string("PGM: ") + what + " exceeds limit", start);
        }
    }
    return value;
}

}  // namespace

ScalarField load_pgm(const std::string& path) {
    ByteCursor c = slurp(path);

    if (c.bytes.size() < 2 || c.bytes[0] != 'P' || (c.bytes[1] != '2' && c.bytes[1] != '5')) {
        throw ParseError("PGM: bad magic, expected P2 or P5", 0);
    }
    const bool binary = c.bytes[1] == '5';
    c.pos = 2;

    // Keep width*height clear of overflow and of absurd allocations.
    constexpr unsigned long kMaxSide = 1ul << 24;
    const unsigned long width = parse_pgm_uint(c, "width", kMaxSide);
    const unsigned long height = parse_pgm_uint(c, "height", kMaxSide);
    const unsigned long maxval = parse_pgm_uint(c, "maxval", 65535);
    if (width == 0 || height == 0) throw ParseError("PGM: zero image dimension", c.pos);
    if (maxval == 0) throw ParseError("PGM: maxval must be positive", c.pos);

    const std::size_t count = static_cast<std::size_t>(width) * height;
    std::vector<double> values(count);

    if (binary) {
        // Single whitespace byte after maxval, then raw samples.
        if (c.eof() || !std::isspace(c.peek())) {
            throw ParseError("PGM: expected whitespace before raster", c.pos);
        }
        c.get();
        const int bytes_per = maxval > 255 ? 2 : 1;
        if (c.bytes.size() - c.pos < count * static_cast<std::size_t>(bytes_per)) {
            throw ParseError("PGM: truncated raster", c.bytes.size());
        }
        for (std::size_t i = 0; i < count; ++i) {
            unsigned long v = static_cast<unsigned long>(c.get());
            if (bytes_per == 2) v = (v << 8) | static_cast<unsigned long>(c.get());
            if (v > maxval) throw ParseError("PGM: sample exceeds maxval", c.pos - bytes_per);
            values[i] = static_cast<double>(v);
        }
    } else {
        for (std::size_t i = 0; i < count; ++i) {
            const unsigned long v = parse_pgm_uint(c, "sample", maxval);
            values[i] = static_cast<double>(v);
        }
    }

    const std::size_t dims[2] = {height, width};
    const double spacing[2] = {1.0, 1.0};
    const double origin[2] = {0.0, 0.0};
    return ScalarField(GridSpec(dims, spacing, origin), std::move(values));
}

void write_pgm(const ScalarField& field, const std::string& path,
               unsigned maxval, bool binary) {
    if (field.spec.ndim() != 2) throw std::invalid_argument("write_pgm: field must be 2D");
    if (maxval == 0 || maxval > 65535) throw std::invalid_argument("write_pgm: maxval out of range");

    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");

    const std::size_t height = field.spec.dim(0);
    const std::size_t width = field.spec.dim(1);
    out << (binary ? "P5" : "P2") << "\n" << width << " " << height << "\n" << maxval << "\n";

    for (std::size_t i = 0; i < field.values.size(); ++i) {
        const double v = field.values[i];
        if (v < 0.0 || v > static_cast<double>(maxval) || v != std::floor(v)) {
            throw std::invalid_argument("write_pgm: values must be integers in [0, maxval]");
        }
        const auto u = static_cast<unsigned long>(v);
        if (binary) {
            if (maxval > 255) out.put(static_cast<char>((u >> 8) & 0xff));
            out.put(static_cast<char>(u & 0xff));
        } else {
            out << u << (((i + 1) % width == 0) ? '\n' : ' ');
        }
    }
    if (!out) throw IoError("short write to '" + path + "'");
}

namespace {

void put_u32_le(std::ofstream& out, std::uint32_t v) {
    char b[4] = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
                 static_cast<char>((v >> 16) & 0xff), static_cast<char>((v >> 24) & 0xff)};
    out.write(b, 4);
}

std::uint32_t get_u32_le(ByteCursor& c) {
    if (c.bytes.size() - c.pos < 4) throw ParseError("field cache: truncated header", c.pos);
    std::uint32_t v = 0;
    for (int k = 0; k < 4; ++k) v |= static_cast<std::uint32_t>(c.get()) << (8 * k);
    return v;
}

}  // namespace

void write_field_bin(const ScalarField& field, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out.write("CAF1", 4);
    put_u32_le(out, static_cast<std::uint32_t>(field.spec.ndim()));
    for (int k = 0; k < field.spec.ndim(); ++k) {
        put_u32_le(out, static_cast<std::uint32_t>(field.spec.dim(k)));
    }
    for (double v : field.values) {
        std::uint64_t bits;
        std::memcpy(&bits, &v, sizeof bits);
        char b[8];
        for (int k = 0; k < 8; ++k) b[k] = static_cast<char>((bits >> (8 * k)) & 0xff);
        out.write(b, 8);
    }
    if (!out) throw IoError("short write to '" + path + "'");
}

ScalarField read_field_bin(const std::string& path) {
    ByteCursor c = slurp(path);
    if (c.bytes.size() < 8 || std::memcmp(c.bytes.data(), "CAF1", 4) != 0) {
        throw ParseError("field cache: bad magic, expected CAF1", 0);
    }
    c.pos = 4;
    const std::uint32_t ndims = get_u32_le(c);
    if (ndims < 2 || ndims > 3) throw ParseError("field cache: unsupported ndims", 4);

    std::vector<std::size_t> dims(ndims);
    std::size_t count = 1;
    for (std::uint32_t k = 0; k < ndims; ++k) {
        dims[k] = get_u32_le(c);
        if (dims[k] < 2) throw ParseError("field cache: axis needs >= 2 points", c.pos - 4);
        if (count > std::numeric_limits<std::size_t>::max() / dims[k]) {
            throw ParseError("field cache: dimension overflow", c.pos - 4);
        }
        count *= dims[k];
    }
    if (c.bytes.size() - c.pos < count * 8) {
        throw ParseError("field cache: truncated payload", c.bytes.size());
    }

    std::vector<double> values(count);
    for (std::size_t i = 0; i < count; ++i) {
        std::uint64_t bits = 0;
        for (int k = 0; k < 8; ++k) bits |= static_cast<std::uint64_t>(c.get()) << (8 * k);
        std::memcpy(&values[i], &bits, sizeof(double));
    }

    std::vector<double> spacing(ndims, 1.0), origin(ndims, 0.0);
    return ScalarField(GridSpec(dims, spacing, origin), std::move(values));
}

}  // namespace coarea
