#ifndef DRIFG_IO_HPP
#define DRIFG_IO_HPP

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "drifg/errors.hpp"
#include "drifg/image.hpp"

namespace drifg {

static_assert(std::endian::native == std::endian::little,
              "DRIFGv01 I/O assumes a little-endian host");

inline constexpr char drifg_magic[8] = {'D', 'R', 'I', 'F', 'G', 'v', '0', '1'};

/// Write a complex image in the DRIFGv01 format: 8-byte magic, LE u32 rows,
/// LE u32 cols, u8 dtype tag (0 = complex float64 interleaved re/im), 3
/// reserved zero bytes, row-major payload.
inline void write_complex_image(const std::filesystem::path& path, const ComplexImage& z) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw dimension_error("cannot open for writing: " + path.string());
    out.write(drifg_magic, 8);
    const std::uint32_t rows = static_cast<std::uint32_t>(z.rows);
    const std::uint32_t cols = static_cast<std::uint32_t>(z.cols);
    out.write(reinterpret_cast<const char*>(&rows), 4);
    out.write(reinterpret_cast<const char*>(&cols), 4);
    const std::array<char, 4> tag_and_reserved = {0, 0, 0, 0};
    out.write(tag_and_reserved.data(), 4);
    out.write(reinterpret_cast<const char*>(z.data.data()),
              static_cast<std::streamsize>(z.size() * sizeof(cplx)));
    if (!out) throw dimension_error("write failed: " + path.string());
}

inline ComplexImage read_complex_image(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw dimension_error("cannot open for reading: " + path.string());
    char magic[8];
    in.read(magic, 8);
    if (!in || std::memcmp(magic, drifg_magic, 8) != 0)
        throw dimension_error("bad magic in " + path.string());
    std::uint32_t rows = 0, cols = 0;
    in.read(reinterpret_cast<char*>(&rows), 4);
    in.read(reinterpret_cast<char*>(&cols), 4);
    char tag_and_reserved[4];
    in.read(tag_and_reserved, 4);
    if (!in || tag_and_reserved[0] != 0)
        throw dimension_error("unsupported dtype tag in " + path.string());
    if (rows == 0 || cols == 0)
        throw dimension_error("zero-sized image in " + path.string());
    ComplexImage z(rows, cols);
    in.read(reinterpret_cast<char*>(z.data.data()),
            static_cast<std::streamsize>(z.size() * sizeof(cplx)));
    if (!in) throw dimension_error("truncated payload in " + path.string());
    return z;
}

/// Real fields ride in the same container with zero imaginary part.
inline void write_real_field(const std::filesystem::path& path, const RealField& f) {
    ComplexImage z(f.rows, f.cols);
    for (std::size_t i = 0; i < f.data.size(); ++i) z.data[i] = f.data[i];
    write_complex_image(path, z);
}

inline RealField read_real_field(const std::filesystem::path& path) {
    ComplexImage z = read_complex_image(path);
    RealField f(z.rows, z.cols);
    for (std::size_t i = 0; i < z.data.size(); ++i) f.data[i] = z.data[i].real();
    return f;
}

/// 16-bit binary PGM of a phase field, (-pi, pi] mapped linearly to
/// [0, 65535]. PGM multi-byte samples are big-endian per the format.
inline void write_phase_pgm(const std::filesystem::path& path, const RealField& phase) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw dimension_error("cannot open for writing: " + path.string());
    out << "P5\n" << phase.cols << " " << phase.rows << "\n65535\n";
    for (double v : phase.data) {
        const double t = (v + std::numbers::pi) / (2.0 * std::numbers::pi);
        const double clamped = std::min(1.0, std::max(0.0, t));
        const std::uint16_t q = static_cast<std::uint16_t>(clamped * 65535.0 + 0.5);
        const char bytes[2] = {static_cast<char>(q >> 8), static_cast<char>(q & 0xff)};
        out.write(bytes, 2);
    }
    if (!out) throw dimension_error("write failed: " + path.string());
}

/// Generic real field export: PGM scaled to [min, max] with a sidecar text
/// file recording the scaling.
inline void write_real_pgm_with_sidecar(const std::filesystem::path& path, const RealField& f) {
    double lo = f.data.empty() ? 0.0 : f.data[0];
    double hi = lo;
    for (double v : f.data) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    const double span = (hi > lo) ? (hi - lo) : 1.0;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw dimension_error("cannot open for writing: " + path.string());
    out << "P5\n" << f.cols << " " << f.rows << "\n65535\n";
    for (double v : f.data) {
        const double t = (v - lo) / span;
        const std::uint16_t q = static_cast<std::uint16_t>(
            std::min(1.0, std::max(0.0, t)) * 65535.0 + 0.5);
        const char bytes[2] = {static_cast<char>(q >> 8), static_cast<char>(q & 0xff)};
        out.write(bytes, 2);
    }
    std::ofstream side(path.string() + ".range", std::ios::trunc);
    side.precision(17);
    side << "min = " << lo << "\nmax = " << hi << "\n";
}

/// Flat key = value config text. '#' starts a comment; blank lines ignored;
/// keys must be unique and drawn from a known set checked by the consumer.
inline std::map<std::string, std::string> parse_config_text(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    auto trim = [](std::string s) {
        const char* ws = " \t\r";
        const auto b = s.find_first_not_of(ws);
        if (b == std::string::npos) return std::string{};
        const auto e = s.find_last_not_of(ws);
        return s.substr(b, e - b + 1);
    };
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw config_error("config line " + std::to_string(lineno) +
                               ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw config_error("config line " + std::to_string(lineno) + ": empty key");
        if (kv.count(key))
            throw config_error("config: duplicate key '" + key + "'");
        kv[key] = value;
    }
    return kv;
}

inline std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw config_error("cannot open config file: " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace drifg

#endif
