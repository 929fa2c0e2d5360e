#include "oam/io.hpp"

#include <zlib.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace oam {

std::vector<std::uint8_t> encode_pgm(const GrayImage& img) {
    std::string header =
        "P5\n" + std::to_string(img.width) + " " + std::to_string(img.height) + "\n255\n";
    std::vector<std::uint8_t> out(header.begin(), header.end());
    out.insert(out.end(), img.values.begin(), img.values.end());
    return out;
}

namespace {

void put_u32(std::vector<std::uint8_t>& v, std::uint32_t x) {
    v.push_back(static_cast<std::uint8_t>(x >> 24));
    v.push_back(static_cast<std::uint8_t>(x >> 16));
    v.push_back(static_cast<std::uint8_t>(x >> 8));
    v.push_back(static_cast<std::uint8_t>(x));
}

void put_chunk(std::vector<std::uint8_t>& out, const char type[4],
               const std::vector<std::uint8_t>& data) {
    put_u32(out, static_cast<std::uint32_t>(data.size()));
    std::size_t crc_start = out.size();
    out.insert(out.end(), type, type + 4);
    out.insert(out.end(), data.begin(), data.end());
    std::uint32_t crc = ::crc32(0L, out.data() + crc_start, static_cast<uInt>(4 + data.size()));
    put_u32(out, crc);
}

}  // namespace

std::vector<std::uint8_t> encode_png(const GrayImage& img) {
    std::vector<std::uint8_t> out = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};

    std::vector<std::uint8_t> ihdr;
    put_u32(ihdr, static_cast<std::uint32_t>(img.width));
    put_u32(ihdr, static_cast<std::uint32_t>(img.height));
    ihdr.push_back(8);  // bit depth
    ihdr.push_back(0);  // grayscale
    ihdr.push_back(0);  // deflate
    ihdr.push_back(0);  // filter method
    ihdr.push_back(0);  // no interlace
    put_chunk(out, "IHDR", ihdr);

    // Scanlines with filter byte 0.
    std::vector<std::uint8_t> raw;
    raw.reserve(static_cast<std::size_t>(img.height) * (img.width + 1));
    for (int j = 0; j < img.height; ++j) {
        raw.push_back(0);
        const std::uint8_t* row = img.values.data() + static_cast<std::size_t>(j) * img.width;
        raw.insert(raw.end(), row, row + img.width);
    }
    uLongf bound = compressBound(static_cast<uLong>(raw.size()));
    std::vector<std::uint8_t> comp(bound);
    if (compress2(comp.data(), &bound, raw.data(), static_cast<uLong>(raw.size()), 6) != Z_OK)
        throw std::runtime_error("encode_png: deflate failed");
    comp.resize(bound);
    put_chunk(out, "IDAT", comp);
    put_chunk(out, "IEND", {});
    return out;
}

void write_bytes(const std::string& path, const std::vector<std::uint8_t>& bytes) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("write_bytes: cannot open " + path);
    f.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
    if (!f) throw std::runtime_error("write_bytes: short write to " + path);
}

std::uint32_t crc32_of(const std::vector<std::uint8_t>& bytes) {
    return static_cast<std::uint32_t>(
        ::crc32(0L, bytes.data(), static_cast<uInt>(bytes.size())));
}

GrayImage intensity_image(const ComplexField& field) {
    GrayImage img;
    img.width = field.grid.nx;
    img.height = field.grid.ny;
    img.values.resize(field.grid.size());
    double peak = 0.0;
    for (const cplx& v : field.values) peak = std::max(peak, std::norm(v));
    for (int jr = 0; jr < img.height; ++jr) {
        int j = field.grid.ny - 1 - jr;  // row 0 = y_max
        for (int i = 0; i < img.width; ++i) {
            double rel = peak > 0.0 ? std::norm(field.at(i, j)) / peak : 0.0;
            int g = static_cast<int>(std::floor(rel * 255.0 + 0.5));
            img.values[static_cast<std::size_t>(jr) * img.width + i] =
                static_cast<std::uint8_t>(std::min(g, 255));
        }
    }
    return img;
}

namespace {
std::string fmt_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}
}  // namespace

std::string spectrum_csv(const OamSpectrum& s) {
    std::ostringstream head, row;
    for (int l = -s.L; l <= s.L; ++l) {
        if (l > -s.L) {
            head << ",";
            row << ",";
        }
        head << "l" << l;
        row << fmt_double(s.weight_at(l));
    }
    head << ",residual";
    row << "," << fmt_double(s.residual);
    return head.str() + "\n" + row.str() + "\n";
}

std::string matrix_csv(const std::vector<std::vector<double>>& m,
                       const std::vector<int>& row_labels, const std::vector<int>& col_labels) {
    std::ostringstream out;
    out << "transform";
    for (int c : col_labels) out << ",analyzer" << c;
    out << "\n";
    for (std::size_t r = 0; r < m.size(); ++r) {
        out << row_labels[r];
        for (double p : m[r]) out << "," << fmt_double(p);
        out << "\n";
    }
    return out.str();
}

std::string correlation_csv(const CorrelationTable& t) {
    std::ostringstream out;
    out << "signal_coupler,idler_coupler";
    for (const std::string& n : t.setting_names) out << "," << n;
    out << "\n";
    for (std::size_t c = 0; c < t.channels.size(); ++c) {
        out << t.channels[c].first << "," << t.channels[c].second;
        for (double p : t.prob[c]) out << "," << fmt_double(p);
        out << "\n";
    }
    return out.str();
}

std::string correlation_counts_csv(const CorrelationTable& t,
                                   const std::vector<std::vector<std::uint64_t>>& counts) {
    std::ostringstream out;
    out << "signal_coupler,idler_coupler";
    for (const std::string& n : t.setting_names) out << "," << n;
    out << "\n";
    for (std::size_t c = 0; c < t.channels.size(); ++c) {
        out << t.channels[c].first << "," << t.channels[c].second;
        for (std::uint64_t n : counts[c]) out << "," << n;
        out << "\n";
    }
    return out.str();
}

}  // namespace oam
