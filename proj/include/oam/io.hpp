#ifndef OAM_IO_HPP
#define OAM_IO_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "oam/analysis.hpp"
#include "oam/entangle.hpp"
#include "oam/hologram.hpp"

namespace oam {

// Binary PGM, P5 maxval 255, row 0 = top.
std::vector<std::uint8_t> encode_pgm(const GrayImage& img);

// 8-bit grayscale PNG, fixed zlib level so output bytes are reproducible.
std::vector<std::uint8_t> encode_png(const GrayImage& img);

void write_bytes(const std::string& path, const std::vector<std::uint8_t>& bytes);

std::uint32_t crc32_of(const std::vector<std::uint8_t>& bytes);

// Linear-grayscale intensity rendering of |field|^2, peak mapped to 255.
GrayImage intensity_image(const ComplexField& field);

// CSV serializers; '.' decimal point regardless of locale, comma separated,
// header row first.
std::string spectrum_csv(const OamSpectrum& s);
std::string matrix_csv(const std::vector<std::vector<double>>& m,
                       const std::vector<int>& row_labels, const std::vector<int>& col_labels);
std::string correlation_csv(const CorrelationTable& t);
std::string correlation_counts_csv(const CorrelationTable& t,
                                   const std::vector<std::vector<std::uint64_t>>& counts);

}  // namespace oam

#endif
