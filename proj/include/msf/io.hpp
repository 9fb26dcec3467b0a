#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "msf/laurent.hpp"

namespace msf::io {

// Binary layouts, all integers little-endian u32, all values interleaved
// little-endian binary64 (re, im):
//
//   MSFC v1: "MSFC" | version=1 | r | n_neg | n_pos | (n_neg+n_pos+1)*r*r values
//            coefficient-major from n = -n_neg, row-major within a coefficient
//   MSFG v1: "MSFG" | version=1 | r | N_g | N_g*r*r values, node order j = 0..N_g-1

inline constexpr std::uint32_t format_version = 1;

std::vector<std::uint8_t> encode_coefficients(const LaurentMatrixPoly& p);
std::vector<std::uint8_t> encode_grid(const GridSamples& s);

/// Throws Error(FormatError) naming the byte offset of the first bad field.
LaurentMatrixPoly decode_coefficients(std::span<const std::uint8_t> bytes);
GridSamples decode_grid(std::span<const std::uint8_t> bytes);

void write_coefficients(const std::filesystem::path& path, const LaurentMatrixPoly& p);
void write_grid(const std::filesystem::path& path, const GridSamples& s);
LaurentMatrixPoly read_coefficients(const std::filesystem::path& path);
GridSamples read_grid(const std::filesystem::path& path);

}  // namespace msf::io
