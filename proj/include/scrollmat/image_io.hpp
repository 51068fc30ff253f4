#pragma once

#include <filesystem>

#include "scrollmat/image.hpp"

namespace scrollmat {

// Decode a PNG, JPEG or TIFF image into an 8-bit RGB raster. 16-bit inputs
// are scaled down to 8 bits. Throws Error("decode", ...) naming the path on
// unreadable or unsupported files.
Raster load_image(const std::filesystem::path& path);

// Decode a grayscale mask image; any nonzero pixel is set.
BinaryMask load_mask(const std::filesystem::path& path, MaskKind kind);

void save_image(const Raster& r, const std::filesystem::path& path);
void save_mask(const BinaryMask& m, const std::filesystem::path& path);

} // namespace scrollmat
