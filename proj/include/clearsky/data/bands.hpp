#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <torch/torch.h>

#include "clearsky/errors.hpp"

namespace clearsky::data {

// The 12 bands of the Sentinel-2 Level-2A distribution (B10 is not part of
// it), in ascending band-name order. This order is the fixed channel order
// of every stacked tensor produced by this library.
inline const std::array<std::string, 12> kBandNames = {
    "B01", "B02", "B03", "B04", "B05", "B06",
    "B07", "B08", "B09", "B11", "B12", "B8A"};

/// Native grid side length of a band inside a 1.2 km x 1.2 km patch:
/// 120 px for the 10 m bands, 60 px for 20 m, 20 px for 60 m.
int native_band_size(const std::string& band);

/// Channel index of a band in the stacked tensor, or -1.
int band_channel(const std::string& band);

/// One single-band grid of raw digital numbers (reflectance = DN / 10000).
struct BandGrid {
  int size = 0;
  std::vector<std::uint16_t> dn;  // row-major size*size

  std::uint16_t at(int r, int c) const { return dn[std::size_t(r) * size + c]; }
};

struct BandStack {
  std::string patch_id;
  std::map<std::string, BandGrid> bands;
};

/// Reads the 12 per-band rasters `<patch_id>_<band>.tif` from a patch
/// directory. The patch id is the directory name. Throws MissingBand if a
/// required band file is absent and MalformedRaster on unreadable files or
/// grids that do not match the band's native size.
BandStack read_band_stack(const std::filesystem::path& patch_directory);

enum class ResampleMethod { kNearest, kBilinear };

/// Resamples every band to size x size and stacks them in ascending
/// band-name order. Output is float32 [12, size, size] carrying DN values.
/// Bilinear uses half-pixel centers and preserves constant bands exactly.
torch::Tensor resample_to_grid(const BandStack& stack, int size = 120,
                               ResampleMethod method = ResampleMethod::kBilinear);

enum class NormalizeMode { kUnit, kZScore };

/// Per-band normalization statistics in reflectance units (DN / 10000).
struct BandStats {
  std::vector<double> mean;
  std::vector<double> std;
};

/// unit:   clip(DN / 10000, 0, 1)
/// zscore: (DN / 10000 - mean_b) / max(std_b, 1e-6) per band channel
/// `raw` is a [C, H, W] DN tensor; zscore requires stats with C entries.
torch::Tensor normalize_reflectance(const torch::Tensor& raw, NormalizeMode mode,
                                    const BandStats* stats = nullptr);

}  // namespace clearsky::data
