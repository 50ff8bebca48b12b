#include "clearsky/data/bands.hpp"

#include <algorithm>
#include <cmath>

#include <opencv2/imgcodecs.hpp>

namespace clearsky::data {

int native_band_size(const std::string& band) {
  static const std::map<std::string, int> sizes = {
      {"B01", 20}, {"B02", 120}, {"B03", 120}, {"B04", 120},
      {"B05", 60}, {"B06", 60},  {"B07", 60},  {"B08", 120},
      {"B09", 20}, {"B11", 60},  {"B12", 60},  {"B8A", 60}};
  auto it = sizes.find(band);
  return it == sizes.end() ? -1 : it->second;
}

int band_channel(const std::string& band) {
  auto it = std::find(kBandNames.begin(), kBandNames.end(), band);
  return it == kBandNames.end() ? -1
                                : static_cast<int>(it - kBandNames.begin());
}

BandStack read_band_stack(const std::filesystem::path& patch_directory) {
  BandStack stack;
  stack.patch_id = patch_directory.filename().string();
  if (stack.patch_id.empty()) {
    // trailing slash
    stack.patch_id = patch_directory.parent_path().filename().string();
  }

  for (const auto& band : kBandNames) {
    const auto file =
        patch_directory / (stack.patch_id + "_" + band + ".tif");
    if (!std::filesystem::exists(file)) {
      throw MissingBand("missing band file: " + file.string());
    }
    cv::Mat img = cv::imread(file.string(), cv::IMREAD_UNCHANGED);
    if (img.empty()) {
      throw MalformedRaster("unreadable raster: " + file.string());
    }
    if (img.channels() != 1) {
      throw MalformedRaster("expected single-band raster: " + file.string());
    }
    const int want = native_band_size(band);
    if (img.rows != want || img.cols != want) {
      throw MalformedRaster("raster " + file.string() + " is " +
                            std::to_string(img.rows) + "x" +
                            std::to_string(img.cols) + ", expected " +
                            std::to_string(want));
    }

    BandGrid grid;
    grid.size = want;
    grid.dn.resize(std::size_t(want) * want);
    if (img.depth() == CV_16U) {
      for (int r = 0; r < want; ++r)
        for (int c = 0; c < want; ++c)
          grid.dn[std::size_t(r) * want + c] = img.at<std::uint16_t>(r, c);
    } else if (img.depth() == CV_8U) {
      for (int r = 0; r < want; ++r)
        for (int c = 0; c < want; ++c)
          grid.dn[std::size_t(r) * want + c] = img.at<std::uint8_t>(r, c);
    } else {
      throw MalformedRaster("unsupported raster depth in " + file.string());
    }
    stack.bands[band] = std::move(grid);
  }
  return stack;
}

namespace {

inline float lerp(float a, float b, float t) { return a + t * (b - a); }

void resample_band(const BandGrid& src, int dst_size, ResampleMethod method,
                   float* dst) {
  const int s = src.size;
  const double scale = double(s) / dst_size;

  if (method == ResampleMethod::kNearest) {
    for (int y = 0; y < dst_size; ++y) {
      int sy = std::clamp(int(std::floor((y + 0.5) * scale)), 0, s - 1);
      for (int x = 0; x < dst_size; ++x) {
        int sx = std::clamp(int(std::floor((x + 0.5) * scale)), 0, s - 1);
        dst[std::size_t(y) * dst_size + x] = float(src.at(sy, sx));
      }
    }
    return;
  }

  // Bilinear with half-pixel centers, border-clamped. The nested-lerp form
  // reproduces constants exactly.
  for (int y = 0; y < dst_size; ++y) {
    double fy = (y + 0.5) * scale - 0.5;
    int y0 = int(std::floor(fy));
    float ty = float(fy - y0);
    int y0c = std::clamp(y0, 0, s - 1);
    int y1c = std::clamp(y0 + 1, 0, s - 1);
    for (int x = 0; x < dst_size; ++x) {
      double fx = (x + 0.5) * scale - 0.5;
      int x0 = int(std::floor(fx));
      float tx = float(fx - x0);
      int x0c = std::clamp(x0, 0, s - 1);
      int x1c = std::clamp(x0 + 1, 0, s - 1);

      float top = lerp(float(src.at(y0c, x0c)), float(src.at(y0c, x1c)), tx);
      float bot = lerp(float(src.at(y1c, x0c)), float(src.at(y1c, x1c)), tx);
      dst[std::size_t(y) * dst_size + x] = lerp(top, bot, ty);
    }
  }
}

}  // namespace

torch::Tensor resample_to_grid(const BandStack& stack, int size,
                               ResampleMethod method) {
  for (const auto& band : kBandNames) {
    if (stack.bands.find(band) == stack.bands.end()) {
      throw MissingBand("resample_to_grid: band stack lacks " + band);
    }
  }

  auto out = torch::empty({int64_t(kBandNames.size()), size, size},
                          torch::kFloat32);
  float* base = out.data_ptr<float>();
  for (std::size_t c = 0; c < kBandNames.size(); ++c) {
    resample_band(stack.bands.at(kBandNames[c]), size, method,
                  base + c * std::size_t(size) * size);
  }
  return out;
}

torch::Tensor normalize_reflectance(const torch::Tensor& raw, NormalizeMode mode,
                                    const BandStats* stats) {
  if (!torch::isfinite(raw).all().item<bool>()) {
    throw NonFiniteInput("normalize_reflectance: non-finite input");
  }
  auto reflectance = raw.to(torch::kFloat32) / 10000.0f;

  if (mode == NormalizeMode::kUnit) {
    return reflectance.clamp(0.0f, 1.0f);
  }

  const auto channels = raw.size(0);
  if (stats == nullptr) {
    throw MissingStats("normalize_reflectance: zscore mode requires stats");
  }
  if (long(stats->mean.size()) != channels || long(stats->std.size()) != channels) {
    throw MissingStats("normalize_reflectance: stats cover " +
                       std::to_string(stats->mean.size()) + " bands, input has " +
                       std::to_string(channels));
  }
  auto mean = torch::from_blob(const_cast<double*>(stats->mean.data()),
                               {channels}, torch::kFloat64)
                  .to(torch::kFloat32)
                  .view({channels, 1, 1});
  auto std = torch::from_blob(const_cast<double*>(stats->std.data()),
                              {channels}, torch::kFloat64)
                 .to(torch::kFloat32)
                 .clamp_min(1e-6f)
                 .view({channels, 1, 1});
  return (reflectance - mean) / std;
}

}  // namespace clearsky::data
