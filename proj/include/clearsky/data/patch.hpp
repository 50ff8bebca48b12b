#pragma once

#include <filesystem>
#include <memory>
#include <set>
#include <string>

#include <torch/torch.h>

#include "clearsky/data/bands.hpp"
#include "clearsky/data/labels.hpp"

namespace clearsky::data {

enum class Domain { kCloudy, kClear };

std::string domain_name(Domain d);
Domain domain_from_name(const std::string& s);

/// One training-ready image patch: float32 [C, H, W] pixels in [0, 1],
/// a nonempty label set, and a domain tag.
struct Patch {
  std::string patch_id;
  torch::Tensor pixels;
  std::set<int> labels;
  Domain domain = Domain::kClear;

  void validate(int n_classes) const;  // throws on any broken invariant
};

// Patch tensor dump, the on-disk interchange format shared by the toy
// generator, the translate command and eval-fd. Layout (little-endian):
//   bytes 0..3  magic "CSP1"
//   uint8       domain (0 cloudy, 1 clear)
//   uint32      n_labels, then n_labels int32 label indices
//   uint32      C, H, W
//   C*H*W       float32 pixels, CHW order
void write_patch_dump(const std::filesystem::path& path, const Patch& patch);
Patch read_patch_dump(const std::filesystem::path& path);

struct DatasetManifest;

/// Loads patches referenced by a manifest, independent of how they are
/// stored (per-band rasters or tensor dumps).
class PatchSource {
 public:
  virtual ~PatchSource() = default;
  virtual Patch load(const std::string& patch_id) const = 0;

  /// Loads and stacks a batch into [B, C, H, W].
  torch::Tensor load_batch(const std::vector<std::string>& ids) const;
};

/// `<root>/<patch_id>.cspt` tensor dumps.
class TensorDumpSource final : public PatchSource {
 public:
  explicit TensorDumpSource(std::filesystem::path root,
                            const DatasetManifest* manifest = nullptr);
  Patch load(const std::string& patch_id) const override;

 private:
  std::filesystem::path root_;
  const DatasetManifest* manifest_;
};

/// `<root>/<patch_id>/` directories of per-band rasters plus a
/// `<patch_id>_labels_metadata.json` document.
class BandRasterSource final : public PatchSource {
 public:
  BandRasterSource(std::filesystem::path root, LabelVocabulary vocab,
                   const DatasetManifest* manifest = nullptr,
                   int grid_size = 120,
                   ResampleMethod method = ResampleMethod::kBilinear);
  Patch load(const std::string& patch_id) const override;

 private:
  std::filesystem::path root_;
  LabelVocabulary vocab_;
  const DatasetManifest* manifest_;
  int grid_size_;
  ResampleMethod method_;
};

std::unique_ptr<PatchSource> open_patch_source(const DatasetManifest& manifest);

}  // namespace clearsky::data
