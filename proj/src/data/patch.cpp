#include "clearsky/data/patch.hpp"

#include <cstring>
#include <fstream>

#include "clearsky/data/manifest.hpp"

namespace clearsky::data {

std::string domain_name(Domain d) {
  return d == Domain::kCloudy ? "cloudy" : "clear";
}

Domain domain_from_name(const std::string& s) {
  if (s == "cloudy") return Domain::kCloudy;
  if (s == "clear") return Domain::kClear;
  throw ParseError("unknown domain tag: \"" + s + "\"");
}

void Patch::validate(int n_classes) const {
  if (labels.empty()) {
    throw EmptyLabels("patch " + patch_id + " has no labels");
  }
  for (int l : labels) {
    if (l < 0 || l >= n_classes) {
      throw UnknownLabel("patch " + patch_id + " label index " +
                         std::to_string(l) + " outside [0," +
                         std::to_string(n_classes - 1) + "]");
    }
  }
  if (pixels.dim() != 3) {
    throw ShapeMismatch("patch " + patch_id + " pixels must be [C,H,W]");
  }
  if (!torch::isfinite(pixels).all().item<bool>()) {
    throw NonFiniteInput("patch " + patch_id + " has non-finite pixels");
  }
  auto lo = pixels.min().item<float>();
  auto hi = pixels.max().item<float>();
  if (lo < 0.0f || hi > 1.0f) {
    throw NonFiniteInput("patch " + patch_id + " pixels outside [0,1]: min " +
                         std::to_string(lo) + " max " + std::to_string(hi));
  }
}

namespace {
constexpr char kMagic[4] = {'C', 'S', 'P', '1'};

template <typename T>
void write_pod(std::ofstream& out, const T& v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T read_pod(std::ifstream& in) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  return v;
}
}  // namespace

void write_patch_dump(const std::filesystem::path& path, const Patch& patch) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("cannot open patch dump for writing: " + path.string());
  }
  auto pixels = patch.pixels.contiguous().to(torch::kFloat32);
  out.write(kMagic, 4);
  write_pod<std::uint8_t>(out, patch.domain == Domain::kCloudy ? 0 : 1);
  write_pod<std::uint32_t>(out, std::uint32_t(patch.labels.size()));
  for (int l : patch.labels) write_pod<std::int32_t>(out, l);
  write_pod<std::uint32_t>(out, std::uint32_t(pixels.size(0)));
  write_pod<std::uint32_t>(out, std::uint32_t(pixels.size(1)));
  write_pod<std::uint32_t>(out, std::uint32_t(pixels.size(2)));
  out.write(reinterpret_cast<const char*>(pixels.data_ptr<float>()),
            std::streamsize(sizeof(float) * pixels.numel()));
  if (!out) {
    throw IoError("short write on patch dump: " + path.string());
  }
}

Patch read_patch_dump(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open patch dump: " + path.string());
  }
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kMagic, 4) != 0) {
    throw ParseError("bad magic in patch dump: " + path.string());
  }

  Patch p;
  p.patch_id = path.stem().string();
  p.domain = read_pod<std::uint8_t>(in) == 0 ? Domain::kCloudy : Domain::kClear;
  auto n_labels = read_pod<std::uint32_t>(in);
  for (std::uint32_t i = 0; i < n_labels; ++i) {
    p.labels.insert(read_pod<std::int32_t>(in));
  }
  auto c = read_pod<std::uint32_t>(in);
  auto h = read_pod<std::uint32_t>(in);
  auto w = read_pod<std::uint32_t>(in);
  if (!in || c == 0 || h == 0 || w == 0) {
    throw ParseError("bad header in patch dump: " + path.string());
  }
  p.pixels = torch::empty({int64_t(c), int64_t(h), int64_t(w)}, torch::kFloat32);
  in.read(reinterpret_cast<char*>(p.pixels.data_ptr<float>()),
          std::streamsize(sizeof(float) * p.pixels.numel()));
  if (!in) {
    throw ParseError("truncated patch dump: " + path.string());
  }
  return p;
}

torch::Tensor PatchSource::load_batch(const std::vector<std::string>& ids) const {
  std::vector<torch::Tensor> tensors;
  tensors.reserve(ids.size());
  for (const auto& id : ids) {
    tensors.push_back(load(id).pixels);
  }
  return torch::stack(tensors, 0);
}

TensorDumpSource::TensorDumpSource(std::filesystem::path root,
                                   const DatasetManifest* manifest)
    : root_(std::move(root)), manifest_(manifest) {}

Patch TensorDumpSource::load(const std::string& patch_id) const {
  Patch p = read_patch_dump(root_ / (patch_id + ".cspt"));
  if (manifest_ != nullptr) {
    p.domain = manifest_->domain(patch_id);
  }
  return p;
}

BandRasterSource::BandRasterSource(std::filesystem::path root,
                                   LabelVocabulary vocab,
                                   const DatasetManifest* manifest,
                                   int grid_size, ResampleMethod method)
    : root_(std::move(root)),
      vocab_(std::move(vocab)),
      manifest_(manifest),
      grid_size_(grid_size),
      method_(method) {}

Patch BandRasterSource::load(const std::string& patch_id) const {
  const auto dir = root_ / patch_id;
  BandStack stack = read_band_stack(dir);
  auto dn = resample_to_grid(stack, grid_size_, method_);

  Patch p;
  p.patch_id = patch_id;
  p.pixels = normalize_reflectance(dn, NormalizeMode::kUnit);

  const auto meta = dir / (patch_id + "_labels_metadata.json");
  std::ifstream in(meta);
  if (!in) {
    throw IoError("missing label metadata: " + meta.string());
  }
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  p.labels = parse_label_metadata(text, vocab_);
  if (manifest_ != nullptr) {
    p.domain = manifest_->domain(patch_id);
  }
  return p;
}

std::unique_ptr<PatchSource> open_patch_source(const DatasetManifest& manifest) {
  if (manifest.data_kind == "tensor_dump") {
    return std::make_unique<TensorDumpSource>(manifest.data_root, &manifest);
  }
  if (manifest.data_kind == "band_raster") {
    return std::make_unique<BandRasterSource>(
        manifest.data_root, LabelVocabulary(manifest.label_vocabulary),
        &manifest);
  }
  throw BadConfig("manifest has unknown data kind: \"" + manifest.data_kind +
                  "\"");
}

}  // namespace clearsky::data
