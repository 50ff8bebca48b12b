#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "clearsky/data/labels.hpp"
#include "clearsky/data/patch.hpp"

namespace clearsky::data {

/// Split and domain bookkeeping for one dataset. Serialization is canonical:
/// rebuilding with the same inputs and seed produces a byte-identical file.
struct DatasetManifest {
  std::vector<std::string> label_vocabulary;
  std::vector<std::string> train;
  std::vector<std::string> val;
  std::vector<std::string> test;
  std::map<std::string, Domain> domain_of;
  std::vector<std::string> excluded;  // seasonal-snow patches, in no split

  std::uint64_t split_seed = 0;
  std::array<double, 3> split_ratios = {0.8, 0.1, 0.1};

  std::string data_kind;  // "band_raster" | "tensor_dump"
  std::string data_root;

  // Ground-truth cloudy->clear pairing of the synthetic dataset. Evaluation
  // only; the training path never reads it.
  std::map<std::string, std::string> toy_pairing;

  const std::vector<std::string>& split(const std::string& name) const;
  std::vector<std::string> split_domain(const std::string& split_name,
                                        Domain d) const;
  Domain domain(const std::string& patch_id) const;

  void validate() const;  // disjointness, domain coverage, exclusions
};

/// Scans `root` for patch directories, excludes the snow-listed patches,
/// tags the cloudy-listed ones, and draws seeded splits stratified within
/// each domain. List files hold one patch id per line; ids must exist under
/// root (UnknownPatchInList otherwise).
DatasetManifest build_manifest(const std::filesystem::path& root,
                               const std::filesystem::path& cloudy_list,
                               const std::filesystem::path& snow_list,
                               std::uint64_t split_seed,
                               std::array<double, 3> split_ratios = {0.8, 0.1, 0.1},
                               const LabelVocabulary& vocab =
                                   LabelVocabulary::bigearthnet43());

void save_manifest(const DatasetManifest& manifest,
                   const std::filesystem::path& path);
DatasetManifest load_manifest(const std::filesystem::path& path);

}  // namespace clearsky::data
