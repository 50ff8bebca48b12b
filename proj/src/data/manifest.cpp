#include "clearsky/data/manifest.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

#include <json.hpp>

#include "clearsky/seeds.hpp"

namespace clearsky::data {

const std::vector<std::string>& DatasetManifest::split(
    const std::string& name) const {
  if (name == "train") return train;
  if (name == "val") return val;
  if (name == "test") return test;
  throw BadConfig("unknown split: \"" + name + "\"");
}

std::vector<std::string> DatasetManifest::split_domain(
    const std::string& split_name, Domain d) const {
  std::vector<std::string> out;
  for (const auto& id : split(split_name)) {
    if (domain(id) == d) out.push_back(id);
  }
  return out;
}

Domain DatasetManifest::domain(const std::string& patch_id) const {
  auto it = domain_of.find(patch_id);
  if (it == domain_of.end()) {
    throw UnknownPatchInList("patch not in manifest: " + patch_id);
  }
  return it->second;
}

void DatasetManifest::validate() const {
  std::set<std::string> seen;
  for (const auto* split : {&train, &val, &test}) {
    for (const auto& id : *split) {
      if (!seen.insert(id).second) {
        throw BadConfig("patch appears in more than one split: " + id);
      }
      if (domain_of.find(id) == domain_of.end()) {
        throw BadConfig("split patch lacks a domain tag: " + id);
      }
    }
  }
  for (const auto& id : excluded) {
    if (seen.count(id)) {
      throw BadConfig("excluded patch appears in a split: " + id);
    }
  }
}

namespace {

std::vector<std::string> read_id_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open list file: " + path.string());
  }
  std::vector<std::string> ids;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) {
      line.pop_back();
    }
    if (!line.empty()) ids.push_back(line);
  }
  return ids;
}

// Ratio slices with round-half-up train/val counts; the remainder is test.
void split_ids(std::vector<std::string> ids, std::mt19937_64& rng,
               const std::array<double, 3>& ratios, DatasetManifest& m) {
  std::sort(ids.begin(), ids.end());
  deterministic_shuffle(ids, rng);
  const std::size_t n = ids.size();
  std::size_t n_train = std::size_t(std::llround(ratios[0] * double(n)));
  std::size_t n_val = std::size_t(std::llround(ratios[1] * double(n)));
  n_train = std::min(n_train, n);
  n_val = std::min(n_val, n - n_train);
  for (std::size_t i = 0; i < n; ++i) {
    if (i < n_train) {
      m.train.push_back(ids[i]);
    } else if (i < n_train + n_val) {
      m.val.push_back(ids[i]);
    } else {
      m.test.push_back(ids[i]);
    }
  }
}

}  // namespace

DatasetManifest build_manifest(const std::filesystem::path& root,
                               const std::filesystem::path& cloudy_list,
                               const std::filesystem::path& snow_list,
                               std::uint64_t split_seed,
                               std::array<double, 3> split_ratios,
                               const LabelVocabulary& vocab) {
  double ratio_sum = split_ratios[0] + split_ratios[1] + split_ratios[2];
  if (std::abs(ratio_sum - 1.0) > 1e-9 || split_ratios[0] <= 0.0 ||
      split_ratios[1] < 0.0 || split_ratios[2] < 0.0) {
    throw BadConfig("split ratios must be nonnegative and sum to 1");
  }

  std::set<std::string> present;
  for (const auto& entry : std::filesystem::directory_iterator(root)) {
    if (entry.is_directory()) {
      present.insert(entry.path().filename().string());
    }
  }

  auto require_known = [&](const std::vector<std::string>& ids,
                           const char* which) {
    for (const auto& id : ids) {
      if (!present.count(id)) {
        throw UnknownPatchInList(std::string(which) + " list names patch \"" +
                                 id + "\" absent from " + root.string());
      }
    }
  };
  std::vector<std::string> cloudy_ids = read_id_list(cloudy_list);
  std::vector<std::string> snow_ids = read_id_list(snow_list);
  require_known(cloudy_ids, "cloudy");
  require_known(snow_ids, "snow");

  std::set<std::string> cloudy(cloudy_ids.begin(), cloudy_ids.end());
  std::set<std::string> snow(snow_ids.begin(), snow_ids.end());

  DatasetManifest m;
  m.label_vocabulary = vocab.names();
  m.split_seed = split_seed;
  m.split_ratios = split_ratios;
  m.data_kind = "band_raster";
  m.data_root = root.string();

  std::vector<std::string> cloudy_pool;
  std::vector<std::string> clear_pool;
  for (const auto& id : present) {
    if (snow.count(id)) {
      m.excluded.push_back(id);
      continue;
    }
    bool is_cloudy = cloudy.count(id) > 0;
    m.domain_of[id] = is_cloudy ? Domain::kCloudy : Domain::kClear;
    (is_cloudy ? cloudy_pool : clear_pool).push_back(id);
  }

  SeedBank seeds(split_seed);
  auto cloudy_rng = seeds.engine("split/cloudy");
  auto clear_rng = seeds.engine("split/clear");
  split_ids(std::move(cloudy_pool), cloudy_rng, split_ratios, m);
  split_ids(std::move(clear_pool), clear_rng, split_ratios, m);

  m.validate();
  return m;
}

namespace {

nlohmann::ordered_json manifest_to_json(const DatasetManifest& m) {
  nlohmann::ordered_json j;
  j["format_version"] = 1;
  j["label_vocabulary"] = m.label_vocabulary;
  j["split_seed"] = m.split_seed;
  j["split_ratios"] = m.split_ratios;
  j["data"] = {{"kind", m.data_kind}, {"root", m.data_root}};
  j["splits"] = {{"train", m.train}, {"val", m.val}, {"test", m.test}};
  nlohmann::ordered_json domains = nlohmann::ordered_json::object();
  for (const auto& [id, dom] : m.domain_of) {
    domains[id] = domain_name(dom);
  }
  j["domains"] = std::move(domains);
  j["excluded"] = m.excluded;
  if (!m.toy_pairing.empty()) {
    nlohmann::ordered_json pairing = nlohmann::ordered_json::object();
    for (const auto& [cloudy_id, clear_id] : m.toy_pairing) {
      pairing[cloudy_id] = clear_id;
    }
    j["toy_pairing"] = std::move(pairing);
  }
  return j;
}

}  // namespace

void save_manifest(const DatasetManifest& m, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw IoError("cannot open manifest for writing: " + path.string());
  }
  out << manifest_to_json(m).dump(2) << "\n";
  if (!out) {
    throw IoError("short write on manifest: " + path.string());
  }
}

DatasetManifest load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open manifest: " + path.string());
  }
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("manifest " + path.string() + ": " + e.what());
  }

  DatasetManifest m;
  try {
    m.label_vocabulary = j.at("label_vocabulary").get<std::vector<std::string>>();
    m.split_seed = j.at("split_seed").get<std::uint64_t>();
    m.split_ratios = j.at("split_ratios").get<std::array<double, 3>>();
    m.data_kind = j.at("data").at("kind").get<std::string>();
    m.data_root = j.at("data").at("root").get<std::string>();
    m.train = j.at("splits").at("train").get<std::vector<std::string>>();
    m.val = j.at("splits").at("val").get<std::vector<std::string>>();
    m.test = j.at("splits").at("test").get<std::vector<std::string>>();
    for (const auto& [id, dom] : j.at("domains").items()) {
      m.domain_of[id] = domain_from_name(dom.get<std::string>());
    }
    m.excluded = j.at("excluded").get<std::vector<std::string>>();
    if (j.contains("toy_pairing")) {
      for (const auto& [cloudy_id, clear_id] : j.at("toy_pairing").items()) {
        m.toy_pairing[cloudy_id] = clear_id.get<std::string>();
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("manifest " + path.string() + ": " + e.what());
  }
  m.validate();
  return m;
}

}  // namespace clearsky::data
