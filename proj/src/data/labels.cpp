#include "clearsky/data/labels.hpp"

#include <fstream>

#include <json.hpp>

#include "clearsky/errors.hpp"

namespace clearsky::data {

LabelVocabulary::LabelVocabulary(std::vector<std::string> names)
    : names_(std::move(names)) {}

LabelVocabulary LabelVocabulary::bigearthnet43() {
  // The 43 land-cover classes of the curated corpus, in its canonical
  // (CLC nomenclature) order.
  return LabelVocabulary({
      "Continuous urban fabric",
      "Discontinuous urban fabric",
      "Industrial or commercial units",
      "Road and rail networks and associated land",
      "Port areas",
      "Airports",
      "Mineral extraction sites",
      "Dump sites",
      "Construction sites",
      "Green urban areas",
      "Sport and leisure facilities",
      "Non-irrigated arable land",
      "Permanently irrigated land",
      "Rice fields",
      "Vineyards",
      "Fruit trees and berry plantations",
      "Olive groves",
      "Pastures",
      "Annual crops associated with permanent crops",
      "Complex cultivation patterns",
      "Land principally occupied by agriculture, with significant areas of "
      "natural vegetation",
      "Agro-forestry areas",
      "Broad-leaved forest",
      "Coniferous forest",
      "Mixed forest",
      "Natural grassland",
      "Moors and heathland",
      "Sclerophyllous vegetation",
      "Transitional woodland/shrub",
      "Beaches, dunes, sands",
      "Bare rock",
      "Sparsely vegetated areas",
      "Burnt areas",
      "Inland marshes",
      "Peatbogs",
      "Salt marshes",
      "Salines",
      "Intertidal flats",
      "Water courses",
      "Water bodies",
      "Coastal lagoons",
      "Estuaries",
      "Sea and ocean",
  });
}

LabelVocabulary LabelVocabulary::from_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open vocabulary file: " + path.string());
  }
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("vocabulary file " + path.string() + ": " + e.what());
  }
  if (!j.is_array()) {
    throw ParseError("vocabulary file must be a JSON array of class names");
  }
  return LabelVocabulary(j.get<std::vector<std::string>>());
}

int LabelVocabulary::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return static_cast<int>(i);
  }
  return -1;
}

const std::string& LabelVocabulary::name_of(int index) const {
  return names_.at(static_cast<std::size_t>(index));
}

std::set<int> parse_label_metadata(const std::string& metadata_text,
                                   const LabelVocabulary& vocab) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(metadata_text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("label metadata: ") + e.what());
  }
  if (!j.contains("labels") || !j["labels"].is_array()) {
    throw ParseError("label metadata lacks a \"labels\" array");
  }

  std::set<int> out;
  for (const auto& entry : j["labels"]) {
    const auto name = entry.get<std::string>();
    int idx = vocab.index_of(name);
    if (idx < 0) {
      throw UnknownLabel("unknown class name: \"" + name + "\"");
    }
    out.insert(idx);
  }
  if (out.empty()) {
    throw EmptyLabelList("label metadata lists no classes");
  }
  return out;
}

}  // namespace clearsky::data
