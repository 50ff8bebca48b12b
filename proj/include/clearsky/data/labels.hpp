#pragma once

#include <filesystem>
#include <set>
#include <string>
#include <vector>

namespace clearsky::data {

/// Ordered land-cover class vocabulary. Index = position in the list.
class LabelVocabulary {
 public:
  LabelVocabulary() = default;
  explicit LabelVocabulary(std::vector<std::string> names);

  /// The 43-class vocabulary of the curated Sentinel-2 corpus.
  static LabelVocabulary bigearthnet43();
  static LabelVocabulary from_json_file(const std::filesystem::path& path);

  int index_of(const std::string& name) const;  // -1 if unknown
  const std::string& name_of(int index) const;
  int size() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& names() const { return names_; }

 private:
  std::vector<std::string> names_;
};

/// Parses a per-patch metadata JSON document (field "labels": array of class
/// names) into a deduplicated set of vocabulary indices. Throws UnknownLabel
/// for names outside the vocabulary and EmptyLabelList when no label remains.
std::set<int> parse_label_metadata(const std::string& metadata_text,
                                   const LabelVocabulary& vocab);

}  // namespace clearsky::data
