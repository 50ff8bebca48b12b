#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "clearsky/data/manifest.hpp"

namespace clearsky::data {

struct PairBatch {
  std::vector<std::string> cloudy;
  std::vector<std::string> clear;
};

/// The training batch schedule: one epoch walks every cloudy training patch
/// exactly once in a seeded shuffle, and pairs each cloudy batch with a
/// uniformly random clear batch (independent picks, with replacement across
/// and within batches). Fully reproducible from (seed, epoch).
class TrainingPairStream {
 public:
  TrainingPairStream(const DatasetManifest& manifest, int batch_size,
                     std::uint64_t seed);

  /// Rewinds to the start of the given epoch and reshuffles.
  void start_epoch(int epoch);

  /// Fills the next batch; returns false once the epoch is exhausted.
  /// The final batch of an epoch may be smaller than batch_size.
  bool next(PairBatch& out);

  int batches_per_epoch() const;
  int batch_size() const { return batch_size_; }

 private:
  std::vector<std::string> cloudy_train_;
  std::vector<std::string> clear_train_;
  int batch_size_;
  std::uint64_t seed_;

  std::vector<std::string> epoch_order_;
  std::size_t cursor_ = 0;
  std::mt19937_64 clear_rng_;
};

}  // namespace clearsky::data
