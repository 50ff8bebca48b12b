#include "clearsky/data/pair_stream.hpp"

#include "clearsky/seeds.hpp"

namespace clearsky::data {

TrainingPairStream::TrainingPairStream(const DatasetManifest& manifest,
                                       int batch_size, std::uint64_t seed)
    : cloudy_train_(manifest.split_domain("train", Domain::kCloudy)),
      clear_train_(manifest.split_domain("train", Domain::kClear)),
      batch_size_(batch_size),
      seed_(seed) {
  if (batch_size_ < 1) {
    throw BadConfig("pair stream batch size must be >= 1");
  }
  if (cloudy_train_.empty()) {
    throw EmptyDomain("no cloudy patches in the train split");
  }
  if (clear_train_.empty()) {
    throw EmptyDomain("no clear patches in the train split");
  }
  start_epoch(0);
}

void TrainingPairStream::start_epoch(int epoch) {
  SeedBank bank(seed_);
  auto shuffle_rng = std::mt19937_64(
      splitmix64(bank.seed_for("pair_stream/shuffle") + std::uint64_t(epoch)));
  clear_rng_ = std::mt19937_64(
      splitmix64(bank.seed_for("pair_stream/clear") + std::uint64_t(epoch)));

  epoch_order_ = cloudy_train_;
  deterministic_shuffle(epoch_order_, shuffle_rng);
  cursor_ = 0;
}

bool TrainingPairStream::next(PairBatch& out) {
  if (cursor_ >= epoch_order_.size()) return false;

  out.cloudy.clear();
  out.clear.clear();
  const std::size_t end =
      std::min(cursor_ + std::size_t(batch_size_), epoch_order_.size());
  for (; cursor_ < end; ++cursor_) {
    out.cloudy.push_back(epoch_order_[cursor_]);
    out.clear.push_back(
        clear_train_[uniform_index(clear_rng_, clear_train_.size())]);
  }
  return true;
}

int TrainingPairStream::batches_per_epoch() const {
  return int((cloudy_train_.size() + std::size_t(batch_size_) - 1) /
             std::size_t(batch_size_));
}

}  // namespace clearsky::data
