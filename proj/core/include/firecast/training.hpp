/* Copyright 2026 The Firecast Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#pragma once

#include <cstddef>
#include <functional>
#include <utility>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "firecast/adam.hpp"
#include "firecast/dataset.hpp"
#include "firecast/error.hpp"
#include "firecast/network.hpp"

namespace firecast {

enum class LossKind { kMAE, kMSE };
enum class Selection { kValidationMAE, kTrainMAE };

std::string_view loss_name(LossKind k) noexcept;
std::optional<LossKind> parse_loss(std::string_view name) noexcept;
std::string_view selection_name(Selection s) noexcept;

struct TrainConfig {
  std::size_t epochs = 1000;
  Seed seed{2024};
  LossKind loss = LossKind::kMAE;
  std::size_t batch_size = 32;
  std::size_t hidden = StackedModel::kDefaultHidden;
  std::size_t window = StackedModel::kDefaultWindow;
  AdamConfig adam;
  // Train on the whole series instead of the chronological split. Selection
  // then falls back to training MAE since there is no validation split.
  bool full_data = false;
  // Global-norm gradient clipping; 0 disables it.
  double clip_norm = 0.0;

  Selection selection() const noexcept {
    return full_data ? Selection::kTrainMAE : Selection::kValidationMAE;
  }
  void validate() const;
  friend bool operator==(const TrainConfig&, const TrainConfig&) = default;
};

// Metrics are in original series units; loss is the mean training loss of the
// epoch in normalized units. Validation fields are nullopt in full-data mode.
struct EpochRecord {
  std::size_t epoch = 0;  // 1-based
  double loss = 0.0;
  double train_mae = 0.0;
  double train_rmse = 0.0;
  std::optional<double> val_mae;
  std::optional<double> val_rmse;

  friend bool operator==(const EpochRecord&, const EpochRecord&) = default;
};

struct Checkpoint {
  StackedModel model;
  NormalizationParams normalizer;
  TrainConfig config;
  std::size_t best_epoch = 0;
  std::vector<EpochRecord> history;
  std::string rng_identity{Rng::kIdentity};

  double selection_metric(const EpochRecord& r) const;
  friend bool operator==(const Checkpoint&, const Checkpoint&) = default;
};

// Thrown when the loss or a metric goes non-finite. Carries the best
// checkpoint seen up to the last completed epoch, if any.
class TrainingAborted : public NumericError {
 public:
  TrainingAborted(const std::string& what, std::optional<Checkpoint> last_good)
      : NumericError(what), last_good_(std::move(last_good)) {}
  const std::optional<Checkpoint>& last_good() const noexcept { return last_good_; }

 private:
  std::optional<Checkpoint> last_good_;
};

using EpochCallback = std::function<void(const EpochRecord&)>;

// Epoch loop: shuffle the training windows with a seeded generator, take
// mini-batches, average the loss gradient over the batch, apply one Adam step
// per batch, then score every split in original units. Returns the parameters
// of the best epoch under cfg.selection() (earliest wins ties).
Checkpoint train(const MonthlySeries& series, const TrainConfig& cfg,
                 const EpochCallback& on_epoch = {});

struct Evaluation {
  double mae = 0.0;
  double rmse = 0.0;
  std::vector<YearMonth> months;
  std::vector<double> actual;
  std::vector<double> predicted;
};

// Teacher-forced one-step-ahead predictions for every target in `split`,
// scored after inverse normalization.
Evaluation evaluate(const Checkpoint& ckpt, const MonthlySeries& series, Split split);

// The shuffle generator is seeded from the user seed with this offset so it
// does not share a stream with weight initialization.
inline constexpr std::uint64_t kShuffleStreamSalt = 0x53485546464C45ULL;

}  // namespace firecast
