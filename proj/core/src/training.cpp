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

#include "firecast/training.hpp"

#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "firecast/metrics.hpp"

namespace firecast {

std::string_view loss_name(LossKind k) noexcept { return k == LossKind::kMAE ? "mae" : "mse"; }

std::optional<LossKind> parse_loss(std::string_view name) noexcept {
  if (name == "mae") return LossKind::kMAE;
  if (name == "mse") return LossKind::kMSE;
  return std::nullopt;
}

std::string_view selection_name(Selection s) noexcept {
  return s == Selection::kValidationMAE ? "validation MAE" : "train MAE";
}

void TrainConfig::validate() const {
  if (epochs < 1) throw ArgumentError("epochs must be >= 1");
  if (batch_size < 1) throw ArgumentError("batch size must be >= 1");
  if (hidden < 1) throw ArgumentError("hidden must be >= 1");
  if (window < 1) throw ArgumentError("window must be >= 1");
  if (!(clip_norm >= 0.0)) throw ArgumentError("clip norm must be >= 0");
  adam.validate();
}

double Checkpoint::selection_metric(const EpochRecord& r) const {
  if (config.selection() == Selection::kValidationMAE) {
    if (!r.val_mae) throw StateError(fmt::format("epoch {} has no validation MAE", r.epoch));
    return *r.val_mae;
  }
  return r.train_mae;
}

namespace {

struct Scored {
  double mae;
  double rmse;
  std::vector<double> predicted;  // original units
};

// One-step-ahead predictions for `samples`, scored against the raw series.
Scored score(const StackedModel& model, const WindowedDataset& ds, const NormalizationParams& norm,
             std::span<const WindowSample> samples, std::span<const double> raw) {
  std::vector<double> actual, predicted;
  actual.reserve(samples.size());
  predicted.reserve(samples.size());
  for (const WindowSample& s : samples) {
    predicted.push_back(norm.invert(predict_window(model, ds.inputs(s))));
    actual.push_back(raw[s.target]);
  }
  return Scored{mae(actual, predicted), rmse(actual, predicted), std::move(predicted)};
}

double loss_and_slope(LossKind kind, double err, double& slope) {
  if (kind == LossKind::kMAE) {
    slope = err > 0.0 ? 1.0 : (err < 0.0 ? -1.0 : 0.0);
    return std::abs(err);
  }
  slope = 2.0 * err;
  return err * err;
}

}  // namespace

Checkpoint train(const MonthlySeries& series, const TrainConfig& cfg, const EpochCallback& on_epoch) {
  cfg.validate();
  const std::size_t n = series.size();

  std::size_t train_end = n;
  std::optional<SplitBounds> bounds;
  if (!cfg.full_data) {
    bounds = split(n);
    train_end = bounds->train_end;
  }
  if (train_end <= cfg.window) {
    throw DataError(fmt::format("{} training months leave no windows of size {}", train_end, cfg.window));
  }

  const NormalizationParams norm =
      fit_normalizer(std::span<const double>(series.values).subspan(0, train_end));
  const WindowedDataset ds = make_windows(norm.apply(series.values), cfg.window);
  const std::vector<WindowSample> train_samples = ds.targets_in(0, train_end);
  std::vector<WindowSample> val_samples;
  if (bounds) val_samples = ds.targets_in(bounds->train_end, bounds->validation_end);

  StackedModel model = init_model(cfg.hidden, cfg.window, cfg.seed);
  const std::vector<Matrix*> params = model.tensors();
  AdamState adam = AdamState::for_params(std::vector<const Matrix*>(params.begin(), params.end()));

  ModelGrads grads = StackedModel::zeros(cfg.hidden, cfg.window);
  const std::vector<Matrix*> grad_tensors = grads.tensors();
  const std::vector<const Matrix*> grad_view(grad_tensors.begin(), grad_tensors.end());

  Rng shuffle_rng(cfg.seed.value ^ kShuffleStreamSalt);
  std::vector<std::size_t> order(train_samples.size());

  Checkpoint best{model, norm, cfg, 0, {}, std::string(Rng::kIdentity)};
  std::optional<double> best_metric;
  auto abort = [&](const std::string& why) -> TrainingAborted {
    std::optional<Checkpoint> last_good;
    if (best.best_epoch > 0) last_good = best;
    return TrainingAborted(why, std::move(last_good));
  };

  for (std::size_t epoch = 1; epoch <= cfg.epochs; ++epoch) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    for (std::size_t i = order.size(); i > 1; --i) {
      std::swap(order[i - 1], order[shuffle_rng.below(i)]);
    }

    double epoch_loss = 0.0;
    for (std::size_t start = 0; start < order.size(); start += cfg.batch_size) {
      const std::size_t stop = std::min(order.size(), start + cfg.batch_size);
      const double inv_batch = 1.0 / static_cast<double>(stop - start);
      for (Matrix* g : grad_tensors) g->set_zero();

      for (std::size_t k = start; k < stop; ++k) {
        const WindowSample& s = train_samples[order[k]];
        WindowOutput out = forward_window(model, ds.inputs(s));
        double slope = 0.0;
        epoch_loss += loss_and_slope(cfg.loss, out.prediction - ds.values[s.target], slope);
        backward_window_into(model, out.trace, slope * inv_batch, grads);
      }
      if (!std::isfinite(epoch_loss)) throw abort(fmt::format("non-finite loss in epoch {}", epoch));
      if (cfg.clip_norm > 0.0) clip_global_norm(grad_tensors, cfg.clip_norm);
      try {
        adam_step(adam, cfg.adam, params, grad_view);
      } catch (const NumericError& e) {
        throw abort(fmt::format("epoch {}: {}", epoch, e.what()));
      }
    }

    EpochRecord rec;
    rec.epoch = epoch;
    rec.loss = epoch_loss / static_cast<double>(train_samples.size());
    const Scored tr = score(model, ds, norm, train_samples, series.values);
    rec.train_mae = tr.mae;
    rec.train_rmse = tr.rmse;
    if (!val_samples.empty()) {
      const Scored va = score(model, ds, norm, val_samples, series.values);
      rec.val_mae = va.mae;
      rec.val_rmse = va.rmse;
    }
    if (!std::isfinite(rec.train_mae) || !std::isfinite(rec.train_rmse) ||
        (rec.val_mae && (!std::isfinite(*rec.val_mae) || !std::isfinite(*rec.val_rmse)))) {
      throw abort(fmt::format("non-finite metric in epoch {}", epoch));
    }

    best.history.push_back(rec);
    const double metric = best.selection_metric(rec);
    if (!best_metric || metric < *best_metric) {
      best_metric = metric;
      best.best_epoch = epoch;
      best.model = model;
    }
    if (on_epoch) on_epoch(rec);
  }
  return best;
}

Evaluation evaluate(const Checkpoint& ckpt, const MonthlySeries& series, Split which) {
  const std::size_t window = ckpt.model.window;
  if (ckpt.config.window != window) {
    throw StateError(fmt::format("checkpoint config window {} disagrees with model window {}",
                                 ckpt.config.window, window));
  }
  const SplitBounds bounds = split(series.size());
  const std::size_t begin = std::max(bounds.begin(which), window);
  const std::size_t end = bounds.end(which);
  if (end <= begin) {
    throw DataError(fmt::format("{} split has no targets with window {}", split_name(which), window));
  }

  const WindowedDataset ds = make_windows(ckpt.normalizer.apply(series.values), window);
  const std::vector<WindowSample> samples = ds.targets_in(begin, end);
  Scored sc = score(ckpt.model, ds, ckpt.normalizer, samples, series.values);

  Evaluation ev;
  ev.mae = sc.mae;
  ev.rmse = sc.rmse;
  ev.predicted = std::move(sc.predicted);
  for (const WindowSample& s : samples) {
    ev.months.push_back(series.month_at(s.target));
    ev.actual.push_back(series.values[s.target]);
  }
  return ev;
}

}  // namespace firecast
