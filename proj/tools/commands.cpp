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

#include "commands.hpp"

#include <algorithm>
#include <filesystem>
#include <optional>
#include <system_error>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "firecast/checkpoint_io.hpp"
#include "firecast/csv_io.hpp"
#include "firecast/dataset.hpp"
#include "firecast/error.hpp"
#include "firecast/forecast.hpp"
#include "firecast/svg_plot.hpp"
#include "firecast/training.hpp"

namespace firecast::cli {

namespace fs = std::filesystem;

namespace {

// Input files are checked up front so a missing path maps to the usage exit
// code instead of a generic I/O failure halfway through a command.
class MissingInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void require_file(const std::string& path) {
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) throw MissingInput(fmt::format("input file '{}' does not exist", path));
}

void remove_quietly(const fs::path& p) {
  std::error_code ec;
  fs::remove(p, ec);
  fs::path tmp = p;
  tmp += ".tmp";
  fs::remove(tmp, ec);
}

struct StatsArgs {
  std::string csv;
  bool json = false;
};

struct TrainArgs {
  std::string csv;
  std::string out = "model.fckpt";
  std::string history;
  std::uint64_t seed = 2024;
  std::size_t epochs = 1000;
  std::size_t hidden = 256;
  std::size_t window = 12;
  std::size_t batch = 32;
  std::string loss = "mae";
  bool full_data = false;
  double learning_rate = 0.001;
  double clip_norm = 0.0;
  std::size_t log_every = 100;
};

struct EvaluateArgs {
  std::string checkpoint;
  std::string csv;
  std::string split = "test";
  std::string out;
};

struct ForecastArgs {
  std::string checkpoint;
  std::string csv;
  std::size_t horizon = 12;
  bool no_clamp = false;
  std::string out;
};

struct PlotArgs {
  std::string csv;
  std::string forecast;
  std::string history;
  std::string out;
  std::string title = "Monthly series";
};

int cmd_stats(const StatsArgs& a, std::ostream& out) {
  require_file(a.csv);
  const MonthlySeries s = load_csv(a.csv);
  const DescriptiveStats st = describe(s.values);
  if (a.json) {
    nlohmann::ordered_json j;
    j["months"] = s.size();
    j["start"] = s.start_month.to_string();
    j["end"] = s.end_month().to_string();
    j["min"] = st.min;
    j["mean"] = st.mean;
    j["max"] = st.max;
    j["stddev"] = st.stddev;
    j["variance"] = st.variance;
    out << j.dump(2) << '\n';
    return kExitOk;
  }
  out << fmt::format("series: {} months ({} .. {})\n", s.size(), s.start_month.to_string(),
                     s.end_month().to_string());
  out << fmt::format("{:>12} {:>12} {:>12} {:>12} {:>16}\n", "min", "mean", "max", "stddev", "variance");
  out << fmt::format("{:>12.3f} {:>12.3f} {:>12.3f} {:>12.2f} {:>16.0f}\n", st.min, st.mean, st.max, st.stddev,
                     st.variance);
  return kExitOk;
}

int cmd_train(const TrainArgs& a, std::ostream& out) {
  require_file(a.csv);
  TrainConfig cfg;
  cfg.seed = Seed{a.seed};
  cfg.epochs = a.epochs;
  cfg.hidden = a.hidden;
  cfg.window = a.window;
  cfg.batch_size = a.batch;
  cfg.loss = *parse_loss(a.loss);
  cfg.full_data = a.full_data;
  cfg.adam.alpha = a.learning_rate;
  cfg.clip_norm = a.clip_norm;
  cfg.validate();

  const MonthlySeries series = load_csv(a.csv);
  const fs::path ckpt_path = a.out;
  const fs::path history_path = a.history.empty() ? fs::path(a.out + ".history.csv") : fs::path(a.history);

  out << fmt::format("mode: {} (selection: {})\n", cfg.full_data ? "full-data" : "split", selection_name(cfg.selection()));
  out << fmt::format("config: seed={} epochs={} hidden={} window={} batch={} loss={}\n", cfg.seed.value, cfg.epochs,
                     cfg.hidden, cfg.window, cfg.batch_size, loss_name(cfg.loss));

  const Checkpoint ckpt = train(series, cfg, [&](const EpochRecord& r) {
    if (a.log_every > 0 && (r.epoch % a.log_every == 0 || r.epoch == 1 || r.epoch == cfg.epochs)) {
      out << fmt::format("epoch {:>5}  loss {:.6f}  train MAE {:.3f}  RMSE {:.3f}", r.epoch, r.loss, r.train_mae,
                         r.train_rmse);
      if (r.val_mae) out << fmt::format("  val MAE {:.3f}  RMSE {:.3f}", *r.val_mae, *r.val_rmse);
      out << '\n' << std::flush;
    }
  });

  try {
    save_checkpoint(ckpt, ckpt_path);
    write_text_file_atomic(history_path, history_csv(ckpt.history));
  } catch (...) {
    remove_quietly(ckpt_path);
    remove_quietly(history_path);
    throw;
  }

  const EpochRecord& best = ckpt.history[ckpt.best_epoch - 1];
  out << fmt::format("best epoch {}: train MAE {:.3f} RMSE {:.3f}", best.epoch, best.train_mae, best.train_rmse);
  if (best.val_mae) out << fmt::format(", val MAE {:.3f} RMSE {:.3f}", *best.val_mae, *best.val_rmse);
  out << '\n';
  out << fmt::format("wrote {} and {}\n", ckpt_path.string(), history_path.string());
  return kExitOk;
}

int cmd_evaluate(const EvaluateArgs& a, std::ostream& out) {
  require_file(a.checkpoint);
  require_file(a.csv);
  const Split which = *parse_split(a.split);
  const Checkpoint ckpt = load_checkpoint(a.checkpoint);
  const MonthlySeries series = load_csv(a.csv);
  const Evaluation ev = evaluate(ckpt, series, which);

  out << fmt::format("split: {} ({} months)\n", split_name(which), ev.months.size());
  out << fmt::format("MAE: {:.3f}\nRMSE: {:.3f}\n", ev.mae, ev.rmse);
  if (a.out.empty()) {
    out << '\n' << predictions_csv(ev);
  } else {
    write_text_file_atomic(a.out, predictions_csv(ev));
    out << fmt::format("wrote {}\n", a.out);
  }
  return kExitOk;
}

int cmd_forecast(const ForecastArgs& a, std::ostream& out) {
  require_file(a.checkpoint);
  require_file(a.csv);
  const Checkpoint ckpt = load_checkpoint(a.checkpoint);
  const MonthlySeries series = load_csv(a.csv);
  const ForecastResult fc = forecast(ckpt, series, a.horizon, !a.no_clamp);
  if (a.out.empty()) {
    out << forecast_csv(fc);
  } else {
    write_text_file_atomic(a.out, forecast_csv(fc));
    out << fmt::format("wrote {} ({} .. {})\n", a.out, fc.month_at(0).to_string(),
                       fc.month_at(fc.horizon - 1).to_string());
  }
  return kExitOk;
}

int cmd_plot(const PlotArgs& a, std::ostream& out) {
  require_file(a.csv);
  if (!a.forecast.empty()) require_file(a.forecast);
  if (!a.history.empty()) require_file(a.history);

  PlotInputs in;
  in.series = load_csv(a.csv);
  in.title = a.title;
  if (!a.forecast.empty()) in.forecast = parse_forecast_csv(read_text_file(a.forecast));
  if (!a.history.empty()) in.history = parse_history_csv(read_text_file(a.history));
  write_text_file_atomic(a.out, render_svg(in));
  out << fmt::format("wrote {}\n", a.out);
  return kExitOk;
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Recurrent (LSTM -> GRU -> dense) forecaster for monthly count series"};
  app.name(args.empty() ? "firecast" : fs::path(args[0]).filename().string());
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  StatsArgs stats;
  auto* s = app.add_subcommand("stats", "Descriptive statistics of a monthly series CSV");
  s->add_option("csv", stats.csv, "Series CSV (month,count)")->required();
  s->add_flag("--json", stats.json, "Emit JSON instead of a table");

  TrainArgs tr;
  auto* t = app.add_subcommand("train", "Train a model and write the best-epoch checkpoint");
  t->add_option("csv", tr.csv, "Series CSV (month,count)")->required();
  t->add_option("--out", tr.out, "Checkpoint path")->capture_default_str();
  t->add_option("--history", tr.history, "Epoch-history CSV path (default: <out>.history.csv)");
  t->add_option("--seed", tr.seed, "Random seed for initialization and shuffling")->capture_default_str();
  t->add_option("--epochs", tr.epochs, "Number of epochs")->capture_default_str()->check(CLI::PositiveNumber);
  t->add_option("--hidden", tr.hidden, "Width of the LSTM, GRU and first dense layer")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  t->add_option("--window", tr.window, "Input window length in months")->capture_default_str()->check(CLI::PositiveNumber);
  t->add_option("--batch", tr.batch, "Mini-batch size")->capture_default_str()->check(CLI::PositiveNumber);
  t->add_option("--loss", tr.loss, "Training loss")->capture_default_str()->check(CLI::IsMember({"mae", "mse"}));
  t->add_flag("--full-data", tr.full_data, "Train on the whole series; select the best epoch by train MAE");
  t->add_option("--learning-rate", tr.learning_rate, "Adam step size")->capture_default_str()->check(CLI::PositiveNumber);
  t->add_option("--clip-norm", tr.clip_norm, "Global gradient-norm clip, 0 disables")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  t->add_option("--log-every", tr.log_every, "Print metrics every N epochs, 0 silences")->capture_default_str();

  EvaluateArgs ev;
  auto* e = app.add_subcommand("evaluate", "One-step-ahead MAE/RMSE of a checkpoint on a split");
  e->add_option("checkpoint", ev.checkpoint, "Checkpoint file")->required();
  e->add_option("csv", ev.csv, "Series CSV (month,count)")->required();
  e->add_option("--split", ev.split, "train, validation (val) or test")
      ->capture_default_str()
      ->check(CLI::IsMember({"train", "validation", "val", "test"}));
  e->add_option("--out", ev.out, "Write month,actual,predicted CSV here instead of stdout");

  ForecastArgs fc;
  auto* f = app.add_subcommand("forecast", "Recursive multi-step forecast after the last observed month");
  f->add_option("checkpoint", fc.checkpoint, "Checkpoint file")->required();
  f->add_option("csv", fc.csv, "Series CSV (month,count)")->required();
  f->add_option("--horizon", fc.horizon, "Months to forecast")->capture_default_str()->check(CLI::PositiveNumber);
  f->add_flag("--no-clamp", fc.no_clamp, "Keep negative predictions instead of clamping at 0");
  f->add_option("--out", fc.out, "Write month,predicted_count CSV here instead of stdout");

  PlotArgs pl;
  auto* p = app.add_subcommand("plot", "Render the series (and optional forecast/loss curve) as SVG");
  p->add_option("csv", pl.csv, "Series CSV (month,count)")->required();
  p->add_option("--forecast", pl.forecast, "Forecast CSV (month,predicted_count)");
  p->add_option("--history", pl.history, "Epoch-history CSV for a loss panel");
  p->add_option("--out", pl.out, "Output SVG path")->required();
  p->add_option("--title", pl.title, "Chart title")->capture_default_str();

  std::vector<std::string> rest(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
  std::reverse(rest.begin(), rest.end());
  try {
    app.parse(rest);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& ex) {
    err << "error: " << ex.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*s) return cmd_stats(stats, out);
    if (*t) return cmd_train(tr, out);
    if (*e) return cmd_evaluate(ev, out);
    if (*f) return cmd_forecast(fc, out);
    if (*p) return cmd_plot(pl, out);
  } catch (const MissingInput& ex) {
    err << "error: " << ex.what() << '\n';
    return kExitUsage;
  } catch (const ArgumentError& ex) {
    err << "error: " << ex.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace firecast::cli
