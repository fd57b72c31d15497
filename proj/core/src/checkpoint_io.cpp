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

#include "firecast/checkpoint_io.hpp"

#include <bit>
#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <zlib.h>

#include "firecast/csv_io.hpp"
#include "firecast/error.hpp"

namespace firecast {

namespace {

class Writer {
 public:
  void u8(std::uint8_t v) { out_.push_back(static_cast<char>(v)); }
  void u32(std::uint32_t v) {
    for (int k = 0; k < 4; ++k) u8(static_cast<std::uint8_t>(v >> (8 * k)));
  }
  void u64(std::uint64_t v) {
    for (int k = 0; k < 8; ++k) u8(static_cast<std::uint8_t>(v >> (8 * k)));
  }
  void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
  void str(std::string_view s) {
    u32(static_cast<std::uint32_t>(s.size()));
    out_.append(s);
  }
  void raw(std::string_view s) { out_.append(s); }
  std::string& bytes() { return out_; }

 private:
  std::string out_;
};

class Reader {
 public:
  explicit Reader(std::string_view in) : in_(in) {}

  std::uint8_t u8() {
    need(1);
    return static_cast<std::uint8_t>(in_[pos_++]);
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int k = 0; k < 4; ++k) v |= static_cast<std::uint32_t>(static_cast<std::uint8_t>(in_[pos_++])) << (8 * k);
    return v;
  }
  std::uint64_t u64() {
    need(8);
    std::uint64_t v = 0;
    for (int k = 0; k < 8; ++k) v |= static_cast<std::uint64_t>(static_cast<std::uint8_t>(in_[pos_++])) << (8 * k);
    return v;
  }
  double f64() { return std::bit_cast<double>(u64()); }
  std::string str() {
    const std::uint32_t n = u32();
    need(n);
    std::string s(in_.substr(pos_, n));
    pos_ += n;
    return s;
  }
  std::size_t remaining() const { return in_.size() - pos_; }

 private:
  void need(std::size_t n) const {
    if (in_.size() - pos_ < n) throw IntegrityError("checkpoint payload ends early");
  }
  std::string_view in_;
  std::size_t pos_ = 0;
};

std::uint32_t crc_of(std::string_view bytes) {
  return static_cast<std::uint32_t>(
      crc32(0L, reinterpret_cast<const Bytef*>(bytes.data()), static_cast<uInt>(bytes.size())));
}

// magic(8) + version(4) + payload length(8)
constexpr std::size_t kPreambleSize = 8 + 4 + 8;
constexpr std::size_t kTrailerSize = 4;

}  // namespace

std::string encode_checkpoint(const Checkpoint& ckpt) {
  ckpt.model.validate();
  Writer p;
  p.u32(static_cast<std::uint32_t>(StackedModel::kInputWidth));
  p.u32(static_cast<std::uint32_t>(ckpt.model.hidden));
  p.u32(static_cast<std::uint32_t>(ckpt.model.window));
  p.f64(ckpt.normalizer.min);
  p.f64(ckpt.normalizer.max);
  p.u64(ckpt.config.seed.value);
  p.str(ckpt.rng_identity);

  const TrainConfig& c = ckpt.config;
  p.u64(c.epochs);
  p.u64(c.batch_size);
  p.u8(c.loss == LossKind::kMAE ? 0 : 1);
  p.u8(c.full_data ? 1 : 0);
  p.f64(c.adam.alpha);
  p.f64(c.adam.beta1);
  p.f64(c.adam.beta2);
  p.f64(c.adam.epsilon);
  p.f64(c.clip_norm);

  p.u64(ckpt.best_epoch);
  p.u64(ckpt.history.size());
  for (const EpochRecord& r : ckpt.history) {
    p.u64(r.epoch);
    p.f64(r.loss);
    p.f64(r.train_mae);
    p.f64(r.train_rmse);
    p.u8(r.val_mae.has_value() ? 1 : 0);
    p.f64(r.val_mae.value_or(0.0));
    p.f64(r.val_rmse.value_or(0.0));
  }

  const auto names = StackedModel::tensor_names();
  const auto tensors = ckpt.model.tensors();
  p.u32(static_cast<std::uint32_t>(tensors.size()));
  for (std::size_t k = 0; k < tensors.size(); ++k) {
    p.str(names[k]);
    p.u32(static_cast<std::uint32_t>(tensors[k]->rows()));
    p.u32(static_cast<std::uint32_t>(tensors[k]->cols()));
    for (double x : tensors[k]->values()) p.f64(x);
  }

  Writer file;
  file.raw(kCheckpointMagic);
  file.u32(kCheckpointVersion);
  file.u64(p.bytes().size());
  file.raw(p.bytes());
  file.u32(crc_of(file.bytes()));
  return std::move(file.bytes());
}

Checkpoint decode_checkpoint(std::string_view bytes) {
  if (bytes.size() < kCheckpointMagic.size() || bytes.substr(0, kCheckpointMagic.size()) != kCheckpointMagic) {
    throw BadMagicError("not a firecast checkpoint (bad magic)");
  }
  Reader pre(bytes.substr(kCheckpointMagic.size()));
  const std::uint32_t version = pre.u32();
  if (version != kCheckpointVersion) {
    throw UnsupportedVersionError(
        fmt::format("checkpoint format version {} is not supported (expected {})", version, kCheckpointVersion));
  }
  const std::uint64_t payload_len = pre.u64();
  if (bytes.size() < kPreambleSize + kTrailerSize || payload_len != bytes.size() - kPreambleSize - kTrailerSize) {
    throw IntegrityError(fmt::format("checkpoint is {} bytes but declares a {}-byte payload", bytes.size(),
                                     payload_len));
  }
  const std::string_view body = bytes.substr(0, bytes.size() - kTrailerSize);
  Reader trailer(bytes.substr(bytes.size() - kTrailerSize));
  if (trailer.u32() != crc_of(body)) throw IntegrityError("checkpoint checksum mismatch");

  Reader r(body.substr(kPreambleSize));
  const std::uint32_t input_width = r.u32();
  const std::uint32_t hidden = r.u32();
  const std::uint32_t window = r.u32();
  if (input_width != StackedModel::kInputWidth || hidden == 0 || window == 0) {
    throw ShapeError(fmt::format("checkpoint architecture input={} hidden={} window={} is invalid", input_width,
                                 hidden, window));
  }

  Checkpoint ck;
  ck.normalizer.min = r.f64();
  ck.normalizer.max = r.f64();
  ck.config.seed.value = r.u64();
  ck.rng_identity = r.str();

  TrainConfig& c = ck.config;
  c.hidden = hidden;
  c.window = window;
  c.epochs = r.u64();
  c.batch_size = r.u64();
  const std::uint8_t loss = r.u8();
  if (loss > 1) throw IntegrityError(fmt::format("unknown loss code {}", loss));
  c.loss = loss == 0 ? LossKind::kMAE : LossKind::kMSE;
  c.full_data = r.u8() != 0;
  c.adam.alpha = r.f64();
  c.adam.beta1 = r.f64();
  c.adam.beta2 = r.f64();
  c.adam.epsilon = r.f64();
  c.clip_norm = r.f64();

  ck.best_epoch = r.u64();
  const std::uint64_t history_len = r.u64();
  // Each record is 8 + 3*8 + 1 + 2*8 bytes.
  if (history_len > r.remaining() / 49) throw IntegrityError("history length exceeds file size");
  ck.history.reserve(history_len);
  for (std::uint64_t k = 0; k < history_len; ++k) {
    EpochRecord e;
    e.epoch = r.u64();
    e.loss = r.f64();
    e.train_mae = r.f64();
    e.train_rmse = r.f64();
    const bool has_val = r.u8() != 0;
    const double vm = r.f64(), vr = r.f64();
    if (has_val) {
      e.val_mae = vm;
      e.val_rmse = vr;
    }
    ck.history.push_back(e);
  }

  ck.model = StackedModel::zeros(hidden, window);
  const auto names = StackedModel::tensor_names();
  const auto tensors = ck.model.tensors();
  const std::uint32_t count = r.u32();
  if (count != tensors.size()) {
    throw ShapeError(fmt::format("checkpoint has {} tensors, architecture needs {}", count, tensors.size()));
  }
  for (std::size_t k = 0; k < tensors.size(); ++k) {
    const std::string name = r.str();
    const std::uint32_t rows = r.u32(), cols = r.u32();
    if (name != names[k] || rows != tensors[k]->rows() || cols != tensors[k]->cols()) {
      throw ShapeError(fmt::format("tensor {} is '{}' {}x{}, expected '{}' {}", k, name, rows, cols, names[k],
                                   tensors[k]->shape_string()));
    }
    for (double& x : tensors[k]->values()) x = r.f64();
  }
  if (r.remaining() != 0) throw IntegrityError("trailing bytes after tensor data");
  return ck;
}

void save_checkpoint(const Checkpoint& ckpt, const std::filesystem::path& path) {
  write_text_file_atomic(path, encode_checkpoint(ckpt));
}

Checkpoint load_checkpoint(const std::filesystem::path& path) { return decode_checkpoint(read_text_file(path)); }

}  // namespace firecast
