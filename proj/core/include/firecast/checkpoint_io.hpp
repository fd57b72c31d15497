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

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "firecast/training.hpp"

namespace firecast {

// Single-file little-endian container; layout documented in
// docs/checkpoint_format.md.
inline constexpr std::string_view kCheckpointMagic{"FIRECKPT", 8};
inline constexpr std::uint32_t kCheckpointVersion = 1;

std::string encode_checkpoint(const Checkpoint& ckpt);
// Throws BadMagicError, UnsupportedVersionError, IntegrityError (checksum or
// truncation) or ShapeError (tensor shapes disagree with the architecture).
Checkpoint decode_checkpoint(std::string_view bytes);

// Writes to a sibling temp file then renames over `path`. Throws IoError.
void save_checkpoint(const Checkpoint& ckpt, const std::filesystem::path& path);
Checkpoint load_checkpoint(const std::filesystem::path& path);

}  // namespace firecast
