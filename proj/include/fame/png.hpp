// Copyright 2026 The fame Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fame/shape.hpp"

namespace fame {

/// 8-bit grayscale PNG, row-major pixels.
std::string encode_png_gray(const std::vector<std::uint8_t>& pixels, int width,
                            int height);

/// The canonical-view silhouettes tiled 5 x 2, dark shape on white.
std::string thumbnail_png(const Shape& shape);

}  // namespace fame
