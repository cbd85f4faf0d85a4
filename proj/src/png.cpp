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

#include "fame/png.hpp"

#include <png.h>

#include "fame/descriptor.hpp"
#include "fame/error.hpp"

namespace fame {

std::string encode_png_gray(const std::vector<std::uint8_t>& pixels, int width,
                            int height) {
  if (width <= 0 || height <= 0 ||
      pixels.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height))
    throw Error(ErrorCode::InvalidArgument, "pixel buffer does not match image size");
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(width);
  image.height = static_cast<png_uint_32>(height);
  image.format = PNG_FORMAT_GRAY;
  png_alloc_size_t size = 0;
  if (!png_image_write_to_memory(&image, nullptr, &size, 0, pixels.data(), 0, nullptr))
    throw Error(ErrorCode::InvalidArgument, "image encoding failed", image.message);
  std::string out(size, '\0');
  if (!png_image_write_to_memory(&image, out.data(), &size, 0, pixels.data(), 0, nullptr))
    throw Error(ErrorCode::InvalidArgument, "image encoding failed", image.message);
  out.resize(size);
  return out;
}

std::string thumbnail_png(const Shape& shape) {
  constexpr int n = kSilhouetteSize;
  constexpr int cols = 5;
  constexpr int rows = kViewCount / cols;
  const int width = cols * n, height = rows * n;
  std::vector<std::uint8_t> px(static_cast<std::size_t>(width) * height, 255);
  const ShapeDescriptor d = describe(shape);
  for (int v = 0; v < kViewCount; ++v) {
    const int ox = (v % cols) * n, oy = (v / cols) * n;
    for (int y = 0; y < n; ++y)
      for (int x = 0; x < n; ++x)
        if (d.views[v].test(static_cast<std::size_t>(y * n + x)))
          px[static_cast<std::size_t>(oy + y) * width + ox + x] = 40;
  }
  return encode_png_gray(px, width, height);
}

}  // namespace fame
