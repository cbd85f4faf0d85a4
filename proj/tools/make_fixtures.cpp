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

// Writes the box-built fixture corpus and evolution population as OBJ + JSON.

#include <filesystem>
#include <iostream>

#include "fame/dataset.hpp"
#include "fixtures.hpp"

int main(int argc, char** argv) {
  const std::filesystem::path root = argc > 1 ? argv[1] : "data";
  for (const auto& [dir, shapes] :
       {std::pair{root / "fixtures", fame::fixtures::corpus()},
        std::pair{root / "population", fame::fixtures::population()}}) {
    std::filesystem::create_directories(dir);
    for (const fame::Shape& s : shapes) fame::write_shape(dir, s);
    std::cout << dir.string() << ": " << shapes.size() << " shapes\n";
  }
  return 0;
}
