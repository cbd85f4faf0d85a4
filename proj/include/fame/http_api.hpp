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

#include <filesystem>

#include "fame/error.hpp"
#include "fame/session.hpp"

namespace httplib {
class Server;
}

namespace fame {

int http_status(ErrorCode code);

/// Registers the /v1 routes. Dataset paths in POST /v1/sessions resolve
/// against `dataset_root` and may not leave it.
void mount_api(httplib::Server& server, SessionStore& store,
               std::filesystem::path dataset_root);

}  // namespace fame
