// Copyright 2026 The BiRB Authors
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

#include "birb/log.hpp"

#include <atomic>
#include <cstdlib>
#include <iostream>
#include <mutex>
#include <string_view>

namespace birb {

namespace {

LogLevel from_env() {
    const char *env = std::getenv("BIRB_LOG");
    if (!env) {
        return LogLevel::Warn;
    }
    std::string_view v(env);
    if (v == "error") {
        return LogLevel::Error;
    }
    if (v == "info") {
        return LogLevel::Info;
    }
    if (v == "debug") {
        return LogLevel::Debug;
    }
    return LogLevel::Warn;
}

std::atomic<int> &level_storage() {
    static std::atomic<int> level{static_cast<int>(from_env())};
    return level;
}

}  // namespace

LogLevel log_level() {
    return static_cast<LogLevel>(level_storage().load());
}

void set_log_level(LogLevel level) {
    level_storage() = static_cast<int>(level);
}

void log_message(LogLevel level, const std::string &msg) {
    if (static_cast<int>(level) > level_storage().load()) {
        return;
    }
    static const char *names[] = {"error", "warn", "info", "debug"};
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    std::cerr << "birb[" << names[static_cast<int>(level)] << "] " << msg << '\n';
}

}  // namespace birb
