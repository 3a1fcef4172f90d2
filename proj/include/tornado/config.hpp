/*
 * Copyright 2026 The Tornado Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "tornado/integrator.hpp"

namespace tornado {

/// A configuration problem. `key()` names the offending key (or section),
/// `line()` is 1-based, 0 when the key is missing altogether.
class ConfigError : public std::runtime_error {
  public:
    ConfigError(std::string key, int line, const std::string& message);
    const std::string& key() const { return key_; }
    int line() const { return line_; }

  private:
    std::string key_;
    int line_;
};

/// Parses an INI-style run configuration:
///
///   [grid]    nx ny nz h [x_min y_min z_min]
///   [init]    R D [A hermite normalize project seed]
///             lambda.<axis>.<component> = D numbers  (axis, component in 1..3)
///             or: lambda = random  (drawn from `seed`)
///   [time]    dt t_max [snapshot_every blowup_threshold]
///   [output]  [dir method nonlinear]
///
/// `#` and `;` start comments. Unknown sections or keys are errors. The grid
/// origin is snapped down to the lattice hZ^3; x_min and y_min default to a
/// grid centered on the z axis and z_min to 1.
RunConfig parse_config(std::string_view text);

RunConfig load_config(const std::string& path);

}  // namespace tornado
