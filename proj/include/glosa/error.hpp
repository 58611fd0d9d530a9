// Copyright 2026 The GLOSA Cloud Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GLOSA__ERROR_HPP_
#define GLOSA__ERROR_HPP_

#include <stdexcept>
#include <string>

namespace glosa
{

/// Invalid or inconsistent scenario configuration. The message names the offending field.
class ConfigError : public std::runtime_error
{
public:
  ConfigError(const std::string & field, const std::string & what)
  : std::runtime_error(field + ": " + what), field_(field)
  {
  }

  const std::string & field() const noexcept { return field_; }

private:
  std::string field_;
};

/// Physically impossible world state (e.g. a negative gap). Indicates a model bug.
class SimulationError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// QP solver hit its iteration cap or met a numerically broken instance.
class SolverError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Paired inputs that do not belong together (different seeds, different CV populations).
class MismatchError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

}  // namespace glosa

#endif  // GLOSA__ERROR_HPP_
