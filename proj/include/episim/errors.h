// Copyright 2026 The episim Authors
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

#ifndef EPISIM_ERRORS_H
#define EPISIM_ERRORS_H

#include <stdexcept>
#include <string>

namespace episim
{

/// Invalid simulation, sweep or grid configuration.
class ConfigError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Invalid input data passed to an analysis routine, or a malformed data file.
class InputError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Scenario file problem. Carries the 1-based line number when known (0 otherwise).
class ScenarioError : public std::runtime_error
{
public:
    ScenarioError(const std::string& source, int line, const std::string& what)
        : std::runtime_error(source + (line > 0 ? ":" + std::to_string(line) : std::string()) + ": " + what)
        , m_line(line)
    {
    }

    int line() const
    {
        return m_line;
    }

private:
    int m_line;
};

} // namespace episim

#endif // EPISIM_ERRORS_H
