// SPDX-License-Identifier: Apache-2.0
//
// reflect-lab  Link-budget simulation for massive MIMO and reflecting surfaces
// Copyright (C) 2026 reflect-lab developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef REFLECT_LAB_ERRORS_HPP
#define REFLECT_LAB_ERRORS_HPP

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace reflect_lab
{
    // Base of all library errors. category() is a stable, machine-parsable tag;
    // the CLI maps it onto its exit codes.
    class Error : public std::runtime_error
    {
    public:
        Error(std::string category, const std::string &message)
            : std::runtime_error(message), category_(std::move(category)) {}

        const std::string &category() const noexcept { return category_; }

    private:
        std::string category_;
    };

    // Precondition violation on a library call (gain out of range, zero
    // combiner, mismatched vector lengths, ...).
    class InvalidInput : public Error
    {
    public:
        explicit InvalidInput(const std::string &message) : Error("invalid-input", message) {}
    };

    // The requested element count pushes the spherical gain model past the
    // unit energy bound. Carries the largest admissible count.
    class SaturationError : public Error
    {
    public:
        SaturationError(const std::string &message, std::uint64_t n_max)
            : Error("saturation", message), n_max_(n_max) {}

        std::uint64_t n_max() const noexcept { return n_max_; }

    private:
        std::uint64_t n_max_;
    };

    // A breakeven target that the model cannot reach within the solver's
    // search bound. Carries the best rate seen at that bound.
    class UnreachableTargetError : public Error
    {
    public:
        UnreachableTargetError(const std::string &message, double supremum_rate)
            : Error("solver", message), supremum_rate_(supremum_rate) {}

        double supremum_rate() const noexcept { return supremum_rate_; }

    private:
        double supremum_rate_;
    };

    // Problem in a configuration document. line is 1-based; 0 means the error
    // is not tied to a single line.
    class ConfigError : public Error
    {
    public:
        explicit ConfigError(const std::string &message, std::size_t line = 0)
            : Error("config", decorate(message, line)), line_(line) {}

        std::size_t line() const noexcept { return line_; }

    private:
        static std::string decorate(const std::string &message, std::size_t line)
        {
            return line == 0 ? message : "line " + std::to_string(line) + ": " + message;
        }

        std::size_t line_;
    };

    class IoError : public Error
    {
    public:
        explicit IoError(const std::string &message) : Error("io", message) {}
    };

} // namespace reflect_lab

#endif
