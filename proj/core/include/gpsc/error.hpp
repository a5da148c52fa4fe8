/*
 * Copyright 2026 The gpsc Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *
 */

#pragma once

#include <stdexcept>
#include <string>

namespace gpsc {

/// Raised when a Gram matrix cannot be factorized in double precision
/// (duplicate or near-duplicate points, or a near-degenerate kernel).
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string &what) : std::runtime_error(what) {}
};

/// Raised by checks that compare two computational routes.
class VerificationError : public std::runtime_error {
public:
    explicit VerificationError(const std::string &what) : std::runtime_error(what) {}
};

} // namespace gpsc
