// Copyright 2026 The ptmoments Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * Error types shared by all ptmoments modules.
 */

#pragma once

#include <stdexcept>
#include <string>

namespace ptm {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Requested size or order exceeds what an operation supports.
class CapabilityError : public Error {
  public:
    using Error::Error;
};

/// Arguments violate a documented precondition.
class ValidationError : public Error {
  public:
    using Error::Error;
};

/// A ratio or inverse with a vanishing denominator.
class SingularInputError : public Error {
  public:
    using Error::Error;
};

/// Eigensolver or factorization failure.
class NumericError : public Error {
  public:
    using Error::Error;
};

/// Subsystem layout the algorithm cannot represent.
class UnsupportedLayoutError : public Error {
  public:
    using Error::Error;
};

} // namespace ptm
