// Copyright 2026 The qetnet Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace qetnet {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Operands disagree on qubit count, or an index is out of range.
class DimensionError : public Error {
  public:
    using Error::Error;
};

/// A resource guard (qubit capacity, vertex count) would be exceeded.
class CapacityError : public Error {
  public:
    using Error::Error;
};

/// Parameters violate a documented precondition.
class InvalidArgument : public Error {
  public:
    using Error::Error;
};

/// Result would be ill-defined: non-Hermitian input, degenerate ground
/// space, undefined feedback angle.
class NumericalError : public Error {
  public:
    using Error::Error;
};

}  // namespace qetnet
