// Copyright 2026 The mrceval Authors
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

#ifndef MRCEVAL_ERROR_HPP_
#define MRCEVAL_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace mrceval {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad JSON, schema violations, wrong value types.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Structurally valid input that violates a dataset invariant
/// (offset/substring mismatch, duplicate ids, empty context, ...).
class IntegrityError : public Error {
 public:
  using Error::Error;
};

/// Predictions do not cover every dataset sample id.
class CoverageError : public Error {
 public:
  using Error::Error;
};

/// An operation was invoked on inputs it cannot work with
/// (empty pair list, bad split ratios, too few articles, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Filesystem-level failure: unreadable input, unwritable output.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace mrceval

#endif  // MRCEVAL_ERROR_HPP_
