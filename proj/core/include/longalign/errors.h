// Copyright 2026 The longalign Authors.
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

#ifndef LONGALIGN_ERRORS_H_
#define LONGALIGN_ERRORS_H_

#include <stdexcept>
#include <string>

namespace longalign {

// Base class for every error raised by the library. The CLI maps it to the
// "data error" exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or truncated file contents, bad checksums, unparsable lines.
class FormatError : public Error {
 public:
  using Error::Error;
};

// A value violates the invariants of the type it is used to construct.
class InvariantError : public Error {
 public:
  using Error::Error;
};

// FULL-mode alignment would exceed the configured memory budget.
class MemoryBudgetError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace longalign

#endif  // LONGALIGN_ERRORS_H_
