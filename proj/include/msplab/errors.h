// Copyright 2026 The Authors.
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

#ifndef MSPLAB_ERRORS_H_
#define MSPLAB_ERRORS_H_

#include <stdexcept>
#include <string>

namespace msplab {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An element index outside the matroid's ground set.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A precondition on a matroid operation was not met (e.g. contracting by a
// dependent set).
class ContractViolation : public Error {
 public:
  using Error::Error;
};

// Input too large for an exhaustive routine, or an exact-arithmetic overflow.
class CapacityError : public Error {
 public:
  using Error::Error;
};

// Bad user-supplied parameter (alpha <= 1, malformed file, ...).
class ParameterError : public Error {
 public:
  using Error::Error;
};

// A policy or algorithm was paired with a matroid it does not support.
class ConfigurationError : public Error {
 public:
  using Error::Error;
};

// The greedy framework's memory invariants were violated.
class FrameworkFault : public Error {
 public:
  using Error::Error;
};

// A structural invariant that should be impossible was observed.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

// A partition algorithm produced a dependent set, so its partition was not
// valid.
class ValidityBreach : public Error {
 public:
  using Error::Error;
};

// A partition distribution produced an invalid partition.
class DistributionFault : public Error {
 public:
  using Error::Error;
};

// OPT has zero weight, so ratios are undefined.
class DegenerateInstance : public Error {
 public:
  using Error::Error;
};

}  // namespace msplab

#endif  // MSPLAB_ERRORS_H_
