// Copyright 2026 The Paraseg Authors
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

#ifndef PARASEG_ERROR_H_
#define PARASEG_ERROR_H_

#include <stdexcept>
#include <string>

namespace paraseg {

// Root of all library errors. The CLI maps each subclass to its own exit
// code, so new failure categories should get a new subclass rather than
// reusing a generic one.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A caller broke a documented precondition (length mismatch, bad level...).
class ContractError : public Error {
 public:
  using Error::Error;
};

// Input data does not satisfy a schema or invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Structured-file parse failure. Carries the 1-based line number and the
// record id when it could be recovered from the broken line.
class ParseError : public ValidationError {
 public:
  ParseError(const std::string& what, std::size_t line, std::string id = {})
      : ValidationError(what), line_(line), id_(std::move(id)) {}

  std::size_t line() const { return line_; }
  const std::string& id() const { return id_; }

 private:
  std::size_t line_;
  std::string id_;
};

// File could not be opened, read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

// Prompt template is malformed.
class TemplateError : public Error {
 public:
  using Error::Error;
};

}  // namespace paraseg

#endif  // PARASEG_ERROR_H_
