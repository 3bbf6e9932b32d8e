// Copyright 2026 The Flint Authors.
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

#ifndef FLINT_ERROR_H_
#define FLINT_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace flint {

// Coarse error family. Each family maps onto one CLI exit code.
enum class ErrorFamily {
  kConfig = 1,
  kData = 2,
  kAdapter = 3,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorFamily family, const std::string& what)
      : std::runtime_error(what), family_(family) {}

  ErrorFamily family() const { return family_; }
  int exit_code() const { return static_cast<int>(family_); }

 private:
  ErrorFamily family_;
};

#define FLINT_DEFINE_ERROR(Name, Family)                             \
  class Name : public Error {                                        \
   public:                                                           \
    explicit Name(const std::string& what)                           \
        : Error(ErrorFamily::Family, std::string(#Name ": ") + what) {} \
  }

// Edit traces.
FLINT_DEFINE_ERROR(OverlapError, kData);
FLINT_DEFINE_ERROR(BoundsError, kData);
FLINT_DEFINE_ERROR(LabelSplitError, kData);

// Datasets and lexicons.
FLINT_DEFINE_ERROR(DuplicateIdError, kData);
FLINT_DEFINE_ERROR(LexiconFormatError, kData);
FLINT_DEFINE_ERROR(InvariantError, kData);
FLINT_DEFINE_ERROR(TaskError, kData);
FLINT_DEFINE_ERROR(EmptyReportError, kData);

// Configuration.
FLINT_DEFINE_ERROR(ConfigError, kConfig);

// External model adapters.
FLINT_DEFINE_ERROR(AdapterUnavailable, kAdapter);
FLINT_DEFINE_ERROR(AdapterTimeout, kAdapter);
FLINT_DEFINE_ERROR(ProtocolError, kAdapter);
FLINT_DEFINE_ERROR(NoScoreSupport, kAdapter);

#undef FLINT_DEFINE_ERROR

// A record that does not match the task schema. Carries the 1-based record
// number and the offending field name.
class SchemaError : public Error {
 public:
  SchemaError(std::size_t record, std::string field, const std::string& what)
      : Error(ErrorFamily::kData,
              "SchemaError: record " + std::to_string(record) + ", field \"" +
                  field + "\": " + what),
        record_(record),
        field_(std::move(field)) {}

  std::size_t record() const { return record_; }
  const std::string& field() const { return field_; }

 private:
  std::size_t record_;
  std::string field_;
};

// Raised by a transformation when the sample has no eligible site. Not an
// error in the pipeline sense: callers skip the sample.
class NotApplicable : public std::runtime_error {
 public:
  explicit NotApplicable(const std::string& why)
      : std::runtime_error("NotApplicable: " + why) {}
};

}  // namespace flint

#endif  // FLINT_ERROR_H_
