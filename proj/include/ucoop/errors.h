// Copyright 2026 The ucoop Authors.
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

#ifndef UCOOP_ERRORS_H_
#define UCOOP_ERRORS_H_

#include <stdexcept>
#include <string>

namespace ucoop {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define UCOOP_DEFINE_ERROR(Name)             \
  class Name : public Error {                \
   public:                                   \
    explicit Name(const std::string& what)   \
        : Error(std::string(#Name ": ") + what) {} \
  }

// Input could not be parsed (documents, rational literals).
UCOOP_DEFINE_ERROR(ParseError);
// A structurally invalid game or family was supplied.
UCOOP_DEFINE_ERROR(InvalidGame);
UCOOP_DEFINE_ERROR(UnknownCoalition);
UCOOP_DEFINE_ERROR(TrivialCoalition);
UCOOP_DEFINE_ERROR(TrivialCoalitionInCollection);
UCOOP_DEFINE_ERROR(MalformedProgram);
UCOOP_DEFINE_ERROR(OutOfRange);
UCOOP_DEFINE_ERROR(InvalidUtility);
UCOOP_DEFINE_ERROR(UnboundedBelow);
UCOOP_DEFINE_ERROR(EmptyNontrivialFamily);
UCOOP_DEFINE_ERROR(NotBalanced);
UCOOP_DEFINE_ERROR(NotUBalanced);
UCOOP_DEFINE_ERROR(BisectionTolerance);
UCOOP_DEFINE_ERROR(RestrictedFamilyUnsupported);
UCOOP_DEFINE_ERROR(GeneralUtilityUnsupported);
UCOOP_DEFINE_ERROR(PartitionLimitExceeded);
UCOOP_DEFINE_ERROR(TooManyPlayers);
UCOOP_DEFINE_ERROR(InternalError);

#undef UCOOP_DEFINE_ERROR

}  // namespace ucoop

#endif  // UCOOP_ERRORS_H_
