//  Copyright 2026 The latclone Authors
//
//  Licensed under the Apache License, Version 2.0 (the "License");
//  you may not use this file except in compliance with the License.
//  You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
//  Unless required by applicable law or agreed to in writing, software
//  distributed under the License is distributed on an "AS IS" BASIS,
//  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//  See the License for the specific language governing permissions and
//  limitations under the License.

#ifndef LATCLONE_ERROR_HPP_
#define LATCLONE_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace latclone {

enum class Errc {
  InvalidSize,
  InvalidInput,
  NotAPartialOrder,
  NotALattice,
  NotBounded,
  EmptyTuple,
  ArityMismatch,
  LatticeMismatch,
  IndexOutOfRange,
  BudgetExceeded,
  PreconditionViolated,
  EmptyAgreementSet,
  NotIdempotent,
  NotAggregation,
  UnsupportedArity,
  InvalidSpec,
  SyntaxError,
  ParseError,
};

constexpr std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::InvalidSize: return "InvalidSize";
    case Errc::InvalidInput: return "InvalidInput";
    case Errc::NotAPartialOrder: return "NotAPartialOrder";
    case Errc::NotALattice: return "NotALattice";
    case Errc::NotBounded: return "NotBounded";
    case Errc::EmptyTuple: return "EmptyTuple";
    case Errc::ArityMismatch: return "ArityMismatch";
    case Errc::LatticeMismatch: return "LatticeMismatch";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::PreconditionViolated: return "PreconditionViolated";
    case Errc::EmptyAgreementSet: return "EmptyAgreementSet";
    case Errc::NotIdempotent: return "NotIdempotent";
    case Errc::NotAggregation: return "NotAggregation";
    case Errc::UnsupportedArity: return "UnsupportedArity";
    case Errc::InvalidSpec: return "InvalidSpec";
    case Errc::SyntaxError: return "SyntaxError";
    case Errc::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Every failure raised by the library. what() reads "<Code>: <detail>".
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& detail)
      : std::runtime_error(std::string(errc_name(code)) + ": " + detail),
        code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace latclone

#endif  // LATCLONE_ERROR_HPP_
