#pragma once

#include <stdexcept>
#include <string>

namespace fgm {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidPermutation : Error { using Error::Error; };
struct ClosureExceedsCap : Error { using Error::Error; };
struct NotUnitary : Error { using Error::Error; };
struct AmbiguousDeduplication : Error { using Error::Error; };
struct NotNormal : Error { using Error::Error; };
struct SizeMismatch : Error { using Error::Error; };
struct AxiomsNotVerified : Error { using Error::Error; };
struct NotContractive : Error { using Error::Error; };
struct TrivialGroup : Error { using Error::Error; };
struct InvalidClamp : Error { using Error::Error; };
struct EpsilonOutOfRange : Error { using Error::Error; };
struct ScanBudgetExceeded : Error { using Error::Error; };
struct NoMatrixAttachment : Error { using Error::Error; };
struct NoPermutationAttachment : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };

}  // namespace fgm
