#pragma once

#include <stdexcept>
#include <string>

namespace cofra {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CoalitionNotSubset : Error { using Error::Error; };
struct OverlappingCoalitions : Error { using Error::Error; };
struct NotTwoAgents : Error { using Error::Error; };
struct EmptyAtState : Error { using Error::Error; };
struct NotDeterministic : Error { using Error::Error; };
struct NotSID : Error { using Error::Error; };
struct InvalidParams : Error { using Error::Error; };
struct GenerationFailed : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };
struct KindMismatch : Error { using Error::Error; };

}  // namespace cofra
