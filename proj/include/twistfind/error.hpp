#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace twistfind {

enum class Errc {
  OriginNotRepresentable,
  SelfIntersecting,
  Degenerate,
  DomainError,
  InvalidRatio,
  ResolutionTooCoarse,
  CoincidentPoints,
  InvalidInput,
  InvalidConfig,
};

std::string_view to_string(Errc code);

/// Input and precondition failures. Search-level "hypothesis not met"
/// outcomes are reported through SearchOutcome instead.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace twistfind
