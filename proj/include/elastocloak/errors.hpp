#pragma once

#include <stdexcept>
#include <string>

namespace elastocloak {

enum class ErrorKind {
  Domain = 1,
  Singular = 2,
  Orientation = 3,
  Joint = 4,
  NearResonance = 5,
  SearchWindow = 6,
  Io = 7,
  Parse = 8,
  DegenerateData = 9,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(ErrorKind::Domain, what) {}
};

class SingularityError : public Error {
 public:
  explicit SingularityError(const std::string& what) : Error(ErrorKind::Singular, what) {}
};

// Raised by assemble_ntd when a mode system is too ill-conditioned to trust.
class NearResonanceError : public Error {
 public:
  NearResonanceError(int mode, double cond)
      : Error(ErrorKind::NearResonance,
              "near-resonance at mode " + std::to_string(mode) + " (condition " + std::to_string(cond) + ")"),
        mode_(mode),
        cond_(cond) {}
  int mode() const noexcept { return mode_; }
  double condition() const noexcept { return cond_; }

 private:
  int mode_;
  double cond_;
};

}  // namespace elastocloak
