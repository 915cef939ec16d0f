#pragma once

#include <stdexcept>
#include <string>

namespace leosim {

/// Malformed input: bad parameters, unparsable files, infeasible instances.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An instance exceeded a configured enumeration cap.
class SizeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A cross-check between two independent computations disagreed.
class VerificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace leosim
