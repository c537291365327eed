#pragma once

#include <stdexcept>
#include <string>

namespace dha {

/// Deformation parameters for which no state satisfies the algebra's own
/// uncertainty relation.
class InconsistentAlgebra : public std::domain_error {
 public:
  explicit InconsistentAlgebra(const std::string& what) : std::domain_error(what) {}
};

/// The sharpened momentum window is empty (beta*delta > 1).
class NoRealWindow : public std::domain_error {
 public:
  explicit NoRealWindow(const std::string& what) : std::domain_error(what) {}
};

/// A ladder step was requested from a level with eta <= 0.
class ChainTerminated : public std::domain_error {
 public:
  explicit ChainTerminated(const std::string& what) : std::domain_error(what) {}
};

class ConvergenceFailure : public std::runtime_error {
 public:
  explicit ConvergenceFailure(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace dha
