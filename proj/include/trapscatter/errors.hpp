#pragma once

#include <stdexcept>
#include <string>

namespace trapscatter {

/// A Fock-space or momentum-grid truncation left more than the requested
/// fraction of the norm outside the represented window.
class TruncationError : public std::runtime_error {
public:
  explicit TruncationError(const std::string& what) : std::runtime_error(what) {}
};

/// A quadrature or series evaluation did not reach its tolerance within the
/// allowed number of subdivisions, panels, or terms.
class QuadratureError : public std::runtime_error {
public:
  explicit QuadratureError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace trapscatter
