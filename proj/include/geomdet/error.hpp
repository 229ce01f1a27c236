#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace geomdet {

// An observation assigned zero probability to some symbol. The log-ratio
// embedding is undefined there (e.g. erasure channels), so this is never
// clamped away.
class ErasureError : public std::runtime_error {
 public:
  explicit ErasureError(const std::string& what,
                        std::optional<std::size_t> position = std::nullopt)
      : std::runtime_error(what), position_(position) {}

  // Sequence position of the offending observation, when known.
  std::optional<std::size_t> position() const { return position_; }

 private:
  std::optional<std::size_t> position_;
};

// A channel spec or codebook file failed to parse or validate.
class SpecError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Codebook enumeration would exceed the configured N^M cap.
class EnumerationCapError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A distance estimator could not honor its accuracy contract.
class EstimatorError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A label passed for a discrete channel is not one of its observations.
class UnknownObservationError : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A point expected on the zero-sum hyperplane is not on it.
class HyperplaneError : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

}  // namespace geomdet
