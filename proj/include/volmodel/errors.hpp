#pragma once

#include <stdexcept>
#include <string>

namespace volmodel {

/// Malformed input (CSV rows, timestamps, spec files). Carries file/line context.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// Nothing left to process: no valid records, or every window was excluded.
class EmptyResultError : public std::runtime_error {
 public:
  explicit EmptyResultError(const std::string& what) : std::runtime_error(what) {}
};

/// Fewer samples in a window than the configured minimum.
class InsufficientSamplesError : public std::runtime_error {
 public:
  explicit InsufficientSamplesError(const std::string& what) : std::runtime_error(what) {}
};

/// Zero-spread samples (all equal); no distribution can be fitted.
class DegenerateSampleError : public std::runtime_error {
 public:
  explicit DegenerateSampleError(const std::string& what) : std::runtime_error(what) {}
};

/// J'J is numerically singular; the fit is unidentifiable.
class SingularFitError : public std::runtime_error {
 public:
  explicit SingularFitError(const std::string& what) : std::runtime_error(what) {}
};

/// Every histogram bin was excluded from a divergence sum.
class AllBinsExcludedError : public std::runtime_error {
 public:
  explicit AllBinsExcludedError(const std::string& what) : std::runtime_error(what) {}
};

/// No non-empty bin lies fully above the median.
class NoTailBinsError : public std::runtime_error {
 public:
  explicit NoTailBinsError(const std::string& what) : std::runtime_error(what) {}
};

/// A run directory is missing an expected artifact file.
class MissingArtifactError : public std::runtime_error {
 public:
  explicit MissingArtifactError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace volmodel
