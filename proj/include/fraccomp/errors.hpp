#pragma once

#include <stdexcept>
#include <string>

namespace fraccomp {

// Base class for all library failures so callers can catch one type.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct InvalidParams : Error {
  explicit InvalidParams(const std::string& what) : Error(what) {}
};

struct NonConvergence : Error {
  explicit NonConvergence(const std::string& what) : Error(what) {}
};

struct InvalidConfig : Error {
  explicit InvalidConfig(const std::string& what) : Error(what) {}
};

struct ContourFailure : Error {
  explicit ContourFailure(const std::string& what) : Error(what) {}
};

struct InversionFailure : Error {
  explicit InversionFailure(const std::string& what) : Error(what) {}
};

struct InsufficientGrid : Error {
  explicit InsufficientGrid(const std::string& what) : Error(what) {}
};

struct OrderOutOfRange : Error {
  explicit OrderOutOfRange(const std::string& what) : Error(what) {}
};

struct HorizonTooShort : Error {
  explicit HorizonTooShort(const std::string& what) : Error(what) {}
};

struct GridMismatch : Error {
  explicit GridMismatch(const std::string& what) : Error(what) {}
};

struct TailDivergence : Error {
  explicit TailDivergence(const std::string& what) : Error(what) {}
};

struct UnsupportedIC : Error {
  explicit UnsupportedIC(const std::string& what) : Error(what) {}
};

struct KernelNotAvailable : Error {
  explicit KernelNotAvailable(const std::string& what) : Error(what) {}
};

struct VarianceBlowup : Error {
  explicit VarianceBlowup(const std::string& what) : Error(what) {}
};

}  // namespace fraccomp
