#pragma once

#include <stdexcept>
#include <string>

namespace valgeo {

// Base class for all errors raised by the library.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct DimensionMismatch : Error {
    explicit DimensionMismatch(const std::string& what) : Error(what) {}
};

struct BadDimension : Error {
    explicit BadDimension(const std::string& what) : Error(what) {}
};

struct RankDeficient : Error {
    explicit RankDeficient(const std::string& what) : Error(what) {}
};

struct DegenerateFace : Error {
    explicit DegenerateFace(const std::string& what) : Error(what) {}
};

struct IllConditioned : Error {
    explicit IllConditioned(const std::string& what) : Error(what) {}
};

struct MixedDegrees : Error {
    explicit MixedDegrees(const std::string& what) : Error(what) {}
};

struct NotCentrallySymmetric : Error {
    explicit NotCentrallySymmetric(const std::string& what) : Error(what) {}
};

struct ClassVolumeMismatch : Error {
    explicit ClassVolumeMismatch(const std::string& what) : Error(what) {}
};

struct TilingFailure : Error {
    explicit TilingFailure(const std::string& what) : Error(what) {}
};

struct LPInfeasible : Error {
    explicit LPInfeasible(const std::string& what) : Error(what) {}
};

struct ShiftImpossible : Error {
    explicit ShiftImpossible(const std::string& what) : Error(what) {}
};

struct KlainNotPositive : Error {
    explicit KlainNotPositive(const std::string& what) : Error(what) {}
};

struct EpsilonZero : Error {
    explicit EpsilonZero(const std::string& what) : Error(what) {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& what) : Error(what) {}
};

struct IOError : Error {
    explicit IOError(const std::string& what) : Error(what) {}
};

}  // namespace valgeo
