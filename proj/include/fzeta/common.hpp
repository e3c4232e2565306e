#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace fzeta {

using cplx = std::complex<double>;

/// Invalid parameters, malformed input, unsupported combination.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// A numeric method failed to reach its tolerance or budget.
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 6.28318530717958647692;

/// x^w for real x > 0 and complex w, via exp(w log x).
inline cplx pow_rc(double x, cplx w) { return std::exp(w * std::log(x)); }

}  // namespace fzeta
