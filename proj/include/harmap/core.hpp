#pragma once

#include <Eigen/Core>

#include <array>
#include <charconv>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace harmap {

template <int N>
using Vec = Eigen::Matrix<double, N, 1>;
template <int R, int C>
using Mat = Eigen::Matrix<double, R, C>;

using Index = std::int32_t;

/// Raised when the closest-point projection (or a projected evaluation)
/// hits a vector of norm below eps_singular. Carries the element index
/// when the failure happens inside a quadrature loop, -1 otherwise.
class SingularProjectionError : public std::runtime_error {
public:
  explicit SingularProjectionError(long element = -1)
      : std::runtime_error(element < 0
                               ? std::string("singular projection: |v| below threshold")
                               : "singular projection in element " + std::to_string(element)),
        element_(element) {}
  long element() const { return element_; }

private:
  long element_;
};

/// Threshold below which a vector is considered singular for projection.
inline constexpr double eps_singular = 1e-10;

/// Shortest round-trip decimal representation of a double.
/// Guarantees that parsing the string recovers the exact bit pattern,
/// so post-processing of emitted CSV files reproduces in-process values.
inline std::string format_shortest(double x) {
  std::array<char, 32> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  if (ec != std::errc()) throw std::runtime_error("format_shortest: to_chars failed");
  return std::string(buf.data(), ptr);
}

inline double parse_double(std::string_view s) {
  double v{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc()) throw std::runtime_error("parse_double: bad input '" + std::string(s) + "'");
  return v;
}

} // namespace harmap
