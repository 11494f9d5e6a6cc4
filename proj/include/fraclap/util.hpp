// Small shared utilities: error handling, hashing, basic statistics.
#pragma once

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#define FL_REQUIRE(cond, msg)                                              \
  do {                                                                     \
    if (!(cond)) {                                                         \
      std::ostringstream fl_oss_;                                          \
      fl_oss_ << "fraclap: " << msg << " (" << __FILE__ << ":" << __LINE__ \
              << ")";                                                      \
      throw std::runtime_error(fl_oss_.str());                             \
    }                                                                      \
  } while (0)

namespace fraclap {

inline constexpr const char* kVersion = "fraclap 1.0.0";

// FNV-1a, used for mesh fingerprints and config hashes.
inline std::uint64_t fnv1a(const void* data, std::size_t n,
                           std::uint64_t h = 1469598103934665603ull) {
  const unsigned char* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 1099511628211ull;
  }
  return h;
}
inline std::uint64_t fnv1a_add(std::uint64_t h, double x) {
  return fnv1a(&x, sizeof x, h);
}
inline std::uint64_t fnv1a_add(std::uint64_t h, std::int64_t x) {
  return fnv1a(&x, sizeof x, h);
}
inline std::uint64_t fnv1a_add(std::uint64_t h, const std::string& s) {
  return fnv1a(s.data(), s.size(), h);
}

inline double sq(double x) { return x * x; }

// Least-squares slope of y against x.
inline double ls_slope(const std::vector<double>& x,
                       const std::vector<double>& y) {
  FL_REQUIRE(x.size() == y.size() && x.size() >= 2,
             "ls_slope needs >= 2 points");
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= double(x.size());
  my /= double(y.size());
  double num = 0, den = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    num += (x[i] - mx) * (y[i] - my);
    den += sq(x[i] - mx);
  }
  FL_REQUIRE(den > 0, "ls_slope: degenerate abscissae");
  return num / den;
}

inline double median(std::vector<double> v) {
  FL_REQUIRE(!v.empty(), "median of empty set");
  std::sort(v.begin(), v.end());
  std::size_t n = v.size();
  return (n % 2 == 1) ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace fraclap
