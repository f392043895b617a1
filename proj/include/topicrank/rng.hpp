#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace topicrank {

// Deterministic random stream with explicitly coded distributions.
//
// All sampling in this project goes through this class rather than
// <random>'s distribution templates, whose output is implementation
// defined. The generator is the splitmix64 counter stream; every draw
// consumes a documented number of 64-bit words, so identical seeds give
// byte-identical results on any platform. Layout per call:
//   uniform()      1 word
//   normal()       2 words (Box-Muller, no caching)
//   gamma(a)       variable (rejection), order of draws fixed
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(splitmix(seed)) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform on [0, 1), 53-bit resolution.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, n).
  std::int64_t uniform_int(std::int64_t n) {
    return static_cast<std::int64_t>(uniform() * static_cast<double>(n)) % n;
  }

  // Standard normal via Box-Muller; two words per call, nothing cached.
  double normal() {
    double u1 = uniform();
    double u2 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

  // Gamma(shape, 1) via Marsaglia-Tsang; shape < 1 boosted through the
  // standard U^{1/a} identity.
  double gamma(double shape) {
    if (shape < 1.0) {
      double u = uniform();
      while (u <= 0.0) u = uniform();
      return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x = normal();
      double v = 1.0 + c * x;
      if (v <= 0.0) continue;
      v = v * v * v;
      double u = uniform();
      if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
      if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
  }

  // Symmetric Dirichlet(alpha) draw of dimension k.
  Eigen::VectorXd dirichlet(double alpha, int k) {
    Eigen::VectorXd g(k);
    for (int i = 0; i < k; ++i) g[i] = gamma(alpha);
    double s = g.sum();
    if (s <= 0.0) return Eigen::VectorXd::Constant(k, 1.0 / k);
    return g / s;
  }

  // Index draw from a cumulative weight vector (cdf.back() is the total mass).
  int categorical(const std::vector<double>& cdf) {
    double u = uniform() * cdf.back();
    auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
    int idx = static_cast<int>(it - cdf.begin());
    return idx < static_cast<int>(cdf.size()) ? idx : static_cast<int>(cdf.size()) - 1;
  }

  // Independent substream; tag picks the stream, deterministically.
  Rng fork(std::uint64_t tag) const {
    Rng r(0);
    r.state_ = splitmix(state_ ^ (0xd1342543de82ef95ULL * (tag + 1)));
    return r;
  }

 private:
  static std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  std::uint64_t state_;
};

}  // namespace topicrank
