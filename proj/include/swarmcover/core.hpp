#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace swarmcover {

constexpr double kPi = 3.14159265358979323846;

inline double wrap_angle(double a) {
  // normalize to (-pi, pi]
  a = std::fmod(a, 2.0 * kPi);
  if (a <= -kPi) a += 2.0 * kPi;
  if (a > kPi) a -= 2.0 * kPi;
  return a;
}

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2() = default;
  Vec2(double x_, double y_) : x(x_), y(y_) {}

  Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  Vec2& operator+=(const Vec2& o) { x += o.x; y += o.y; return *this; }
  Vec2& operator-=(const Vec2& o) { x -= o.x; y -= o.y; return *this; }

  double dot(const Vec2& o) const { return x * o.x + y * o.y; }
  double cross(const Vec2& o) const { return x * o.y - y * o.x; }
  double norm() const { return std::sqrt(x * x + y * y); }
  double norm_sq() const { return x * x + y * y; }

  Vec2 normalized() const {
    double n = norm();
    return n > 0.0 ? Vec2{x / n, y / n} : Vec2{0.0, 0.0};
  }
  // rotate counterclockwise
  Vec2 rotated(double a) const {
    double c = std::cos(a), s = std::sin(a);
    return {c * x - s * y, s * x + c * y};
  }
  double angle() const { return std::atan2(y, x); }
};

inline Vec2 heading_vec(double theta) { return {std::cos(theta), std::sin(theta)}; }
inline double distance(const Vec2& a, const Vec2& b) { return (a - b).norm(); }

// Deterministic, platform-independent generator (splitmix64 core). Streams
// are derived from (seed, label) so that draws for one purpose never perturb
// another.
class RngStream {
 public:
  RngStream() : state_(0x9e3779b97f4a7c15ull) {}
  RngStream(std::uint64_t seed, std::string_view stream_id) {
    std::uint64_t h = 1469598103934665603ull;  // FNV-1a
    for (char c : stream_id) {
      h ^= static_cast<std::uint64_t>(static_cast<unsigned char>(c));
      h *= 1099511628211ull;
    }
    state_ = seed ^ (h + 0x9e3779b97f4a7c15ull);
    // decorrelate nearby seeds
    next_u64();
    next_u64();
  }

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // uniform in [0, 1)
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double angle() { return uniform(0.0, 2.0 * kPi); }

  // uniform integer in [0, n)
  std::uint64_t below(std::uint64_t n) {
    // modulo bias negligible for n << 2^64 but avoid it anyway
    std::uint64_t threshold = (0ull - n) % n;
    for (;;) {
      std::uint64_t r = next_u64();
      if (r >= threshold) return r % n;
    }
  }

 private:
  std::uint64_t state_;
};

struct PlacementInfeasible : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IllegalRoute : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ConfigInvalid : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InvalidCount : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct UnknownRobot : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct MissingField : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ZeroSpeed : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ZeroConsumption : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct BeforeCurveStart : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace swarmcover
