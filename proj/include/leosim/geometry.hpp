#pragma once

#include <cmath>
#include <numbers>

namespace leosim {

inline constexpr double kEarthRadiusKm = 6371.0;
inline constexpr double kEarthMuKm3PerS2 = 398600.4418;
inline constexpr double kSiderealDaySeconds = 86164.0;
inline constexpr double kSpeedOfLightKmPerS = 299792.458;

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend bool operator==(const Vec3&, const Vec3&) = default;

  [[nodiscard]] double norm() const { return std::sqrt(x * x + y * y + z * z); }
  [[nodiscard]] double norm_sq() const { return x * x + y * y + z * z; }
};

inline double distance(const Vec3& a, const Vec3& b) { return (a - b).norm(); }

inline constexpr double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }

}  // namespace leosim
