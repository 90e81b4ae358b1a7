#pragma once

#include <algorithm>
#include <cmath>

namespace upcint {

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  double norm() const { return std::sqrt(dot(*this)); }
};

/// (E, px, py, pz) in MeV.
struct FourVector {
  double e = 0.0;
  Vec3 p;

  FourVector operator+(const FourVector& o) const { return {e + o.e, p + o.p}; }
  double mass_sq() const { return e * e - p.dot(p); }
  double mass() const { return std::sqrt(std::max(0.0, mass_sq())); }
  double pt() const { return std::hypot(p.x, p.y); }
  Vec3 velocity() const { return p * (1.0 / e); }
};

/// Boost from a frame moving with velocity -beta to the lab: a particle at rest
/// in the original frame ends up with velocity beta.
inline FourVector boost(const FourVector& v, const Vec3& beta) {
  const double b2 = beta.dot(beta);
  if (b2 == 0.0) return v;
  const double gamma = 1.0 / std::sqrt(1.0 - b2);
  const double bp = beta.dot(v.p);
  const double g2 = (gamma - 1.0) / b2;
  return {gamma * (v.e + bp), v.p + beta * (g2 * bp + gamma * v.e)};
}

/// Momentum of either product in the rest frame of a two-body decay M -> m1 m2.
inline double two_body_momentum(double m, double m1, double m2) {
  const double a = (m * m - (m1 + m2) * (m1 + m2)) * (m * m - (m1 - m2) * (m1 - m2));
  return a > 0.0 ? std::sqrt(a) / (2.0 * m) : 0.0;
}

}  // namespace upcint
