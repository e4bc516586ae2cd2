#include "flatdel/distortion.hpp"

#include "flatdel/geom.hpp"

#include <algorithm>
#include <cmath>

namespace flatdel {

DistortionClass distortion_classify(const Relation& rel) {
  DistortionClass c;
  for (std::size_t i = 0; i < rel.size(); ++i)
    for (std::size_t j = i + 1; j < rel.size(); ++j) {
      const double d0 = (rel[i].first - rel[j].first).norm();
      const double d1 = (rel[i].second - rel[j].second).norm();
      c.additive = std::max(c.additive, std::abs(d1 - d0));
      c.domain_diameter = std::max(c.domain_diameter, d0);
      if (d0 > 0.0) c.domain_separation = std::min(c.domain_separation, d0);
      if (d0 == 0.0 && d1 == 0.0) continue;
      if (d0 == 0.0 || d1 == 0.0) {
        c.multiplicative = kInf;
        continue;
      }
      const double r = d1 / d0;
      c.multiplicative = std::max(c.multiplicative, std::max(r - 1.0, 1.0 / r - 1.0));
    }
  return c;
}

bool multiplicative_to_additive_holds(const DistortionClass& c, double tol) {
  if (std::isinf(c.multiplicative)) return true;
  return c.additive <= c.multiplicative * c.domain_diameter + tol;
}

bool additive_to_multiplicative_holds(const DistortionClass& c, double tol) {
  if (std::isinf(c.domain_separation) || !(c.additive < c.domain_separation)) return true;
  return c.multiplicative <= c.additive / (c.domain_separation - c.additive) + tol;
}

double circumcenter_displacement_bound(const std::vector<Vec>& sigma, double xi, const Tolerance& tol) {
  if (sigma.size() < 2) throw Error("needs a simplex of dimension >= 1");
  if (is_degenerate(sigma, tol)) return kInf;
  const double d = static_cast<double>(sigma.size() - 1);
  return d * xi * xi / (2.0 * height(sigma, tol));
}

double equidistance_spread(const std::vector<Vec>& sigma, const Vec& x) {
  double lo = kInf, hi = -kInf;
  for (const auto& a : sigma) {
    const double s = (x - a).squaredNorm();
    lo = std::min(lo, s);
    hi = std::max(hi, s);
  }
  return hi - lo;
}

}  // namespace flatdel
