#pragma once

#include "flatdel/types.hpp"

#include <utility>
#include <vector>

namespace flatdel {

// A finite relation: pairs (x0, x1).
using Relation = std::vector<std::pair<Vec, Vec>>;

struct DistortionClass {
  double additive = 0.0;        // smallest A
  double multiplicative = 0.0;  // smallest M (+inf if the relation is not one-to-one)
  double domain_diameter = 0.0;
  double domain_separation = kInf;
};

// Direct max over pairs of pairs.
DistortionClass distortion_classify(const Relation& rel);

// Conversions between the two kinds of distortion; both return true when they hold within tol.
bool multiplicative_to_additive_holds(const DistortionClass& c, double tol = 1e-9);
bool additive_to_multiplicative_holds(const DistortionClass& c, double tol = 1e-9);

// d xi^2 / (2 height(sigma)); +inf for a degenerate simplex.
double circumcenter_displacement_bound(const std::vector<Vec>& sigma, double xi, const Tolerance& tol = {});

// max |‖x-a‖^2 - ‖x-a'‖^2| over vertex pairs: the smallest xi^2 admitted by x.
double equidistance_spread(const std::vector<Vec>& sigma, const Vec& x);

}  // namespace flatdel
