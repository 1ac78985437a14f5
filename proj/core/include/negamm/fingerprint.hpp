#pragma once

#include <span>
#include <vector>

#include "negamm/curves.hpp"

namespace negamm {

enum class PriceDomain { Positive, Negative };

/// Coordinate system for a fingerprint. Sqrt-price and tick coordinates
/// always describe |p|; the sample's domain says which side of zero it is on.
enum class Space { SqrtPrice, Tick };

/// Which reserve is differentiated by the numeric oracle. The numeraire (y)
/// reserve reproduces the closed-form CCMM and parabola fingerprints.
enum class Reserve { X, Y };

struct FingerprintSample {
  double coord = 0.0;
  double density = 0.0;
  PriceDomain domain = PriceDomain::Positive;
};

/// +/- 2k s^3 / (1 + s^4)^(3/2), s = sqrt(|p|) > 0. Tail decays as s^-3.
double ccmm_liquidity_sqrtprice(double s, double k, Sign sign = Sign::Plus);

/// The sqrt-price fingerprint at s = e^(t/2), t = ln |p|.
double ccmm_liquidity_tick(double t, double k, Sign sign = Sign::Plus);

/// m = 2 parabola. Positive domain: 4 s^3 / (1 + s^2)^3. Negative domain:
/// -4 s^3 / (1 - s^2)^3 for s in (0, 1), diverging as |p| -> 1.
double parabola_liquidity_sqrtprice(double s, PriceDomain domain);

/// Tick form of the parabola fingerprint. The positive branch is defined for
/// t > 0 and the negative branch for t < 0; t -> 0- is a pole.
double parabola_liquidity_tick(double t, PriceDomain domain);

/// Numeric oracle: central difference of the chosen reserve along the curve
/// with respect to the signed sqrt-price. Tick grids are differentiated in t
/// and mapped back through ds/dt = s / 2, so both spaces report density per
/// unit sqrt-price.
std::vector<FingerprintSample> numeric_fingerprint(const CurveSpec& spec,
                                                   std::span<const double> coord_grid, Space space,
                                                   PriceDomain domain = PriceDomain::Positive,
                                                   Reserve reserve = Reserve::Y);

double gaussian_fingerprint(double t, double mu, double sigma, double mass);

struct GaussianFit {
  double mu = 0.0;
  double sigma = 0.0;
  double mass = 0.0;
};

/// Gaussian with the same mass, mean and standard deviation as the sampled
/// density (trapezoid moments over the sample coordinates).
GaussianFit matched_gaussian(std::span<const FingerprintSample> samples);

/// Negated least-squares slope of ln density against ln coord over the
/// samples with positive coord and density. Needs at least 10 of them.
double tail_index(std::span<const FingerprintSample> samples);

/// Fraction of the trapezoid mass of `samples` lying at |coord| >= threshold.
double mass_fraction_beyond(std::span<const FingerprintSample> samples, double threshold);

/// Places the extended price line on a circle: angle = 2 atan(p), so p = 0
/// sits at 0, p = 1 at pi/2, and both infinities meet at pi. Returns (-pi, pi].
double circle_map(Price p);

/// circle_map of the price whose tick is t on the given side of zero.
double circle_map_tick(double t, PriceDomain domain);

}  // namespace negamm
