#pragma once

// Point transformations u(x,t) = f(x,t) * U(X(x,t), T(t)) that map solutions
// of a forward Kolmogorov equation onto solutions of the same (or a simpler)
// equation.  X is affine in x, X(x,t) = p(t)*x + q(t), and T is an increasing
// reparametrisation of time with T(0) = 0 for the two-parameter families.
//
// Provided map families:
//   * the six classical heat-equation symmetries,
//   * the printed one-parameter symmetries of the four quadratic drift
//     families (six maps for F1/F2, four for F3/F4),
//   * the two-parameter symmetries used by the boundary-transfer identities,
//   * cross-process reductions onto Brownian motion (F1, F2) or a Bessel
//     process (F3, F4).
//
// Composition, boundary mapping g(t) = (b(T(t)) - q(t)) / p(t), and a
// numerical closure check for the two-parameter families live here as well.

#include <functional>
#include <string>
#include <vector>

#include "fpt/errors.hpp"
#include "fpt/families.hpp"

namespace fpt {

// ---------------------------------------------------------------------------
// Boundaries
// ---------------------------------------------------------------------------

enum class BoundaryKind { constant, affine, quadratic, sqrt_shift, exp_combo, custom };

const char* boundary_kind_name(BoundaryKind kind);
BoundaryKind boundary_kind_from_name(const std::string& name);

// A deterministic boundary curve t >= 0 -> b(t).  Named kinds carry their
// parameters and differentiate in closed form; `custom` wraps an arbitrary
// callable and differentiates by finite differences.
//
// Parameter conventions:
//   constant   {a}                b(t) = a
//   affine     {a, b}             b(t) = a + b*t
//   quadratic  {a0, a1, a2}       b(t) = a0 + a1*t + a2*t^2
//   sqrt_shift {a, m, c}          b(t) = a * sqrt(m*(t + c))
//   exp_combo  {c0, c1, r1, c2, r2}  b(t) = c0 + c1*e^(r1*t) + c2*e^(r2*t)
class Boundary {
 public:
  static Boundary make(BoundaryKind kind, std::vector<double> params);
  static Boundary custom(std::function<double(double)> fn);

  double value(double t) const;
  double deriv(double t) const;

  BoundaryKind kind() const { return kind_; }
  const std::vector<double>& params() const { return params_; }

  // {"kind": ..., "params": [...]}; custom boundaries do not serialize here
  // (the command-line layer stores them as sampled tables instead).
  std::string to_json() const;
  static Boundary from_json(const std::string& text);

 private:
  Boundary() = default;

  BoundaryKind kind_ = BoundaryKind::custom;
  std::vector<double> params_;
  std::function<double(double)> fn_;
};

// ---------------------------------------------------------------------------
// Symmetry maps
// ---------------------------------------------------------------------------

// u(x,t) = exp(logf(x,t)) * U(p(t)*x + q(t), T(t)) with spatial inverse
// psi(y) = (y - q(0)) / p(0) at t = 0.  Evaluations at t >= t_max throw
// HorizonError; evaluations outside a map's algebraic validity region (for
// negative t) throw DomainError.  logf may throw DomainError if X(x,t)
// leaves the positivity interval of the drift family's theta.
struct SymmetryMap {
  std::function<double(double)> p_fn;
  std::function<double(double)> q_fn;
  std::function<double(double)> T_fn;
  std::function<double(double, double)> logf_fn;
  double t_max = 0;

  double p(double t) const;
  double q(double t) const;
  double T(double t) const;
  double X(double x, double t) const;
  double logf(double x, double t) const;
  double psi(double y) const;

  void check_time(double t) const;
};

SymmetryMap identity_map();

// The classical heat-equation symmetries, indexed as printed:
//   1 projective, 2 scaling, 3 drift tilt, 4 space shift, 5 time shift,
//   6 scalar.
SymmetryMap heat_symmetries(int index, double eps);

// One-parameter symmetries of the drift family's forward equation.  F1 and
// F2 use indices 1..6 (projective, scaling, tilt, shift, time, scalar); F3
// and F4 use 1..4 (two projective maps, time shift, scalar).
SymmetryMap family_symmetry(const DriftSpec& spec, int index, double eps);

// Exponent candidate for the quartic-vs-cubic term in the F1 two-parameter
// spatial map; `quartic` is the numerically validated default, `cubic` is
// kept so the residual checker can adjudicate between the two readings.
enum class F1QuadExponent { cubic, quartic };

// Two-parameter symmetries: variant 1 (projective, all families) and
// variant 2 (tilt/shift, F1 and F2 only).  T(0) = 0 for both.
SymmetryMap two_param_symmetry(const DriftSpec& spec, int variant, double alpha,
                               double beta);
SymmetryMap two_param_symmetry(const DriftSpec& spec, int variant, double alpha,
                               double beta, F1QuadExponent exponent);

// compose(s1, s2): s1 acts on the base solution first, s2 on the result:
//   u(x,t) = f2(x,t) * f1(X2(x,t), T2(t)) * U(X1(X2, T2), T1(T2(t))).
SymmetryMap compose(const SymmetryMap& s1, const SymmetryMap& s2);

// The image boundary g(t) = (b(T(t)) - q(t)) / p(t), so that X(g(t), t)
// traces b(T(t)).  Always returns a `custom` boundary.
Boundary map_boundary(const SymmetryMap& map, const Boundary& b);

// ---------------------------------------------------------------------------
// Closure of the two-parameter families
// ---------------------------------------------------------------------------

struct ClosureFit {
  double alpha_hat = 0;
  double beta_hat = 0;
  double residual = 0;  // max deviation over probe points; large on failure
};

// Composes the one-parameter flow `index` (eps) after the two-parameter map
// (variant, alpha, beta) and fits (alpha_hat, beta_hat) so the composite is
// again a two-parameter map.  For F1/F3 variant 1 the flows are the printed
// projective/scaling maps; for F1/F2 variant 2 the tilt/shift maps
// (indices 3, 4); for F2/F4 variant 1 the in-family flows (eps, 0) and
// (0, eps) -- the printed projective maps move T(0) away from 0 and leave
// the family, so they cannot close.
ClosureFit closure_check(const DriftSpec& spec, int variant, double alpha,
                         double beta, double eps, int index);

// ---------------------------------------------------------------------------
// Reduction onto a reference process
// ---------------------------------------------------------------------------

struct ReductionTarget {
  bool to_heat = true;      // true: Brownian motion; false: Bessel process
  double bessel_delta = 0;  // dimension when to_heat == false
};

struct ReductionMap {
  SymmetryMap map;  // base solution solves the reference equation
  ReductionTarget target;
};

// F1, F2 reduce to the heat (Brownian) forward equation; F3, F4 to the
// Bessel process of dimension delta = 2 + sqrt(4*D + 1).
ReductionMap reduction_to_reference(const DriftSpec& spec);

}  // namespace fpt
