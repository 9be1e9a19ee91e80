#pragma once
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fpt/errors.hpp"

// Drift families for unit-diffusion processes dX = mu(X) dt + dW whose drift
// solves one of four quadratic first-order equations
//   mu' + mu^2 = RHS_family(x),
//     F1: 4Bx + 2C          F2: Ax^2 + 4Bx + 2C
//     F3: 2C + D/x^2        F4: Ax^2 + 2C + D/x^2
// via the substitution mu = theta'/theta, which linearizes each equation to
// theta'' = RHS * theta.  theta is a two-parameter combination c1*G1 + c2*G2
// of classical special functions (Airy, parabolic cylinder, modified Bessel,
// Whittaker), evaluated here in signed log space so that drifts stay usable
// at any magnitude.

namespace fpt {

enum class Family { F1, F2, F3, F4 };

const char* family_name(Family f);
Family family_from_name(const std::string& name);

// Signed logarithmic representation of a real number: sign * exp(log_abs).
struct LogSigned {
  double log_abs = -std::numeric_limits<double>::infinity();
  int sign = 0;
  double value() const { return sign == 0 ? 0.0 : sign * std::exp(log_abs); }
};

// Open interval (lo, hi); either end may be infinite.
struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  bool contains(double x) const { return x > lo && x < hi; }
};

// F1 treats |B| below this threshold (relative to max(1, |C|)^{3/2}) as
// B = 0, switching from the Airy pair to the exponential pair; the scale
// keeps the Airy argument finite up to the seam.  Pinned by a seam test.
inline constexpr double kF1SmallBThreshold = 1e-12;

struct FamiliesImpl;

class DriftSpec {
 public:
  // Builds a spec and determines (or validates) its domain.
  //
  // Without `domain`, the domain is the maximal interval containing `anchor`
  // on which theta > 0, with infinite ends kept only when positivity is
  // established out to magnitudes beyond any representable coefficient
  // ratio.  With `domain`, the given interval is validated against the same
  // analysis and against a dense positivity grid.  Without `anchor`, a small
  // deterministic candidate list is probed (F1/F2 near 0, F3/F4 near 1).
  //
  // Throws ValidationError for family-forbidden parameters (F1: A=D=0,
  // F2: D=0, F3: A=B=0, F4: B=0), non-positive A for F2/F4, D < -1/4 or
  // C < 0 for F3, negative C for F1 with B = 0, c1 = c2 = 0, or when no
  // positive-theta anchor/domain exists.
  static DriftSpec make(Family family, double A, double B, double C, double D,
                        double c1, double c2,
                        std::optional<Interval> domain = std::nullopt,
                        std::optional<double> anchor = std::nullopt);

  // Named constructors for common processes.
  static DriftSpec brownian();                  // mu = 0
  static DriftSpec coth(double omega);          // mu = |w| coth(|w| x)
  static DriftSpec bessel(double delta);        // mu = (delta - 1) / (2x)
  static DriftSpec ou(double lambda);           // mu = -lambda x
  static DriftSpec radial_ou(double omega, double gamma);
  //   mu = (omega + 1/2)/x - gamma x

  Family family() const { return family_; }
  double A() const { return a_; }
  double B() const { return b_; }
  double C() const { return c_; }
  double D() const { return d_; }
  double c1() const { return c1_; }
  double c2() const { return c2_; }
  const Interval& domain() const { return domain_; }
  double anchor() const { return anchor_; }
  // F1 with B < 0 uses the real cube root of 4B; flagged as experimental.
  bool experimental() const { return experimental_; }

  // log|theta|, sign(theta); theta > 0 on the domain by construction.
  LogSigned theta(double x) const;
  LogSigned theta_prime(double x) const;
  double drift_mu(double x) const;  // theta'/theta
  // Exact derivative of drift_mu via the defining quadratic identity
  // (no finite differences).
  double drift_mu_prime(double x) const;
  // RHS_family(x) from the stored parameters.
  double ricatti_rhs(double x) const;

  std::string to_json() const;
  static DriftSpec from_json(const std::string& text);

 private:
  friend struct FamiliesImpl;

  DriftSpec() = default;
  void require_in_domain(double x) const;

  Family family_ = Family::F1;
  double a_ = 0, b_ = 0, c_ = 0, d_ = 0, c1_ = 0, c2_ = 0;
  Interval domain_;
  double anchor_ = 0;
  bool experimental_ = false;

  // Resolved evaluation branch (degenerate parameter cases get their own
  // closed forms) and its derived constants.
  int branch_ = 0;
  double kappa_ = 0, shift_ = 0;     // F1 Airy / F2 argument map
  double w_ = 0;                     // F1 exponential / F3 Bessel frequency
  double ap_ = 0, am_ = 0;           // F1 exponential pair coefficients
  double omega_ = 0;                 // F3/F4 index sqrt(1/4 + D)
  double sa_ = 0, lam_ = 0, mm_ = 0; // F4 Whittaker parameters
  double two_nu_ = 0;                // F2 parabolic cylinder order
};

// Max over the grid of |mu'(x) + mu(x)^2 - RHS_family(x)| with mu' estimated
// by central differences (h = 1e-5 * max(1, |x|), shrunk near domain ends).
// Grid points must lie inside the spec's domain (DomainError otherwise).
double verify_ricatti(const DriftSpec& spec, const std::vector<double>& grid);

// Same residual for a black-box drift function against the stated family
// right-hand side; usable as a membership checker.
double verify_ricatti(const std::function<double(double)>& mu, Family family,
                      double A, double B, double C, double D,
                      const std::vector<double>& grid);

// Original-coordinate diffusion dU = nu(U) dt + sigma(U) dW_t on
// (u_lo, u_hi); y0 is the reference point of the coordinate change.
struct LampertiSpec {
  std::function<double(double)> nu_fn;
  std::function<double(double)> sigma_fn;
  double y0 = 0.0;
  double u_lo = -std::numeric_limits<double>::infinity();
  double u_hi = std::numeric_limits<double>::infinity();
};

// x = F(u) = integral_{y0}^{u} dv / sigma(v) (adaptive quadrature,
// relative tolerance 1e-10; endpoint singularities are integrated).
double lamperti_forward(const LampertiSpec& spec, double u);
// Monotone inverse of F (bracketing + TOMS 748).
double lamperti_inverse(const LampertiSpec& spec, double x);
// Unit-diffusion drift (nu/sigma - sigma'/2) composed with F^{-1};
// sigma' by central differences (h = 1e-6 * max(1, |u|)).
double lamperti_drift(const LampertiSpec& spec, double x);

// Linear-drift coefficients (alpha, beta) = (3r/4, 3p/4) for which the
// Lamperti transform of dU = -(alpha U + beta/2) dt + sqrt(r U^2 + p U + q) dW
// lands in family F1; requires r > 0 and 4rq - p^2 > 0 (DomainError).
std::pair<double, double> pearson_symmetric_params(double r, double p,
                                                   double q);

}  // namespace fpt
