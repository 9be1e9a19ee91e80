#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "data/oracle_tables.hpp"
#include "fpt/errors.hpp"
#include "fpt/families.hpp"

using fpt::DriftSpec;
using fpt::Family;
using fpt::Interval;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Reference drift values for mixed-coefficient specs, one per special-function
// branch (50-digit arithmetic, rounded to double).
constexpr double kF1AiryMixedDriftAt0p4 = 0.76315910080328116;   // B=0.5,C=0.3,c=(1,2)
constexpr double kF2MixedDriftAt0p7 = -0.6167358644935032;       // A=1.3,B=0.4,C=-0.2,c=(1,0.7)
constexpr double kF3BesselMixedDriftAt1p5 = 1.4568155556223792;  // C=0.8,D=2,c=(1,0.5)
constexpr double kF4MixedDriftAt1p2 = 0.89013679565480101;       // A=1,C=-0.3,D=0.5,c=(1,0.4)

// Reference positivity-interval endpoints for sign-changing combinations.
constexpr double kF1AiryMixedLowerEdge = -2.1813432233184665;  // c=(1,-0.05)
constexpr double kF1AiryMixedUpperEdge = 0.79803053460953771;
constexpr double kF2MixedUpperEdge = 1.052083444613716;        // c=(1,-0.2)
constexpr double kF3MixedLowerEdge = 0.46310606536358219;      // c=(1,-0.05)
constexpr double kF4MixedLowerEdge = 0.54314294978772051;      // c=(1,-0.4)

// Largest zero of Ai (the positivity interval of a pure-Ai theta starts here).
constexpr double kAiryFirstZero = -2.3381074104597670417;

// Representative specs touching every evaluation branch.
std::vector<DriftSpec> branch_specs() {
  std::vector<DriftSpec> specs;
  specs.push_back(DriftSpec::make(Family::F1, 0, 0.5, 0.3, 0, 1, 2));     // Airy, B > 0
  specs.push_back(DriftSpec::make(Family::F1, 0, -0.5, 0.3, 0, 1, 2));    // Airy, B < 0
  specs.push_back(DriftSpec::make(Family::F1, 0, 0, 0.5, 0, 1, 3));       // exp pair
  specs.push_back(DriftSpec::coth(1.0));                                  // exp pair, one-sided
  specs.push_back(DriftSpec::make(Family::F1, 0, 0, 0, 0, 1, 0.5));      // linear
  specs.push_back(DriftSpec::brownian());                                 // constant
  specs.push_back(DriftSpec::make(Family::F2, 1.3, 0.4, -0.2, 0, 1, 0.7));
  specs.push_back(DriftSpec::ou(0.8));
  specs.push_back(DriftSpec::make(Family::F3, 0, 0, 0.8, 2.0, 1, 0.5));   // I+K mix
  specs.push_back(DriftSpec::make(Family::F3, 0, 0, 0.8, 2.0, 0, 1));     // pure K
  specs.push_back(DriftSpec::bessel(3.0));                                // power, upper
  specs.push_back(DriftSpec::bessel(0.5));                                // power, lower
  specs.push_back(DriftSpec::make(Family::F4, 1.0, 0, -0.3, 0.5, 1, 0.4));
  specs.push_back(DriftSpec::radial_ou(0.5, 1.0));
  return specs;
}

// Deterministic in-domain sample points, kept away from domain endpoints so
// the finite-difference residual stays well below the tolerance.
std::vector<double> sample_grid(const DriftSpec& spec, int n, unsigned seed) {
  const Interval& dom = spec.domain();
  const bool positive_axis = spec.family() == Family::F3 || spec.family() == Family::F4;
  double lo = std::max(dom.lo, spec.anchor() - 6.0);
  double hi = std::min(dom.hi, spec.anchor() + 6.0);
  if (std::isfinite(dom.lo)) lo = std::max(lo, dom.lo + 0.5);
  if (std::isfinite(dom.hi)) hi = std::min(hi, dom.hi - 0.5);
  if (positive_axis) lo = std::max(lo, 0.25);
  REQUIRE(hi > lo);
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> g(n);
  for (double& x : g) x = u(rng);
  return g;
}

}  // namespace

TEST_CASE("theta closed-form examples") {
  const DriftSpec c = DriftSpec::coth(1.0);
  const fpt::LogSigned t2 = c.theta(2.0);
  CHECK(t2.sign == 1);
  CHECK(t2.log_abs == doctest::Approx(std::log(std::sinh(2.0))).epsilon(1e-13));

  const DriftSpec bm = DriftSpec::brownian();
  CHECK(bm.theta(5.0).value() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(bm.theta_prime(5.0).sign == 0);

  // F3 with C = 0, D = 2 gives omega = 3/2 and theta = x^2.
  const DriftSpec p = DriftSpec::make(Family::F3, 0, 0, 0, 2.0, 1, 0);
  CHECK(p.theta(3.0).value() == doctest::Approx(9.0).epsilon(1e-14));
  CHECK(p.theta_prime(3.0).value() == doctest::Approx(6.0).epsilon(1e-14));
}

TEST_CASE("drift values match independent references") {
  CHECK(DriftSpec::coth(1.0).drift_mu(1.0) ==
        doctest::Approx(fpt::testdata::kOracleCothDriftAt1).epsilon(1e-13));
  CHECK(DriftSpec::bessel(3.0).drift_mu(2.0) == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(std::fabs(DriftSpec::radial_ou(0.5, 1.0).drift_mu(1.0)) < 1e-10);
  CHECK(DriftSpec::ou(0.7).drift_mu(1.3) == doctest::Approx(-0.91).epsilon(1e-12));
  CHECK(DriftSpec::brownian().drift_mu(-3.0) == 0.0);

  CHECK(DriftSpec::make(Family::F1, 0, 0.5, 0.3, 0, 1, 2).drift_mu(0.4) ==
        doctest::Approx(kF1AiryMixedDriftAt0p4).epsilon(1e-12));
  CHECK(DriftSpec::make(Family::F2, 1.3, 0.4, -0.2, 0, 1, 0.7).drift_mu(0.7) ==
        doctest::Approx(kF2MixedDriftAt0p7).epsilon(1e-12));
  CHECK(DriftSpec::make(Family::F3, 0, 0, 0.8, 2.0, 1, 0.5).drift_mu(1.5) ==
        doctest::Approx(kF3BesselMixedDriftAt1p5).epsilon(1e-12));
  CHECK(DriftSpec::make(Family::F4, 1.0, 0, -0.3, 0.5, 1, 0.4).drift_mu(1.2) ==
        doctest::Approx(kF4MixedDriftAt1p2).epsilon(1e-12));
}

TEST_CASE("positivity intervals are located correctly") {
  SUBCASE("pure Ai theta starts at the first Airy zero") {
    const DriftSpec s = DriftSpec::make(Family::F1, 0, 0.25, 0, 0, 1, 0);
    // kappa = 1, shift = 0, so the x-domain is the s-domain.
    CHECK(s.domain().lo == doctest::Approx(kAiryFirstZero).epsilon(1e-10));
    CHECK(s.domain().hi == kInf);
  }
  SUBCASE("mixed Airy combination is bounded on both sides") {
    const DriftSpec s = DriftSpec::make(Family::F1, 0, 0.5, 0.3, 0, 1, -0.05);
    CHECK(s.domain().lo == doctest::Approx(kF1AiryMixedLowerEdge).epsilon(1e-10));
    CHECK(s.domain().hi == doctest::Approx(kF1AiryMixedUpperEdge).epsilon(1e-10));
  }
  SUBCASE("parabolic-cylinder combination with a negative coefficient") {
    const DriftSpec s = DriftSpec::make(Family::F2, 1.3, 0.4, -0.2, 0, 1, -0.2);
    CHECK(s.domain().lo == -kInf);
    CHECK(s.domain().hi == doctest::Approx(kF2MixedUpperEdge).epsilon(1e-10));
  }
  SUBCASE("Bessel combination with a negative K coefficient") {
    const DriftSpec s = DriftSpec::make(Family::F3, 0, 0, 0.8, 2.0, 1, -0.05);
    CHECK(s.domain().lo == doctest::Approx(kF3MixedLowerEdge).epsilon(1e-10));
    CHECK(s.domain().hi == kInf);
  }
  SUBCASE("Whittaker combination with a negative W coefficient") {
    const DriftSpec s = DriftSpec::make(Family::F4, 1.0, 0, -0.3, 0.5, 1, -0.4);
    CHECK(s.domain().lo == doctest::Approx(kF4MixedLowerEdge).epsilon(1e-10));
    CHECK(s.domain().hi == kInf);
  }
  SUBCASE("one-sided and full-line defaults") {
    CHECK(DriftSpec::coth(2.0).domain().lo == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(DriftSpec::coth(2.0).domain().hi == kInf);
    CHECK(DriftSpec::bessel(3.0).domain().lo == 0.0);
    CHECK(DriftSpec::ou(1.0).domain().lo == -kInf);
    CHECK(DriftSpec::ou(1.0).domain().hi == kInf);
    CHECK(DriftSpec::radial_ou(0.5, 1.0).domain().lo == 0.0);
    CHECK(DriftSpec::brownian().domain().lo == -kInf);
  }
}

TEST_CASE("ricatti residual is small on every evaluation branch") {
  unsigned seed = 20260814;
  for (const DriftSpec& spec : branch_specs()) {
    CAPTURE(fpt::family_name(spec.family()));
    CAPTURE(spec.B());
    CAPTURE(spec.C());
    const std::vector<double> grid = sample_grid(spec, 200, seed++);
    CHECK(fpt::verify_ricatti(spec, grid) <= 1e-6);
  }
}

TEST_CASE("ricatti checker flags a drift with the wrong coefficient") {
  // coth drift solves the F1 equation with C = 0.5; checking it against
  // C = 0.6 must leave a residual of 2 * 0.1.
  auto mu = [](double x) { return std::cosh(x) / std::sinh(x); };
  const std::vector<double> grid = {0.4, 0.8, 1.3, 2.0};
  CHECK(fpt::verify_ricatti(mu, Family::F1, 0, 0, 0.5, 0, grid) < 1e-6);
  CHECK(fpt::verify_ricatti(mu, Family::F1, 0, 0, 0.6, 0, grid) ==
        doctest::Approx(0.2).epsilon(1e-4));
}

TEST_CASE("verify_ricatti rejects out-of-domain grid points") {
  const DriftSpec c = DriftSpec::coth(1.0);
  CHECK_THROWS_AS(fpt::verify_ricatti(c, {1.0, -0.5}), fpt::DomainError);
}

TEST_CASE("theta agrees with direct integration of its defining equation") {
  struct Case {
    DriftSpec spec;
    double x_to;
  };
  const Case cases[] = {
      {DriftSpec::make(Family::F1, 0, 0.5, 0.3, 0, 1, 2), 2.0},
      {DriftSpec::make(Family::F2, 1.3, 0.4, -0.2, 0, 1, 0.7), 2.0},
      {DriftSpec::make(Family::F3, 0, 0, 0.8, 2.0, 1, 0.5), 3.0},
      {DriftSpec::make(Family::F4, 1.0, 0, -0.3, 0.5, 1, 0.4), 2.5},
  };
  for (const Case& c : cases) {
    CAPTURE(fpt::family_name(c.spec.family()));
    const double x0 = c.spec.anchor();
    double th = c.spec.theta(x0).value();
    double dth = c.spec.theta_prime(x0).value();
    const int n = 40000;
    const double h = (c.x_to - x0) / n;
    auto rhs = [&c](double x) { return c.spec.ricatti_rhs(x); };
    for (int i = 0; i < n; ++i) {
      const double x = x0 + i * h;
      // RK4 on (theta, theta')' = (theta', RHS * theta)
      const double k1t = dth, k1d = rhs(x) * th;
      const double k2t = dth + 0.5 * h * k1d, k2d = rhs(x + 0.5 * h) * (th + 0.5 * h * k1t);
      const double k3t = dth + 0.5 * h * k2d, k3d = rhs(x + 0.5 * h) * (th + 0.5 * h * k2t);
      const double k4t = dth + h * k3d, k4d = rhs(x + h) * (th + h * k3t);
      th += (h / 6.0) * (k1t + 2.0 * k2t + 2.0 * k3t + k4t);
      dth += (h / 6.0) * (k1d + 2.0 * k2d + 2.0 * k3d + k4d);
    }
    const double ref = c.spec.theta(c.x_to).value();
    CHECK(th == doctest::Approx(ref).epsilon(1e-6));
  }
}

TEST_CASE("drift is invariant under joint coefficient scaling") {
  const double lam = 3.7;
  const DriftSpec a = DriftSpec::make(Family::F2, 1.3, 0.4, -0.2, 0, 1.0, 0.7);
  const DriftSpec b = DriftSpec::make(Family::F2, 1.3, 0.4, -0.2, 0, lam, lam * 0.7);
  for (double x : {-1.0, 0.2, 0.9, 1.7}) {
    CHECK(a.drift_mu(x) == doctest::Approx(b.drift_mu(x)).epsilon(1e-12));
  }
}

TEST_CASE("exact drift derivative matches finite differences") {
  const DriftSpec specs[] = {
      DriftSpec::coth(1.0),
      DriftSpec::make(Family::F2, 1.3, 0.4, -0.2, 0, 1, 0.7),
      DriftSpec::radial_ou(0.5, 1.0),
  };
  for (const DriftSpec& s : specs) {
    for (double x : {0.6, 1.1, 1.9}) {
      const double h = 1e-6 * std::max(1.0, std::fabs(x));
      const double fd = (s.drift_mu(x + h) - s.drift_mu(x - h)) / (2.0 * h);
      CHECK(s.drift_mu_prime(x) == doctest::Approx(fd).epsilon(1e-6));
    }
  }
}

TEST_CASE("the B->0 seam is continuous") {
  // Just above the threshold the Airy pair must reproduce the B = 0
  // exponential solution; with c = (1, 0) mapping to a pure decaying
  // exponential via (c1, c2) = (-1, 1) below the seam.
  const double C = 0.5;
  const double b_above = fpt::kF1SmallBThreshold * (1.0 + 1e-6);
  const DriftSpec airy = DriftSpec::make(Family::F1, 0, b_above, C, 0, 1, 0);
  const DriftSpec expo = DriftSpec::make(Family::F1, 0, 0.0, C, 0, -1, 1);
  for (double x : {-1.0, 0.5, 2.0}) {
    CHECK(airy.drift_mu(x) == doctest::Approx(expo.drift_mu(x)).epsilon(1e-9));
    CHECK(expo.drift_mu(x) == doctest::Approx(-1.0).epsilon(1e-12));
  }
  // below the threshold the same parameters select the exponential branch
  const double b_below = fpt::kF1SmallBThreshold * (1.0 - 1e-6);
  const DriftSpec seamed = DriftSpec::make(Family::F1, 0, b_below, C, 0, -1, 1);
  CHECK(seamed.drift_mu(0.5) == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("experimental flag marks the negative-B Airy branch") {
  CHECK(DriftSpec::make(Family::F1, 0, -0.5, 0.3, 0, 1, 2).experimental());
  CHECK_FALSE(DriftSpec::make(Family::F1, 0, 0.5, 0.3, 0, 1, 2).experimental());
  CHECK_FALSE(DriftSpec::coth(1.0).experimental());
}

TEST_CASE("parameter validation rejects ill-posed specs") {
  using fpt::ValidationError;
  CHECK_THROWS_AS(DriftSpec::make(Family::F1, 1, 0, 0, 0, 1, 0), ValidationError);
  CHECK_THROWS_AS(DriftSpec::make(Family::F1, 0, 0, 0, 1, 1, 0), ValidationError);
  CHECK_THROWS_AS(DriftSpec::make(Family::F1, 0, 0, -1, 0, 1, 0), ValidationError);
  CHECK_THROWS_AS(DriftSpec::make(Family::F2, 0, 0, 1, 0, 1, 0), ValidationError);
  CHECK_THROWS_AS(DriftSpec::make(Family::F2, 1, 0, 1, 1, 1, 0), ValidationError);
  CHECK_THROWS_AS(DriftSpec::make(Family::F3, 1, 0, 1, 0, 1, 0), ValidationError);
  CHECK_THROWS_AS(DriftSpec::make(Family::F3, 0, 0, -1, 0, 1, 0), ValidationError);
  CHECK_THROWS_AS(DriftSpec::make(Family::F3, 0, 0, 1, -0.3, 1, 0), ValidationError);
  CHECK_THROWS_AS(DriftSpec::make(Family::F4, 1, 1, 0, 0, 1, 0), ValidationError);
  CHECK_THROWS_AS(DriftSpec::make(Family::F4, -1, 0, 0, 0, 1, 0), ValidationError);
  CHECK_THROWS_AS(DriftSpec::make(Family::F1, 0, 0, 1, 0, 0, 0), ValidationError);
  // theta(anchor) <= 0
  CHECK_THROWS_AS(DriftSpec::make(Family::F1, 0, 0, 0.5, 0, -1, 0, std::nullopt, 1.0),
                  ValidationError);
  // anchor outside the requested domain
  CHECK_THROWS_AS(DriftSpec::make(Family::F1, 0, 0, 0.5, 0, 1, 0, Interval{1.0, 2.0}, 5.0),
                  ValidationError);
  // requested domain reaches outside the positivity interval
  CHECK_THROWS_AS(DriftSpec::make(Family::F1, 0, 0, 0.5, 0, 1, 0, Interval{-1.0, 2.0}, 1.0),
                  ValidationError);
  // F3/F4 domains cannot reach below zero
  CHECK_THROWS_AS(
      DriftSpec::make(Family::F3, 0, 0, 1, 0, 1, 0, Interval{-1.0, 2.0}, 1.0),
      ValidationError);
}

TEST_CASE("user-supplied domains are honored when valid") {
  const DriftSpec s =
      DriftSpec::make(Family::F1, 0, 0, 0.5, 0, 1, 0, Interval{0.5, 4.0}, 1.0);
  CHECK(s.domain().lo == 0.5);
  CHECK(s.domain().hi == 4.0);
  CHECK_THROWS_AS(s.drift_mu(0.4), fpt::DomainError);
  CHECK(s.drift_mu(1.0) == doctest::Approx(fpt::testdata::kOracleCothDriftAt1).epsilon(1e-13));
}

TEST_CASE("evaluations outside the domain raise DomainError") {
  const DriftSpec c = DriftSpec::coth(1.0);
  CHECK_THROWS_AS(c.drift_mu(-0.5), fpt::DomainError);
  CHECK_THROWS_AS(c.theta(0.0), fpt::DomainError);
  CHECK_THROWS_AS(c.theta_prime(-1.0), fpt::DomainError);
}

TEST_CASE("json round trip preserves the spec") {
  for (const DriftSpec& s : {DriftSpec::coth(1.3),
                             DriftSpec::make(Family::F2, 1.3, 0.4, -0.2, 0, 1, 0.7),
                             DriftSpec::make(Family::F4, 1.0, 0, -0.3, 0.5, 1, -0.4)}) {
    const DriftSpec r = DriftSpec::from_json(s.to_json());
    CHECK(r.family() == s.family());
    CHECK(r.A() == s.A());
    CHECK(r.B() == s.B());
    CHECK(r.C() == s.C());
    CHECK(r.D() == s.D());
    CHECK(r.c1() == s.c1());
    CHECK(r.c2() == s.c2());
    if (std::isfinite(s.domain().lo)) {
      CHECK(r.domain().lo == doctest::Approx(s.domain().lo).epsilon(1e-12));
    } else {
      CHECK(r.domain().lo == -kInf);
    }
    if (std::isfinite(s.domain().hi)) {
      CHECK(r.domain().hi == doctest::Approx(s.domain().hi).epsilon(1e-12));
    } else {
      CHECK(r.domain().hi == kInf);
    }
    const double x = s.anchor();
    CHECK(r.drift_mu(x) == doctest::Approx(s.drift_mu(x)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(DriftSpec::from_json("{not json"), fpt::ValidationError);
  CHECK_THROWS_AS(DriftSpec::from_json(R"({"family":"F9","A":0,"B":0,"C":1,"D":0,"c1":1,"c2":0})"),
                  fpt::ValidationError);
}

TEST_CASE("family names round trip") {
  for (Family f : {Family::F1, Family::F2, Family::F3, Family::F4}) {
    CHECK(fpt::family_from_name(fpt::family_name(f)) == f);
  }
  CHECK_THROWS_AS(fpt::family_from_name("F5"), fpt::ValidationError);
}

TEST_CASE("lamperti transform") {
  SUBCASE("constant sigma is a rescaling") {
    fpt::LampertiSpec ls;
    ls.nu_fn = [](double u) { return -u; };
    ls.sigma_fn = [](double) { return 2.0; };
    CHECK(fpt::lamperti_forward(ls, 3.0) == doctest::Approx(1.5).epsilon(1e-10));
    CHECK(fpt::lamperti_inverse(ls, 1.5) == doctest::Approx(3.0).epsilon(1e-10));
    CHECK(fpt::lamperti_drift(ls, 1.5) == doctest::Approx(-1.5).epsilon(1e-8));
  }
  SUBCASE("square-root diffusion with a singular endpoint") {
    fpt::LampertiSpec ls;
    ls.nu_fn = [](double) { return 0.0; };
    ls.sigma_fn = [](double u) { return 2.0 * std::sqrt(u); };
    ls.y0 = 0.0;
    ls.u_lo = 0.0;
    CHECK(fpt::lamperti_forward(ls, 4.0) == doctest::Approx(2.0).epsilon(1e-8));
    CHECK(fpt::lamperti_inverse(ls, 2.0) == doctest::Approx(4.0).epsilon(1e-8));
  }
  SUBCASE("quadratic diffusion matches the closed-form coordinate change") {
    // sigma^2 = r u^2 + p u + q integrates to
    // (1/sqrt(r)) log(sqrt(r u^2 + p u + q) + sqrt(r) u + p / (2 sqrt(r))).
    auto closed = [](double r, double p, double q, double u) {
      const double sr = std::sqrt(r);
      return std::log(std::sqrt(r * u * u + p * u + q) + sr * u + p / (2.0 * sr)) / sr;
    };
    {
      fpt::LampertiSpec ls;
      ls.sigma_fn = [](double u) { return std::sqrt(u * u + 1.0); };
      ls.nu_fn = [](double) { return 0.0; };
      CHECK(fpt::lamperti_forward(ls, 2.0) == doctest::Approx(std::asinh(2.0)).epsilon(1e-10));
    }
    {
      const double r = 2.0, p = 1.0, q = 3.0;
      fpt::LampertiSpec ls;
      ls.sigma_fn = [=](double u) { return std::sqrt(r * u * u + p * u + q); };
      ls.nu_fn = [](double) { return 0.0; };
      const double expected = closed(r, p, q, 2.0) - closed(r, p, q, 0.0);
      CHECK(fpt::lamperti_forward(ls, 2.0) == doctest::Approx(expected).epsilon(1e-9));
    }
  }
  SUBCASE("non-positive sigma and unreachable targets are rejected") {
    fpt::LampertiSpec ls;
    ls.sigma_fn = [](double u) { return u; };  // negative for u < 0
    ls.nu_fn = [](double) { return 0.0; };
    ls.y0 = 1.0;
    CHECK_THROWS_AS(fpt::lamperti_forward(ls, -1.0), fpt::DomainError);
    fpt::LampertiSpec bounded;
    bounded.sigma_fn = [](double) { return 1.0; };
    bounded.nu_fn = [](double) { return 0.0; };
    bounded.u_hi = 2.0;  // image is (-inf, 2)
    CHECK_THROWS_AS(fpt::lamperti_inverse(bounded, 5.0), fpt::DomainError);
  }
}

TEST_CASE("pearson linear-drift coefficients") {
  const auto ab = fpt::pearson_symmetric_params(1.0, 0.0, 1.0);
  CHECK(ab.first == doctest::Approx(0.75));
  CHECK(ab.second == doctest::Approx(0.0));
  const auto cd = fpt::pearson_symmetric_params(4.0, 2.0, 1.0);
  CHECK(cd.first == doctest::Approx(3.0));
  CHECK(cd.second == doctest::Approx(1.5));
  CHECK_THROWS_AS(fpt::pearson_symmetric_params(1.0, 4.0, 1.0), fpt::DomainError);
  CHECK_THROWS_AS(fpt::pearson_symmetric_params(-1.0, 0.0, 1.0), fpt::DomainError);
}
