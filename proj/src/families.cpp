#include "fpt/families.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/tools/roots.hpp>

#include "fpt/specfun.hpp"
#include "json.hpp"

namespace fpt {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = std::numbers::pi;

// Working-variable floor for the positive-axis scans: exp(-690) stays a
// normal double, and every special function involved is evaluable there.
constexpr double kScanFloorLog = -690.0;

// Largest (rightmost) zero of Ai; theta combinations are oscillatory below
// it and have at most one sign change above it.
constexpr double kAiryFirstZero = -2.3381074104597670417;

// Evaluation branches; degenerate parameter regimes get closed forms
// instead of special-function calls.
enum BranchCode : int {
  kF1Airy = 0,  // theta = c1 Ai(s) + c2 Bi(s),      s = kappa (x + shift)
  kF1Exp,       // theta = ap e^{wx} + am e^{-wx}
  kF1Linear,    // theta = c1 x + c2
  kF2,          // theta = c1 D_a(s) + c2 D_a(-s),   s = kappa (x + shift)
  kF3Bessel,    // theta = sqrt(x) (c1 I_om(wx) + c2 K_om(wx))
  kF3Power,     // theta = c1 x^{1/2+om} + c2 x^{1/2-om}
  kF4,          // theta = x^{-1/2} (c1 M_{lam,mm}(z) + c2 W_{lam,mm}(z)),
                //   z = sa x^2
};

LogSigned ls_zero() { return {-kInf, 0}; }

LogSigned ls_of(double v) {
  if (v == 0.0) return ls_zero();
  if (!std::isfinite(v)) throw NumericError("non-finite value in signed-log arithmetic");
  return {std::log(std::fabs(v)), v > 0.0 ? 1 : -1};
}

LogSigned ls_from_sf(const sf::SpecialFunctionResult& r) {
  const int s = r.sgn();
  if (s == 0) return ls_zero();
  return {r.log_abs(), s};
}

// c * exp(log_factor) as a LogSigned term.
LogSigned ls_term(double c, double log_factor) {
  if (c == 0.0) return ls_zero();
  return {std::log(std::fabs(c)) + log_factor, c > 0.0 ? 1 : -1};
}

LogSigned ls_cmul(double c, LogSigned a) {
  if (c == 0.0 || a.sign == 0) return ls_zero();
  return {a.log_abs + std::log(std::fabs(c)), c > 0.0 ? a.sign : -a.sign};
}

LogSigned ls_scale(LogSigned a, double log_factor) {
  if (a.sign == 0) return a;
  return {a.log_abs + log_factor, a.sign};
}

LogSigned ls_add(LogSigned a, LogSigned b) {
  if (a.sign == 0) return b;
  if (b.sign == 0) return a;
  if (a.log_abs < b.log_abs) std::swap(a, b);
  const double m = a.sign == b.sign ? 1.0 + std::exp(b.log_abs - a.log_abs)
                                    : 1.0 - std::exp(b.log_abs - a.log_abs);
  if (m == 0.0) return ls_zero();
  return {a.log_abs + std::log(m), a.sign};
}

double ls_ratio(LogSigned num, LogSigned den) {
  if (den.sign == 0) throw NumericError("division by a vanishing theta value");
  if (num.sign == 0) return 0.0;
  return static_cast<double>(num.sign * den.sign) * std::exp(num.log_abs - den.log_abs);
}

double family_rhs(Family family, double A, double B, double C, double D, double x) {
  switch (family) {
    case Family::F1:
      return 4.0 * B * x + 2.0 * C;
    case Family::F2:
      return A * x * x + 4.0 * B * x + 2.0 * C;
    case Family::F3:
      return 2.0 * C + D / (x * x);
    case Family::F4:
      return A * x * x + 2.0 * C + D / (x * x);
  }
  throw ValidationError("unknown family");
}

// Uniform large/small-argument exponent of the modified Bessel pair:
// approximately log I_nu(x) (and -log K_nu(x)).
double debye_g(double nu, double x) {
  if (nu == 0.0) return x;
  const double r = std::hypot(nu, x);
  return r - nu * std::log((nu + r) / x);
}

double checked_pos(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw NumericError(std::string("argument under/overflows double precision in ") + what);
  }
  return v;
}

using Ev = std::function<LogSigned(double)>;

struct Zone {
  double lo = 0.0;
  double hi = 0.0;
  bool oscillatory = false;
  std::function<double(double)> step;  // march step width (oscillatory zones)
};

// Bisects the single sign change between neg (theta <= 0) and pos
// (theta > 0); the two points may be in either axis order.
double bisect_edge(const Ev& ev, double neg, double pos) {
  for (int it = 0; it < 220; ++it) {
    const double mid = 0.5 * (neg + pos);
    if (mid == neg || mid == pos) break;
    if (ev(mid).sign > 0) {
      pos = mid;
    } else {
      neg = mid;
    }
  }
  return 0.5 * (neg + pos);
}

// Walks from `from` (theta > 0) toward `to`, sampling every step(v), and
// returns the first bracket {last positive, first non-positive} found.
// Step widths stay below a quarter of the local oscillation wavelength, so
// a sign change cannot hide between consecutive samples.
std::optional<std::pair<double, double>> march_sign_change(
    const Ev& ev, double from, double to, const std::function<double(double)>& step) {
  const double dir = to > from ? 1.0 : -1.0;
  double cur = from;
  for (long k = 0; k < 400000; ++k) {
    if (cur == to) return std::nullopt;
    double next = cur + dir * step(cur);
    if ((dir > 0.0 && next >= to) || (dir < 0.0 && next <= to)) next = to;
    if (next == cur) return std::nullopt;  // step underflow at extreme magnitude
    if (ev(next).sign <= 0) return std::make_pair(cur, next);
    cur = next;
  }
  throw NumericError(
      "drift-domain scan exceeded its step budget; the spec's oscillatory "
      "zone is too wide (parameter magnitudes out of supported range)");
}

// Walks outward from `from` (where theta > 0) through contiguous ascending
// zones; non-oscillatory zones carry at most one sign change and are probed
// at their far end, oscillatory zones are marched.  Returns the boundary
// location, or nullopt when the outermost zone end is reached with theta
// still positive.
std::optional<double> walk_boundary(const Ev& ev, const std::vector<Zone>& zones,
                                    double from, int dir) {
  double cur = from;
  auto handle = [&](const Zone& z, double zend) -> std::optional<std::optional<double>> {
    if (!z.oscillatory) {
      if (ev(zend).sign > 0) {
        cur = zend;
        return std::nullopt;  // keep walking
      }
      return std::optional<std::optional<double>>(bisect_edge(ev, zend, cur));
    }
    auto br = march_sign_change(ev, cur, zend, z.step);
    if (br) return std::optional<std::optional<double>>(bisect_edge(ev, br->second, br->first));
    cur = zend;
    return std::nullopt;
  };
  if (dir > 0) {
    for (const Zone& z : zones) {
      if (z.hi <= cur) continue;
      if (auto r = handle(z, z.hi)) return *r;
    }
  } else {
    for (auto it = zones.rbegin(); it != zones.rend(); ++it) {
      if (it->lo >= cur) continue;
      if (auto r = handle(*it, it->lo)) return *r;
    }
  }
  return std::nullopt;
}

void dense_positivity_check(const Ev& ev, double lo, double hi) {
  if (!(hi > lo) || !std::isfinite(lo) || !std::isfinite(hi)) return;
  const int n = 1000;
  for (int i = 0; i < n; ++i) {
    const double v = lo + (hi - lo) * ((i + 0.5) / n);
    if (ev(v).sign <= 0) {
      char buf[160];
      std::snprintf(buf, sizeof buf,
                    "theta is not strictly positive across the domain "
                    "(sign check failed at scan coordinate %.17g)", v);
      throw ValidationError(buf);
    }
  }
}

std::vector<double> default_anchor_candidates(bool positive_axis,
                                              const std::optional<Interval>& dom) {
  if (dom) {
    const double lo = dom->lo, hi = dom->hi;
    const bool lof = std::isfinite(lo), hif = std::isfinite(hi);
    if (lof && hif) {
      const double w = hi - lo;
      return {lo + 0.5 * w, lo + 0.25 * w, lo + 0.75 * w, lo + 0.1 * w, lo + 0.9 * w};
    }
    if (lof) return {lo + 1.0, lo + 0.1, lo + 10.0, lo + 100.0, lo + 0.01};
    if (hif) return {hi - 1.0, hi - 0.1, hi - 10.0, hi - 100.0, hi - 0.01};
  }
  if (positive_axis) return {1.0, 2.0, 0.5, 4.0, 0.25, 10.0, 0.1};
  return {0.0, 1.0, -1.0, 2.0, -2.0, 0.5, 5.0, -5.0};
}

}  // namespace

// Construction-time and evaluation internals; a friend so the scan helpers
// can probe theta before the spec's domain is known.
struct FamiliesImpl {
  struct Scan {
    Interval x_dom;
    double wv_lo = 0.0, wv_hi = 0.0;  // dense-check window, working variable
  };

  static LogSigned sign_ev(const DriftSpec& s, double wv) {
    switch (s.branch_) {
      case kF1Airy:
        return ls_add(ls_cmul(s.c1_, ls_from_sf(sf::airy_ai(wv))),
                      ls_cmul(s.c2_, ls_from_sf(sf::airy_bi(wv))));
      case kF2:
        return ls_add(ls_cmul(s.c1_, ls_from_sf(sf::parabolic_d(s.two_nu_, wv))),
                      ls_cmul(s.c2_, ls_from_sf(sf::parabolic_d(s.two_nu_, -wv))));
      case kF3Bessel: {
        const double wx =
            checked_pos(s.w_ * std::exp(wv), "the Bessel drift branch");
        return ls_add(ls_cmul(s.c1_, ls_from_sf(sf::bessel_i(s.omega_, wx))),
                      ls_cmul(s.c2_, ls_from_sf(sf::bessel_k(s.omega_, wx))));
      }
      case kF4: {
        const double z = checked_pos(std::exp(wv), "the Whittaker drift branch");
        return ls_add(ls_cmul(s.c1_, ls_from_sf(sf::whittaker_m(s.lam_, s.mm_, z))),
                      ls_cmul(s.c2_, ls_from_sf(sf::whittaker_w(s.lam_, s.mm_, z))));
      }
      case kF1Exp:
      case kF1Linear:
        return theta(s, wv);
      default:  // kF3Power
        return theta(s, std::exp(wv));
    }
  }

  static double to_working(const DriftSpec& s, double x) {
    switch (s.branch_) {
      case kF1Airy:
      case kF2:
        return s.kappa_ * (x + s.shift_);
      case kF3Bessel:
      case kF3Power:
        return std::log(x);
      case kF4:
        return std::log(s.sa_) + 2.0 * std::log(x);
      default:
        return x;
    }
  }

  static LogSigned theta(const DriftSpec& s, double x) {
    switch (s.branch_) {
      case kF1Airy:
      case kF2:
        return sign_ev(s, s.kappa_ * (x + s.shift_));
      case kF1Exp: {
        const double wx = s.w_ * x;
        return ls_add(ls_term(s.ap_, wx), ls_term(s.am_, -wx));
      }
      case kF1Linear:
        return ls_add(ls_cmul(s.c1_, ls_of(x)), ls_of(s.c2_));
      case kF3Bessel: {
        checked_pos(s.w_ * x, "the Bessel drift branch");
        const double lx = std::log(x);
        return ls_scale(sign_ev(s, lx), 0.5 * lx);
      }
      case kF3Power: {
        const double lx = std::log(checked_pos(x, "the power drift branch"));
        return ls_add(ls_term(s.c1_, (0.5 + s.omega_) * lx),
                      ls_term(s.c2_, (0.5 - s.omega_) * lx));
      }
      default: {  // kF4
        checked_pos(s.sa_ * x * x, "the Whittaker drift branch");
        const double lx = std::log(x);
        return ls_scale(sign_ev(s, std::log(s.sa_) + 2.0 * lx), -0.5 * lx);
      }
    }
  }

  static LogSigned theta_prime(const DriftSpec& s, double x) {
    switch (s.branch_) {
      case kF1Airy: {
        const double sv = s.kappa_ * (x + s.shift_);
        const LogSigned d =
            ls_add(ls_cmul(s.c1_, ls_from_sf(sf::airy_ai_prime(sv))),
                   ls_cmul(s.c2_, ls_from_sf(sf::airy_bi_prime(sv))));
        return ls_cmul(s.kappa_, d);
      }
      case kF1Exp: {
        const double wx = s.w_ * x;
        const LogSigned d = ls_add(ls_term(s.ap_, wx), ls_term(-s.am_, -wx));
        return ls_cmul(s.w_, d);
      }
      case kF1Linear:
        return ls_of(s.c1_);
      case kF2: {
        const double sv = s.kappa_ * (x + s.shift_);
        const LogSigned d =
            ls_add(ls_cmul(s.c1_, ls_from_sf(sf::parabolic_d_prime(s.two_nu_, sv))),
                   ls_cmul(-s.c2_, ls_from_sf(sf::parabolic_d_prime(s.two_nu_, -sv))));
        return ls_cmul(s.kappa_, d);
      }
      case kF3Bessel: {
        const double wx = checked_pos(s.w_ * x, "the Bessel drift branch");
        const double lx = std::log(x);
        const LogSigned inner =
            ls_add(ls_cmul(s.c1_, ls_from_sf(sf::bessel_i(s.omega_, wx))),
                   ls_cmul(s.c2_, ls_from_sf(sf::bessel_k(s.omega_, wx))));
        const LogSigned dinner =
            ls_add(ls_cmul(s.c1_, ls_from_sf(sf::bessel_i_prime(s.omega_, wx))),
                   ls_cmul(s.c2_, ls_from_sf(sf::bessel_k_prime(s.omega_, wx))));
        return ls_add(ls_scale(ls_cmul(0.5, inner), -0.5 * lx),
                      ls_scale(ls_cmul(s.w_, dinner), 0.5 * lx));
      }
      case kF3Power: {
        const double lx = std::log(checked_pos(x, "the power drift branch"));
        return ls_add(ls_term(s.c1_ * (0.5 + s.omega_), (s.omega_ - 0.5) * lx),
                      ls_term(s.c2_ * (0.5 - s.omega_), (-s.omega_ - 0.5) * lx));
      }
      default: {  // kF4
        const double z = checked_pos(s.sa_ * x * x, "the Whittaker drift branch");
        const double lx = std::log(x);
        const LogSigned phi =
            ls_add(ls_cmul(s.c1_, ls_from_sf(sf::whittaker_m(s.lam_, s.mm_, z))),
                   ls_cmul(s.c2_, ls_from_sf(sf::whittaker_w(s.lam_, s.mm_, z))));
        const LogSigned dphi =
            ls_add(ls_cmul(s.c1_, ls_from_sf(sf::whittaker_m_prime(s.lam_, s.mm_, z))),
                   ls_cmul(s.c2_, ls_from_sf(sf::whittaker_w_prime(s.lam_, s.mm_, z))));
        return ls_add(ls_scale(ls_cmul(-0.5, phi), -1.5 * lx),
                      ls_scale(ls_cmul(2.0 * s.sa_, dphi), 0.5 * lx));
      }
    }
  }

  // RHS consistent with the evaluation branch (B treated as zero below the
  // F1 seam threshold), used for the exact drift derivative.
  static double rhs_effective(const DriftSpec& s, double x) {
    if (s.branch_ == kF1Exp || s.branch_ == kF1Linear) return 2.0 * s.c_;
    return family_rhs(s.family_, s.a_, s.b_, s.c_, s.d_, x);
  }

  static Scan scan(const DriftSpec& s) {
    switch (s.branch_) {
      case kF1Airy:
        return scan_f1_airy(s);
      case kF1Exp:
        return scan_f1_exp(s);
      case kF1Linear:
        return scan_f1_linear(s);
      case kF2:
        return scan_f2(s);
      case kF3Bessel:
        return scan_f3_bessel(s);
      case kF3Power:
        return scan_f3_power(s);
      default:
        return scan_f4(s);
    }
  }

  // ---- per-branch scans ---------------------------------------------------

  static Scan scan_f1_airy(const DriftSpec& s) {
    const Ev ev = [&s](double v) { return sign_ev(s, v); };
    const double s_a = s.kappa_ * (s.anchor_ + s.shift_);
    // Above kAiryFirstZero the ratio Bi/Ai is strictly increasing, so the
    // combination has at most one sign change there; a crossing beyond the
    // cap would need a coefficient ratio past e^{2 zeta(cap)} (zeta(120) ~
    // 876 and the increment over anchor+20 dwarfs the double range).
    const double fine_hi = kAiryFirstZero + 1e-6;
    const double cap_hi = std::max(s_a + 20.0, 120.0);
    const double cap_lo = std::min(s_a, kAiryFirstZero) - 420.0;
    auto step = [](double v) { return 0.25 * kPi / std::sqrt(1.0 + std::fabs(v)); };
    const std::vector<Zone> zones = {{cap_lo, fine_hi, true, step},
                                     {fine_hi, cap_hi, false, {}}};
    const auto up = walk_boundary(ev, zones, s_a, +1);
    const auto dn = walk_boundary(ev, zones, s_a, -1);
    if (!dn) {
      throw NumericError("internal: oscillatory Airy scan found no lower boundary");
    }
    Scan r;
    if (s.kappa_ > 0.0) {
      r.x_dom.lo = *dn / s.kappa_ - s.shift_;
      r.x_dom.hi = up ? *up / s.kappa_ - s.shift_ : kInf;
    } else {
      r.x_dom.lo = up ? *up / s.kappa_ - s.shift_ : -kInf;
      r.x_dom.hi = *dn / s.kappa_ - s.shift_;
    }
    r.wv_lo = std::max(*dn, std::min(s_a, kAiryFirstZero) - 40.0);
    r.wv_hi = up ? *up : cap_hi;
    return r;
  }

  static Scan scan_f1_exp(const DriftSpec& s) {
    Scan r;
    if (s.ap_ != 0.0 && s.am_ != 0.0 && (s.ap_ > 0.0) != (s.am_ > 0.0)) {
      const double x0 = std::log(-s.am_ / s.ap_) / (2.0 * s.w_);
      if (s.anchor_ > x0) {
        r.x_dom.lo = x0;
      } else {
        r.x_dom.hi = x0;
      }
    }
    const double span = 12.0 * std::max(1.0, 1.0 / s.w_);
    r.wv_lo = std::max(r.x_dom.lo, s.anchor_ - span);
    r.wv_hi = std::min(r.x_dom.hi, s.anchor_ + span);
    return r;
  }

  static Scan scan_f1_linear(const DriftSpec& s) {
    Scan r;
    if (s.c1_ != 0.0) {
      const double x0 = -s.c2_ / s.c1_;
      if (s.anchor_ > x0) {
        r.x_dom.lo = x0;
      } else {
        r.x_dom.hi = x0;
      }
    }
    const double span = 10.0 * (1.0 + std::fabs(s.anchor_));
    r.wv_lo = std::max(r.x_dom.lo, s.anchor_ - span);
    r.wv_hi = std::min(r.x_dom.hi, s.anchor_ + span);
    return r;
  }

  static Scan scan_f2(const DriftSpec& s) {
    const Ev ev = [&s](double v) { return sign_ev(s, v); };
    const double nv = std::fabs(s.two_nu_) + 1.0;
    const double s_osc = 2.0 * std::sqrt(nv) + 4.0;
    const double s_a = s.kappa_ * (s.anchor_ + s.shift_);
    // Tail cap: a crossing beyond it needs |c1/c2| outside the double range
    // even after the polynomial prefactor s^{2 nu} is credited against the
    // Gaussian factor.
    double cap = std::max({std::fabs(s_a) + 10.0, s_osc + 10.0, 80.0});
    for (int i = 0; i < 60; ++i) {
      const double need =
          std::sqrt(2.0 * (3100.0 + (2.0 * std::fabs(s.two_nu_) + 2.0) * std::log(cap)));
      if (need <= cap) break;
      cap = need;
    }
    auto step = [nv](double) { return 0.25 * kPi / std::sqrt(nv); };
    const std::vector<Zone> zones = {{-cap, -s_osc, false, {}},
                                     {-s_osc, s_osc, true, step},
                                     {s_osc, cap, false, {}}};
    const auto up = walk_boundary(ev, zones, s_a, +1);
    const auto dn = walk_boundary(ev, zones, s_a, -1);
    Scan r;
    r.x_dom.lo = dn ? *dn / s.kappa_ - s.shift_ : -kInf;
    r.x_dom.hi = up ? *up / s.kappa_ - s.shift_ : kInf;
    r.wv_lo = dn ? *dn : -cap;
    r.wv_hi = up ? *up : cap;
    return r;
  }

  static Scan scan_f3_bessel(const DriftSpec& s) {
    const Ev ev = [&s](double t) { return sign_ev(s, t); };  // t = log x
    const double t_a = std::log(s.anchor_);
    // K/I is strictly decreasing on (0, inf), so the combination has at most
    // one sign change on the whole axis; the cap is where K/I drops below
    // e^{-1540}, beyond any representable coefficient ratio.
    double wxc = std::max(s.w_ * s.anchor_, 1.0);
    int grow = 0;
    while (debye_g(s.omega_, wxc) < 770.0 && wxc < 1e290 && grow++ < 3000) wxc *= 1.5;
    if (debye_g(s.omega_, wxc) < 770.0) {
      throw NumericError("Bessel drift scan cap search failed (index out of range)");
    }
    const double t_cap = std::max(std::log(wxc / s.w_), t_a + 1.0);
    Scan r;
    if (ev(t_cap).sign > 0) {
      r.x_dom.hi = kInf;
    } else {
      r.x_dom.hi = std::exp(bisect_edge(ev, t_cap, t_a));
    }
    const double limit_coeff = s.c2_ != 0.0 ? s.c2_ : s.c1_;
    if (limit_coeff > 0.0) {
      r.x_dom.lo = 0.0;  // theta -> +inf (or +0 side) as x -> 0
    } else {
      const double t_floor = kScanFloorLog - std::log(s.w_);
      double cur = t_a;
      bool flipped = false;
      double neg = 0.0;
      while (cur > t_floor) {
        const double nx = std::max(cur - 40.0, t_floor);
        if (ev(nx).sign <= 0) {
          neg = nx;
          flipped = true;
          break;
        }
        cur = nx;
      }
      // An undetected crossing would sit below the double floor; clamp there.
      r.x_dom.lo = flipped ? std::exp(bisect_edge(ev, neg, cur)) : std::exp(t_floor);
    }
    r.wv_lo = std::max(r.x_dom.lo > 0.0 ? std::log(r.x_dom.lo) : t_a - 30.0, t_a - 30.0);
    r.wv_hi = std::min(std::isfinite(r.x_dom.hi) ? std::log(r.x_dom.hi) : t_cap, t_cap);
    return r;
  }

  static Scan scan_f3_power(const DriftSpec& s) {
    Scan r;
    r.x_dom.lo = 0.0;
    if (s.omega_ > 0.0 && s.c1_ != 0.0 && s.c2_ != 0.0 && (s.c1_ > 0.0) != (s.c2_ > 0.0)) {
      const double e = std::log(-s.c2_ / s.c1_) / (2.0 * s.omega_);
      if (std::fabs(e) < 700.0) {
        const double x0 = std::exp(e);
        if (s.anchor_ > x0) {
          r.x_dom.lo = x0;
        } else {
          r.x_dom.hi = x0;
        }
      }
    }
    const double t_a = std::log(s.anchor_);
    r.wv_lo = std::max(r.x_dom.lo > 0.0 ? std::log(r.x_dom.lo) : t_a - 25.0, t_a - 25.0);
    r.wv_hi = std::min(std::isfinite(r.x_dom.hi) ? std::log(r.x_dom.hi) : t_a + 25.0,
                       t_a + 25.0);
    return r;
  }

  static Scan scan_f4(const DriftSpec& s) {
    const Ev ev = [&s](double t) { return sign_ev(s, t); };  // t = log z
    const double a1k = s.mm_ - s.lam_ + 0.5;
    const double b1 = 1.0 + 2.0 * s.mm_;
    const double z_a = s.sa_ * s.anchor_ * s.anchor_;
    const double t_a = std::log(z_a);
    // Below z_fine the M series is within 12% of 1, so M > 0 and the W/M
    // ratio argument caps the zone at one sign change; z_osc bounds the
    // oscillatory region of both solutions.
    const double z_osc = 6.0 * (std::fabs(a1k) + b1 + 2.0) + 10.0;
    const double z_fine = std::min(z_a, 0.1 * b1 / (1.0 + std::fabs(a1k)));
    double zcap = std::max({1.5 * z_a + 10.0, z_osc + 20.0, 1600.0});
    const double pen =
        std::min(std::fabs(std::lgamma(std::max(std::fabs(a1k), 1e-300))), 800.0) +
        std::fabs(std::lgamma(b1));
    for (int i = 0; i < 60; ++i) {
      const double need =
          3100.0 + (2.0 * std::fabs(s.lam_) + 2.0) * std::log(zcap) + pen;
      if (need <= zcap) break;
      zcap = need;
    }
    const double t1 = std::log(z_fine);
    const double t2 = std::log(z_osc);
    const double t3 = std::log(zcap);
    const double t_floor = std::min({kScanFloorLog, t1 - 10.0, t_a - 30.0});
    auto step = [&s](double t) {
      const double z = std::exp(t);
      const double k2 = std::max(
          s.lam_ / z - 0.25 + (0.25 - s.mm_ * s.mm_) / (z * z), 0.04);
      return std::clamp(0.25 * kPi / (std::sqrt(k2) * z), 1e-5, 0.5);
    };
    const std::vector<Zone> zones = {{t_floor, t1, false, {}},
                                     {t1, t2, true, step},
                                     {t2, t3, false, {}}};
    const auto up = walk_boundary(ev, zones, t_a, +1);
    const auto dn = walk_boundary(ev, zones, t_a, -1);
    Scan r;
    r.x_dom.hi = up ? std::sqrt(std::exp(*up) / s.sa_) : kInf;
    if (dn) {
      r.x_dom.lo = std::sqrt(std::exp(*dn) / s.sa_);
    } else {
      // Reached the floor positive; settle the 0-extension by the z->0
      // limit sign of theta/M (the ratio W/M is monotone below z_fine).
      int s0;
      if (s.c2_ == 0.0) {
        s0 = s.c1_ > 0.0 ? 1 : -1;
      } else {
        try {
          // W ~ [Gamma(2 mm)/Gamma(a1k)] z^{1/2-mm} dominates M as z -> 0;
          // only the sign of 1/Gamma(a1k) can flip the limit.
          s0 = (s.c2_ > 0.0 ? 1 : -1) * sf::gamma_fn(a1k).sgn();
        } catch (const Error&) {
          // Gamma pole: W is proportional to M near 0 and the ratio is
          // constant, so positivity at the floor settles the whole tail.
          s0 = 1;
        }
      }
      r.x_dom.lo = s0 > 0 ? 0.0 : std::sqrt(std::exp(t_floor) / s.sa_);
    }
    r.wv_lo = std::max(dn ? *dn : t_floor, std::min(t_a, t1) - 10.0);
    r.wv_hi = std::min(up ? *up : t3, std::max(t_a + 30.0, t2 + 2.0));
    return r;
  }

  // ---- construction -------------------------------------------------------

  static DriftSpec build(Family family, double A, double B, double C, double D,
                         double c1, double c2, std::optional<Interval> domain,
                         std::optional<double> anchor) {
    for (double v : {A, B, C, D, c1, c2}) {
      if (!std::isfinite(v)) throw ValidationError("drift parameters must be finite");
    }
    if (c1 == 0.0 && c2 == 0.0) {
      throw ValidationError("c1 and c2 are both zero; theta would vanish identically");
    }
    switch (family) {
      case Family::F1:
        if (A != 0.0 || D != 0.0) throw ValidationError("family F1 requires A = 0 and D = 0");
        break;
      case Family::F2:
        if (D != 0.0) throw ValidationError("family F2 requires D = 0");
        if (!(A > 0.0)) throw ValidationError("family F2 requires A > 0");
        break;
      case Family::F3:
        if (A != 0.0 || B != 0.0) throw ValidationError("family F3 requires A = 0 and B = 0");
        if (!(C >= 0.0)) throw ValidationError("family F3 requires C >= 0");
        if (!(D >= -0.25)) throw ValidationError("family F3 requires D >= -1/4");
        break;
      case Family::F4:
        if (B != 0.0) throw ValidationError("family F4 requires B = 0");
        if (!(A > 0.0)) throw ValidationError("family F4 requires A > 0");
        if (!(D >= -0.25)) throw ValidationError("family F4 requires D >= -1/4");
        break;
    }
    const bool positive_axis = family == Family::F3 || family == Family::F4;
    if (domain) {
      if (!(domain->lo < domain->hi)) throw ValidationError("domain interval is empty");
      if (positive_axis && domain->lo < 0.0) {
        throw ValidationError("families F3/F4 live on (0, inf); the domain cannot reach below 0");
      }
    }

    DriftSpec spec;
    spec.family_ = family;
    spec.a_ = A;
    spec.b_ = B;
    spec.c_ = C;
    spec.d_ = D;
    spec.c1_ = c1;
    spec.c2_ = c2;
    switch (family) {
      case Family::F1: {
        const double seam = kF1SmallBThreshold * std::pow(std::max(1.0, std::fabs(C)), 1.5);
        if (std::fabs(B) < seam) {
          if (C > 0.0) {
            spec.branch_ = kF1Exp;
            spec.w_ = std::sqrt(2.0 * C);
            spec.ap_ = 0.5 * (c1 + c2);
            spec.am_ = 0.5 * (c2 - c1);
          } else if (C == 0.0) {
            spec.branch_ = kF1Linear;
          } else {
            throw ValidationError(
                "family F1 requires C >= 0 when B is zero (or below the "
                "B->0 seam threshold): theta would be oscillatory everywhere");
          }
        } else {
          spec.branch_ = kF1Airy;
          spec.kappa_ = std::cbrt(4.0 * B);
          spec.shift_ = C / (2.0 * B);
          spec.experimental_ = B < 0.0;
        }
        break;
      }
      case Family::F2: {
        spec.branch_ = kF2;
        spec.kappa_ = std::pow(4.0 * A, 0.25);
        spec.shift_ = 2.0 * B / A;
        const double sa = std::sqrt(A);
        spec.two_nu_ = (2.0 * B * B / A - 0.5 * sa - C) / sa;
        break;
      }
      case Family::F3: {
        spec.omega_ = std::sqrt(0.25 + D);
        if (C > 0.0) {
          spec.branch_ = kF3Bessel;
          spec.w_ = std::sqrt(2.0 * C);
        } else {
          spec.branch_ = kF3Power;
        }
        break;
      }
      case Family::F4: {
        spec.branch_ = kF4;
        spec.sa_ = std::sqrt(A);
        spec.omega_ = std::sqrt(0.25 + D);
        spec.lam_ = -C / (2.0 * spec.sa_);
        spec.mm_ = 0.5 * spec.omega_;
        break;
      }
    }

    if (anchor) {
      const double anc = *anchor;
      if (!std::isfinite(anc)) throw ValidationError("anchor must be finite");
      if (positive_axis && !(anc > 0.0)) {
        throw ValidationError("anchor must be positive for families F3/F4");
      }
      if (domain && !domain->contains(anc)) {
        throw ValidationError("anchor lies outside the requested domain");
      }
      if (theta(spec, anc).sign <= 0) {
        throw ValidationError("theta(anchor) is not positive");
      }
      spec.anchor_ = anc;
    } else {
      bool found = false;
      for (double cv : default_anchor_candidates(positive_axis, domain)) {
        if (positive_axis && !(cv > 0.0)) continue;
        if (domain && !domain->contains(cv)) continue;
        try {
          if (theta(spec, cv).sign > 0) {
            spec.anchor_ = cv;
            found = true;
            break;
          }
        } catch (const Error&) {
          // candidate outside the evaluable range; try the next one
        }
      }
      if (!found) {
        throw ValidationError(
            "no default anchor with theta > 0 was found; pass an explicit anchor");
      }
    }

    const Scan sc = scan(spec);
    if (!sc.x_dom.contains(spec.anchor_)) {
      throw NumericError("internal: anchor escaped its own positivity interval");
    }
    if (domain) {
      const double tlo =
          std::isfinite(sc.x_dom.lo) ? 1e-7 * (1.0 + std::fabs(sc.x_dom.lo)) : 0.0;
      const double thi =
          std::isfinite(sc.x_dom.hi) ? 1e-7 * (1.0 + std::fabs(sc.x_dom.hi)) : 0.0;
      if (domain->lo < sc.x_dom.lo - tlo || domain->hi > sc.x_dom.hi + thi) {
        char buf[200];
        std::snprintf(buf, sizeof buf,
                      "requested domain (%g, %g) is not contained in the "
                      "positivity interval (%g, %g) of theta",
                      domain->lo, domain->hi, sc.x_dom.lo, sc.x_dom.hi);
        throw ValidationError(buf);
      }
      spec.domain_ = *domain;
    } else {
      spec.domain_ = sc.x_dom;
    }

    double wlo = sc.wv_lo, whi = sc.wv_hi;
    if (domain) {
      double a = to_working(spec, domain->lo);
      double b = to_working(spec, domain->hi);
      if (a > b) std::swap(a, b);
      wlo = std::max(wlo, a);
      whi = std::min(whi, b);
    }
    const Ev dense = [&spec](double v) { return sign_ev(spec, v); };
    dense_positivity_check(dense, wlo, whi);
    return spec;
  }
};

// ---- DriftSpec public surface ----------------------------------------------

const char* family_name(Family f) {
  switch (f) {
    case Family::F1:
      return "F1";
    case Family::F2:
      return "F2";
    case Family::F3:
      return "F3";
    case Family::F4:
      return "F4";
  }
  throw ValidationError("unknown family");
}

Family family_from_name(const std::string& name) {
  if (name == "F1" || name == "f1") return Family::F1;
  if (name == "F2" || name == "f2") return Family::F2;
  if (name == "F3" || name == "f3") return Family::F3;
  if (name == "F4" || name == "f4") return Family::F4;
  throw ValidationError("unknown family name: " + name);
}

DriftSpec DriftSpec::make(Family family, double A, double B, double C, double D,
                          double c1, double c2, std::optional<Interval> domain,
                          std::optional<double> anchor) {
  return FamiliesImpl::build(family, A, B, C, D, c1, c2, domain, anchor);
}

DriftSpec DriftSpec::brownian() {
  return make(Family::F1, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0);
}

DriftSpec DriftSpec::coth(double omega) {
  if (omega == 0.0 || !std::isfinite(omega)) {
    throw ValidationError("coth drift requires a nonzero finite omega");
  }
  const double w = std::fabs(omega);
  return make(Family::F1, 0.0, 0.0, 0.5 * w * w, 0.0, 1.0, 0.0, std::nullopt, 1.0 / w);
}

DriftSpec DriftSpec::bessel(double delta) {
  if (!std::isfinite(delta)) throw ValidationError("bessel drift requires a finite delta");
  const double D = 0.25 * (delta - 1.0) * (delta - 3.0);
  const bool upper = delta >= 2.0;
  return make(Family::F3, 0.0, 0.0, 0.0, D, upper ? 1.0 : 0.0, upper ? 0.0 : 1.0,
              std::nullopt, 1.0);
}

DriftSpec DriftSpec::ou(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw ValidationError("ou drift requires lambda > 0");
  }
  return make(Family::F2, lambda * lambda, 0.0, -0.5 * lambda, 0.0, 1.0, 0.0);
}

DriftSpec DriftSpec::radial_ou(double omega, double gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw ValidationError("radial_ou drift requires gamma > 0");
  }
  if (!(omega >= 0.0) || !std::isfinite(omega)) {
    throw ValidationError("radial_ou drift requires omega >= 0");
  }
  return make(Family::F4, gamma * gamma, 0.0, -gamma * (omega + 1.0),
              omega * omega - 0.25, 1.0, 0.0, std::nullopt, 1.0 / std::sqrt(gamma));
}

void DriftSpec::require_in_domain(double x) const {
  if (!std::isfinite(x) || !domain_.contains(x)) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "x = %.17g is outside the drift domain (%.17g, %.17g)",
                  x, domain_.lo, domain_.hi);
    throw DomainError(buf);
  }
}

LogSigned DriftSpec::theta(double x) const {
  require_in_domain(x);
  return FamiliesImpl::theta(*this, x);
}

LogSigned DriftSpec::theta_prime(double x) const {
  require_in_domain(x);
  return FamiliesImpl::theta_prime(*this, x);
}

double DriftSpec::drift_mu(double x) const {
  require_in_domain(x);
  return ls_ratio(FamiliesImpl::theta_prime(*this, x), FamiliesImpl::theta(*this, x));
}

double DriftSpec::drift_mu_prime(double x) const {
  const double m = drift_mu(x);
  return FamiliesImpl::rhs_effective(*this, x) - m * m;
}

double DriftSpec::ricatti_rhs(double x) const {
  return family_rhs(family_, a_, b_, c_, d_, x);
}

std::string DriftSpec::to_json() const {
  nlohmann::json j;
  j["family"] = family_name(family_);
  j["A"] = a_;
  j["B"] = b_;
  j["C"] = c_;
  j["D"] = d_;
  j["c1"] = c1_;
  j["c2"] = c2_;
  nlohmann::json dom = nlohmann::json::array();
  dom.push_back(std::isfinite(domain_.lo) ? nlohmann::json(domain_.lo) : nlohmann::json());
  dom.push_back(std::isfinite(domain_.hi) ? nlohmann::json(domain_.hi) : nlohmann::json());
  j["domain"] = dom;
  j["anchor"] = anchor_;
  return j.dump();
}

DriftSpec DriftSpec::from_json(const std::string& text) {
  try {
    const nlohmann::json j = nlohmann::json::parse(text);
    const Family fam = family_from_name(j.at("family").get<std::string>());
    const double A = j.at("A").get<double>();
    const double B = j.at("B").get<double>();
    const double C = j.at("C").get<double>();
    const double D = j.at("D").get<double>();
    const double c1 = j.at("c1").get<double>();
    const double c2 = j.at("c2").get<double>();
    std::optional<Interval> dom;
    if (j.contains("domain") && !j.at("domain").is_null()) {
      const auto& d = j.at("domain");
      if (!d.is_array() || d.size() != 2) {
        throw ValidationError("drift-spec JSON: domain must be a [lo, hi] pair");
      }
      Interval iv;
      if (!d.at(0).is_null()) iv.lo = d.at(0).get<double>();
      if (!d.at(1).is_null()) iv.hi = d.at(1).get<double>();
      dom = iv;
    }
    std::optional<double> anc;
    if (j.contains("anchor") && !j.at("anchor").is_null()) {
      anc = j.at("anchor").get<double>();
    }
    return make(fam, A, B, C, D, c1, c2, dom, anc);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("invalid drift-spec JSON: ") + e.what());
  }
}

// ---- free functions ----------------------------------------------------------

double verify_ricatti(const DriftSpec& spec, const std::vector<double>& grid) {
  const Interval& dom = spec.domain();
  double worst = 0.0;
  for (double x : grid) {
    if (!dom.contains(x)) {
      throw DomainError("verify_ricatti: grid point outside the spec domain");
    }
    double h = 1e-5 * std::max(1.0, std::fabs(x));
    if (std::isfinite(dom.lo)) h = std::min(h, 0.45 * (x - dom.lo));
    if (std::isfinite(dom.hi)) h = std::min(h, 0.45 * (dom.hi - x));
    const double mup = (spec.drift_mu(x + h) - spec.drift_mu(x - h)) / (2.0 * h);
    const double m = spec.drift_mu(x);
    worst = std::max(worst, std::fabs(mup + m * m - spec.ricatti_rhs(x)));
  }
  return worst;
}

double verify_ricatti(const std::function<double(double)>& mu, Family family,
                      double A, double B, double C, double D,
                      const std::vector<double>& grid) {
  double worst = 0.0;
  for (double x : grid) {
    const double h = 1e-5 * std::max(1.0, std::fabs(x));
    const double mup = (mu(x + h) - mu(x - h)) / (2.0 * h);
    const double m = mu(x);
    worst = std::max(worst, std::fabs(mup + m * m - family_rhs(family, A, B, C, D, x)));
  }
  return worst;
}

double lamperti_forward(const LampertiSpec& spec, double u) {
  if (!std::isfinite(u)) throw DomainError("lamperti_forward: u must be finite");
  if (u < spec.u_lo || u > spec.u_hi) {
    throw DomainError("lamperti_forward: u lies outside (u_lo, u_hi)");
  }
  if (u == spec.y0) return 0.0;
  auto inv_sigma = [&spec](double v) {
    const double s = spec.sigma_fn(v);
    if (!(s > 0.0) || !std::isfinite(s)) {
      throw DomainError("lamperti transform: sigma must be positive and finite");
    }
    return 1.0 / s;
  };
  boost::math::quadrature::tanh_sinh<double> integrator;
  const double lo = std::min(u, spec.y0), hi = std::max(u, spec.y0);
  double result;
  try {
    result = integrator.integrate(inv_sigma, lo, hi, 1e-10);
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw NumericError(std::string("lamperti quadrature failed: ") + e.what());
  }
  return u > spec.y0 ? result : -result;
}

double lamperti_inverse(const LampertiSpec& spec, double x) {
  if (!std::isfinite(x)) throw DomainError("lamperti_inverse: x must be finite");
  if (x == 0.0) return spec.y0;
  const double dir = x > 0.0 ? 1.0 : -1.0;
  const double wall = dir > 0.0 ? spec.u_hi : spec.u_lo;
  double cur = spec.y0;
  double f_cur = 0.0;
  double step = 0.5 * std::max(1.0, std::fabs(spec.y0));
  double bracket_end = 0.0, f_end = 0.0;
  bool bracketed = false;
  for (int it = 0; it < 220 && !bracketed; ++it) {
    double next;
    if (std::isfinite(wall)) {
      next = cur + dir * std::min(step, 0.9 * std::fabs(wall - cur));
    } else {
      next = cur + dir * step;
    }
    if (next == cur) break;
    const double fn = lamperti_forward(spec, next);
    if (dir > 0.0 ? fn >= x : fn <= x) {
      bracket_end = next;
      f_end = fn;
      bracketed = true;
    } else {
      cur = next;
      f_cur = fn;
      step *= 2.0;
    }
  }
  if (!bracketed) {
    throw DomainError("lamperti_inverse: x lies outside the image of the coordinate change");
  }
  auto g = [&spec, x](double u) { return lamperti_forward(spec, u) - x; };
  boost::math::tools::eps_tolerance<double> tol(50);
  std::uintmax_t max_it = 200;
  const double a = std::min(cur, bracket_end), b = std::max(cur, bracket_end);
  const double fa = (a == cur ? f_cur : f_end) - x;
  const double fb = (b == cur ? f_cur : f_end) - x;
  const auto r = boost::math::tools::toms748_solve(g, a, b, fa, fb, tol, max_it);
  return 0.5 * (r.first + r.second);
}

double lamperti_drift(const LampertiSpec& spec, double x) {
  const double u = lamperti_inverse(spec, x);
  const double s = spec.sigma_fn(u);
  if (!(s > 0.0) || !std::isfinite(s)) {
    throw DomainError("lamperti transform: sigma must be positive and finite");
  }
  const double h = 1e-6 * std::max(1.0, std::fabs(u));
  double ha = h, hb = h;
  if (std::isfinite(spec.u_lo)) ha = std::min(ha, 0.45 * (u - spec.u_lo));
  if (std::isfinite(spec.u_hi)) hb = std::min(hb, 0.45 * (spec.u_hi - u));
  const double sp = (spec.sigma_fn(u + hb) - spec.sigma_fn(u - ha)) / (ha + hb);
  return spec.nu_fn(u) / s - 0.5 * sp;
}

std::pair<double, double> pearson_symmetric_params(double r, double p, double q) {
  if (!(r > 0.0)) throw DomainError("pearson_symmetric_params requires r > 0");
  if (!(4.0 * r * q - p * p > 0.0)) {
    throw DomainError("pearson_symmetric_params requires 4rq - p^2 > 0");
  }
  return {0.75 * r, 0.75 * p};
}

}  // namespace fpt
