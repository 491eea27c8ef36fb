#include "lcembed/cohn.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace lcembed::cohn {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTwoPi = 6.283185307179586476925286766559;

struct Sample {
  Complex point;
  double value = 0.0;
};

void keep_top(std::vector<Sample>& top, const Sample& s, size_t n = 3) {
  top.push_back(s);
  std::sort(top.begin(), top.end(),
            [](const Sample& a, const Sample& b) { return a.value > b.value; });
  if (top.size() > n) top.resize(n);
}

std::vector<Complex> witnesses_of(const std::vector<Sample>& top) {
  std::vector<Complex> w;
  for (const auto& s : top) w.push_back(s.point);
  return w;
}

struct SupportScale {
  double scale = 0.0;
  bool unbounded = false;
};

SupportScale support_scale(const measure::PositiveMeasure& mu) {
  SupportScale s;
  for (const auto& a : mu.atoms)
    s.scale = std::max(s.scale, std::abs(a.location));
  for (const auto& p : mu.radial) {
    if (std::isinf(p.x1))
      s.unbounded = true;
    else
      s.scale = std::max(s.scale, p.x1);
  }
  for (const auto& p : mu.planar)
    s.scale = std::max({s.scale, p.re1, std::abs(p.im0), std::abs(p.im1)});
  return s;
}

std::vector<double> log_grid(double lo, double hi, int per_decade) {
  std::vector<double> g;
  if (!(hi > lo) || !(lo > 0)) {
    if (lo > 0) g.push_back(lo);
    return g;
  }
  const int n = std::max(2, (int)std::ceil(std::log10(hi / lo) * per_decade));
  for (int i = 0; i <= n; ++i)
    g.push_back(lo * std::pow(hi / lo, (double)i / n));
  return g;
}

// Doubles the grid density until the running sup moves < 0.1% twice in a row.
// Anchor points (likely maxima such as zero scales) enter every pass, so a
// corner maximum sitting exactly on an anchor stabilizes immediately.
struct SupScan {
  double sup = 0.0;
  std::vector<Sample> top;
  bool stable = false;
};

template <class Eval>
SupScan scan_log_grid(double lo, double hi, Eval&& f,
                      const std::vector<double>& anchors = {}) {
  SupScan s;
  double prev = -1.0;
  int calm = 0;
  for (int pd : {12, 24, 48, 96, 192, 384}) {
    auto grid = log_grid(lo, hi, pd);
    for (double a : anchors)
      if (a >= lo && a <= hi) grid.push_back(a);
    for (double w : grid) {
      const double v = f(w);
      s.sup = std::max(s.sup, v);
      keep_top(s.top, {Complex{w, 0.0}, v});
    }
    if (prev >= 0 &&
        std::abs(s.sup - prev) <= 1e-3 * std::max(s.sup, 1e-300))
      ++calm;
    else
      calm = 0;
    prev = s.sup;
    if (calm >= 2) {
      s.stable = true;
      break;
    }
  }
  return s;
}

// Abscissa scales where the criterion integrand tends to peak: zero moduli
// of the inner factor and the measure's atom scales.
std::vector<double> scan_anchors(const inner::SpectrumInfo& info,
                                 const measure::PositiveMeasure& mu) {
  std::vector<double> a;
  for (const auto& z : info.zero_points) {
    a.push_back(std::abs(z));
    if (z.real() > 0) a.push_back(z.real());
  }
  for (const auto& at : mu.atoms) {
    const double r = std::abs(at.location);
    if (r > 0) a.push_back(r);
  }
  return a;
}

void reject_mass_on_spectrum(const measure::PositiveMeasure& mu,
                             const inner::SpectrumInfo& info,
                             bool minus_one_is_boundary_point) {
  for (const auto& a : mu.atoms) {
    if (a.mass == 0) continue;
    const double tol = 1e-14 * (1.0 + std::abs(a.location));
    if (info.dist_to(a.location) <= tol)
      throw HypothesisError(
          "measure places mass on the spectrum of the inner function");
    if (minus_one_is_boundary_point && info.contains_minus_one &&
        std::abs(a.location - Complex{-1.0, 0.0}) <= tol)
      throw HypothesisError(
          "measure places mass on the spectrum of the inner function");
  }
}

}  // namespace

double disc_h_function(const measure::PositiveMeasure& rho, Complex xi) {
  if (rho.domain != measure::Domain::Disc)
    throw InputError("disc_h_function expects a disc measure");
  if (!(std::abs(xi) < 1))
    throw InputError("disc_h_function needs |xi| < 1");
  const double num = 1.0 - std::norm(xi);
  auto k = [&xi, num](Complex z) {
    return Complex{num / std::norm(1.0 - std::conj(xi) * z), 0.0};
  };
  auto r = measure::integrate_kernel(rho, k, 1e-10);
  return r.converged ? r.real() : kInf;
}

CriterionReport cohn_test_disc(const measure::PositiveMeasure& rho,
                               const inner::InnerFunction& phi) {
  measure::validate(rho);
  inner::validate(phi);
  if (rho.domain != measure::Domain::Disc)
    throw InputError("cohn_test_disc expects a disc measure");
  if (phi.domain != measure::Domain::Disc)
    throw InputError("cohn_test_disc expects a disc inner function");
  const auto info = inner::spectrum(phi);
  reject_mass_on_spectrum(rho, info, true);

  std::vector<Complex> dirs;
  dirs.push_back(Complex{1.0, 0.0});
  dirs.push_back(Complex{-1.0, 0.0});
  for (const auto& z : info.zero_points)
    if (std::abs(z) > 0) dirs.push_back(z / std::abs(z));

  CriterionReport rep;
  rep.criterion = "disc-kernel";
  const int kRings = 30;
  std::vector<Sample> top;
  std::vector<double> ring_sup(kRings + 1, 0.0);
  auto probe = [&](Complex xi, int ring) {
    const double v =
        disc_h_function(rho, xi) * (1.0 - std::abs(inner::eval(phi, xi)));
    ring_sup[ring] = std::max(ring_sup[ring], v);
    keep_top(top, {xi, v});
    return v;
  };

  double sup = 0.0, prev = -1.0;
  int calm = 0;
  bool stable = false;
  for (int mult = 1; mult <= 8; mult *= 2) {
    for (int j = 0; j <= kRings; ++j) {
      const double r = 1.0 - std::pow(2.0, -j);
      const int n_angles = (j <= 4 ? 32 : 8) * mult;
      for (int a = 0; a < n_angles; ++a) {
        const double t = kTwoPi * a / n_angles;
        sup = std::max(sup, probe(r * Complex{std::cos(t), std::sin(t)}, j));
      }
      if (j > 0)
        for (const auto& d : dirs) sup = std::max(sup, probe(r * d, j));
    }
    if (prev >= 0 && std::abs(sup - prev) <= 1e-3 * std::max(sup, 1e-300))
      ++calm;
    else
      calm = 0;
    prev = sup;
    if (calm >= 2) {
      stable = true;
      break;
    }
  }
  rep.sup_value = sup;
  rep.witness_points = witnesses_of(top);
  rep.tested_range = "hyperbolic rings up to 1 - 2^-30, rays to the spectrum";

  HypothesisCheck conn;
  conn.name = "sublevel sets connected";
  if (phi.zeros.empty() && phi.has_singular()) {
    conn.passed = true;
    conn.note = "symbolic: pure singular factor";
  } else if (info.zero_points.size() == 1 && !phi.has_singular()) {
    conn.passed = true;
    conn.note = "symbolic: single zero location";
  } else {
    conn.passed = false;
    conn.note = "unchecked";
  }
  rep.hypothesis_checks.push_back(conn);

  // growth at the sampling boundary means the sup was not captured
  double early = 0.0, late = 0.0;
  for (int j = 0; j <= kRings; ++j) {
    if (j <= kRings - 4)
      early = std::max(early, ring_sup[j]);
    else
      late = std::max(late, ring_sup[j]);
  }
  const bool captured = late <= std::max(early, 1e-300) * 1.05 || late == 0.0;
  if (!conn.passed || !captured || !stable)
    rep.verdict = Verdict::Inconclusive;
  else
    rep.verdict = std::isfinite(sup) ? Verdict::Bounded : Verdict::Unbounded;
  return rep;
}

CriterionReport radial_test_disc(const measure::PositiveMeasure& rho,
                                 const inner::InnerFunction& phi) {
  measure::validate(rho);
  inner::validate(phi);
  if (rho.domain != measure::Domain::Disc)
    throw InputError("radial_test_disc expects a disc measure");
  if (phi.domain != measure::Domain::Disc)
    throw InputError("radial_test_disc expects a disc inner function");
  for (const auto& a : rho.atoms)
    if (a.location.imag() != 0.0)
      throw InputError("radial_test_disc needs a measure on the real diameter");

  CriterionReport rep;
  rep.criterion = "disc-radial";
  if (phi.is_trivial()) {
    rep.verdict = Verdict::Bounded;
    rep.tested_range = "empty: |phi| = 1 everywhere";
    return rep;
  }

  const auto info = inner::spectrum(phi);
  double d_plus = info.dist_to(Complex{1.0, 0.0});
  double d_minus = info.dist_to(Complex{-1.0, 0.0});
  if (info.contains_minus_one) {
    d_minus = 0.0;
    d_plus = std::min(d_plus, 2.0);
  }
  const double r_hi =
      std::isinf(d_plus) ? 1.0 - 1e-9 : std::min(1.0 - 1e-12, 1.0 - d_plus / 2);
  const double r_lo = std::isinf(d_minus)
                          ? -1.0 + 1e-9
                          : std::max(-1.0 + 1e-12, -1.0 + d_minus / 2);
  {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "r in [%.6g, %.6g]", r_lo, r_hi);
    rep.tested_range = buf;
  }
  if (!(r_hi > r_lo)) {
    rep.verdict = Verdict::Bounded;
    return rep;
  }

  const double total = [&rho]() {
    double m = rho.total_atom_mass();
    for (const auto& p : rho.radial)
      m += measure::radial_piece_mass(p, 0, 1.0 + 1e-15);
    return m;
  }();

  auto value_at = [&](double r) {
    double head = 0.0;  // int over [-1, r) of d rho(t)/(1-t)^2
    double below = 0.0;
    for (const auto& a : rho.atoms) {
      const double t = a.location.real();
      if (t < r) {
        head += a.mass / ((1.0 - t) * (1.0 - t));
        below += a.mass;
      }
    }
    for (const auto& p : rho.radial) {
      below += measure::radial_piece_mass(p, 0, r);
      if (p.x0 < r) {
        measure::PositiveMeasure clip;
        clip.domain = measure::Domain::Disc;
        measure::RadialPiece q = p;
        q.x1 = std::min(p.x1, r);
        clip.radial.push_back(q);
        auto res = measure::integrate_kernel(
            clip,
            [](Complex t) {
              const double d = 1.0 - t.real();
              return Complex{1.0 / (d * d), 0.0};
            },
            1e-10);
        head += res.real();
      }
    }
    const double tail = std::max(0.0, total - below);
    const double gap = 1.0 - std::abs(inner::eval(phi, Complex{r, 0.0}));
    return gap * ((1.0 - r) * head + tail / (1.0 - r));
  };

  std::vector<Sample> top;
  double sup = 0.0, prev = -1.0;
  int calm = 0;
  bool stable = false;
  for (int base = 48; base <= 384; base *= 2) {
    for (int i = 0; i <= base; ++i) {
      const double r = r_lo + (r_hi - r_lo) * i / base;
      const double v = value_at(r);
      sup = std::max(sup, v);
      keep_top(top, {Complex{r, 0.0}, v});
    }
    for (int j = 1; j <= 40; ++j) {
      const double step = (r_hi - r_lo) * std::pow(2.0, -j);
      for (double r : {r_hi - step, r_lo + step}) {
        const double v = value_at(r);
        sup = std::max(sup, v);
        keep_top(top, {Complex{r, 0.0}, v});
      }
    }
    if (prev >= 0 && std::abs(sup - prev) <= 1e-3 * std::max(sup, 1e-300))
      ++calm;
    else
      calm = 0;
    prev = sup;
    if (calm >= 2) {
      stable = true;
      break;
    }
  }
  rep.sup_value = sup;
  rep.witness_points = witnesses_of(top);
  if (!std::isfinite(sup))
    rep.verdict = Verdict::Unbounded;
  else
    rep.verdict = stable ? Verdict::Bounded : Verdict::Inconclusive;
  return rep;
}

double halfplane_kernel_integral(const measure::PositiveMeasure& mu, Complex w,
                                 double rel_tol) {
  if (!(w.real() > 0)) throw InputError("kernel integral needs Re w > 0");
  if (mu.domain == measure::Domain::Disc)
    throw InputError("kernel integral expects a half-plane or axis measure");
  const double x = w.real();
  const Complex wc = std::conj(w);
  auto k = [x, wc](Complex s) { return Complex{x / std::norm(wc + s), 0.0}; };
  auto r = measure::integrate_kernel(mu, k, rel_tol);
  return r.converged ? r.real() : kInf;
}

CriterionReport paley_wiener_test(const measure::PositiveMeasure& mu, double T) {
  measure::validate(mu);
  if (mu.domain == measure::Domain::Disc)
    throw InputError("paley_wiener_test expects a half-plane or axis measure");
  if (!(T > 0)) throw InputError("paley_wiener_test needs T > 0");

  CriterionReport rep;
  rep.criterion = "pw-window";
  const auto sc = support_scale(mu);
  const double hi = std::max({100.0, 100.0 / T, 10.0 * sc.scale});
  const double lo = std::min(1e-4, 0.01 / T);

  std::vector<Sample> top;
  double sup1 = 0.0, sup2 = 0.0, kernel_sup = 0.0;
  // per-edge decade maxima: growth into an edge means the sup may sit
  // outside the tested range; a plateau is fine
  double lo_edge = 0.0, lo_next = 0.0, hi_edge = 0.0, hi_next = 0.0;
  double prev = -1.0;
  int calm = 0;
  bool stable = false;
  for (int pd : {12, 24, 48, 96, 192}) {
    for (double w : log_grid(lo, hi, pd)) {
      const double h = halfplane_kernel_integral(mu, Complex{w, 0.0});
      const double f1 = h * (1.0 - std::exp(-T * w));
      const double f2 = h * w / (w + 1.0);
      sup1 = std::max(sup1, f1);
      sup2 = std::max(sup2, f2);
      kernel_sup = std::max(kernel_sup, h);
      keep_top(top, {Complex{w, 0.0}, f1});
      if (w <= lo * 10)
        lo_edge = std::max(lo_edge, f1);
      else if (w <= lo * 100)
        lo_next = std::max(lo_next, f1);
      if (w >= hi / 10)
        hi_edge = std::max(hi_edge, f1);
      else if (w >= hi / 100)
        hi_next = std::max(hi_next, f1);
    }
    if (prev >= 0 && std::abs(sup1 - prev) <= 1e-3 * std::max(sup1, 1e-300))
      ++calm;
    else
      calm = 0;
    prev = sup1;
    if (calm >= 2) {
      stable = true;
      break;
    }
  }
  // off-axis wedge |Im w| <= 10 Re w
  for (double x : log_grid(std::min(0.01, 1.0 / T),
                           std::max(10.0, sc.scale), 6)) {
    for (double slope : {-10.0, -3.0, -0.5, 0.5, 3.0, 10.0}) {
      const Complex w{x, slope * x};
      const double h = halfplane_kernel_integral(mu, w);
      const double f1 = h * (1.0 - std::exp(-T * x));
      sup1 = std::max(sup1, f1);
      keep_top(top, {w, f1});
    }
  }

  rep.sup_value = sup1;
  rep.aux_value = sup2;
  rep.aux_name = "two-term form";
  rep.extra_constants.push_back({"kernel sup", kernel_sup});
  if (sup2 > 0)
    rep.extra_constants.push_back({"window/two-term ratio", sup1 / sup2});
  rep.witness_points = witnesses_of(top);
  {
    char buf[128];
    std::snprintf(buf, sizeof(buf),
                  "Re w in [%.3g, %.3g] log grid + wedge |Im w| <= 10 Re w", lo,
                  hi);
    rep.tested_range = buf;
  }
  const bool grows_low = lo_edge > 1.01 * lo_next && lo_edge >= 0.5 * sup1;
  const bool grows_high =
      sc.unbounded && hi_edge > 1.01 * hi_next && hi_edge >= 0.5 * sup1;
  if (!std::isfinite(sup1))
    rep.verdict = Verdict::Unbounded;
  else if (grows_low || grows_high || !stable)
    rep.verdict = Verdict::Inconclusive;
  else
    rep.verdict = Verdict::Bounded;
  return rep;
}

namespace {

void reject_off_axis(const measure::PositiveMeasure& mu, const char* who) {
  for (const auto& a : mu.atoms)
    if (a.location.imag() != 0.0 || a.location.real() < 0)
      throw InputError(std::string(who) +
                       " needs a measure supported on the nonnegative axis");
  if (!mu.planar.empty())
    throw InputError(std::string(who) +
                     " needs a measure supported on the nonnegative axis");
}

}  // namespace

CriterionReport radial_test_halfplane(const measure::PositiveMeasure& mu,
                                      const inner::InnerFunction& theta) {
  measure::validate(mu);
  inner::validate(theta);
  if (theta.domain != measure::Domain::HalfPlane)
    throw InputError("radial_test_halfplane expects a half-plane inner function");
  reject_off_axis(mu, "radial_test_halfplane");

  CriterionReport rep;
  rep.criterion = "halfplane-radial";
  if (theta.is_trivial()) {
    rep.verdict = Verdict::Bounded;
    rep.tested_range = "empty: |theta| = 1 everywhere";
    return rep;
  }
  const auto info = inner::spectrum(theta);
  const auto sc = support_scale(mu);
  const double d0 = info.contains_infinity && info.zero_points.empty()
                        ? 1.0
                        : info.dist_to(Complex{0.0, 0.0});
  const double lo = std::min(d0 / 2, 1.0);
  double hi;
  if (!info.contains_infinity) {
    hi = 2.0 * info.sup_abs();
  } else {
    hi = 2.0 * std::max({info.sup_abs(), sc.scale, 1.0,
                         theta.has_singular() ? 10.0 / theta.singular_T : 0.0});
  }
  hi = std::max(hi, lo * 2);

  auto value_at = [&](double w) {
    const double h = halfplane_kernel_integral(mu, Complex{w, 0.0});
    return h * (1.0 - std::abs(inner::eval(theta, Complex{w, 0.0})));
  };
  auto scan = scan_log_grid(lo, hi, value_at, scan_anchors(info, mu));
  double sup = scan.sup;
  rep.witness_points = witnesses_of(scan.top);
  {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "w in [%.6g, %.6g]", lo, hi);
    rep.tested_range = buf;
  }

  bool tail_ok = true;
  if (info.contains_infinity) {
    HypothesisCheck tail;
    tail.name = "tail decay beyond the tested range";
    double prev = kInf;
    bool decaying = true;
    for (double m : {10.0, 100.0, 1000.0}) {
      const double v = value_at(hi * m);
      sup = std::max(sup, v);
      if (v > prev * 1.001) decaying = false;
      prev = v;
    }
    tail.passed = decaying;
    tail.note = "sampled";
    rep.hypothesis_checks.push_back(tail);
    tail_ok = decaying;
  }
  rep.sup_value = sup;
  if (!std::isfinite(sup))
    rep.verdict = Verdict::Unbounded;
  else if (!tail_ok || !scan.stable)
    rep.verdict = Verdict::Inconclusive;
  else
    rep.verdict = Verdict::Bounded;
  return rep;
}

CriterionReport sector_test(const measure::PositiveMeasure& mu,
                            const inner::InnerFunction& theta,
                            double half_angle) {
  measure::validate(mu);
  inner::validate(theta);
  if (theta.domain != measure::Domain::HalfPlane)
    throw InputError("sector_test expects a half-plane inner function");
  if (!(half_angle > 0) || !(half_angle < 1.5707963267948966))
    throw InputError("sector half-angle must lie in (0, pi/2)");
  if (mu.domain == measure::Domain::Disc)
    throw InputError("sector_test expects a half-plane or axis measure");
  const double tanha = std::tan(half_angle);
  for (const auto& a : mu.atoms) {
    if (std::abs(a.location.imag()) > tanha * a.location.real() + 1e-12)
      throw InputError("measure support leaves the sector");
  }
  for (const auto& p : mu.planar) {
    const double worst_im = std::max(std::abs(p.im0), std::abs(p.im1));
    if (worst_im > tanha * p.re0)
      throw InputError("measure support leaves the sector");
  }

  CriterionReport rep;
  rep.criterion = "sector";

  HypothesisCheck in_sector;
  in_sector.name = "support inside the sector";
  in_sector.passed = true;
  in_sector.note = "symbolic";
  rep.hypothesis_checks.push_back(in_sector);

  const auto info = inner::spectrum(theta);
  HypothesisCheck origin;
  origin.name = "origin off the spectrum";
  origin.passed = info.dist_to(Complex{0, 0}) > 0;
  origin.note = "symbolic";
  rep.hypothesis_checks.push_back(origin);

  const auto sc = support_scale(mu);
  const double d0 = info.zero_points.empty() ? 1.0 : info.dist_to(Complex{0, 0});
  const double lo = std::min(d0 / 2, 1.0);
  const double hi =
      2.0 * std::max({info.sup_abs(), sc.scale, 1.0,
                      theta.has_singular() ? 10.0 / theta.singular_T : 0.0});

  auto value_at = [&](double w) {
    const double h = halfplane_kernel_integral(mu, Complex{w, 0.0});
    return h * (1.0 - std::abs(inner::eval(theta, Complex{w, 0.0})));
  };

  HypothesisCheck away;
  away.name = "|theta| bounded away from 1 far out in the sector";
  if (theta.has_singular()) {
    // |theta(z)| <= exp(-T Re z) on the half-plane
    away.passed = true;
    away.note = "closed form: singular factor";
  } else {
    double max_mod = 0.0;
    for (double r : log_grid(std::max(hi / 2, lo), hi * 2, 8)) {
      for (double f : {-1.0, 0.0, 1.0}) {
        const Complex s{r, f * tanha * r};
        max_mod = std::max(max_mod, std::abs(inner::eval(theta, s)));
      }
    }
    if (max_mod <= 1.0 - 1e-6) {
      away.passed = true;
      away.note = "sampled, not a proof";
    } else {
      // |theta| -> 1 far out (finite Blaschke); fall back to certifying
      // that the criterion functional itself decays there
      double prev = kInf;
      bool decaying = true;
      for (double m : {10.0, 100.0, 1000.0}) {
        const double v = value_at(hi * m);
        if (v > prev * 1.001) decaying = false;
        prev = v;
      }
      away.passed = decaying;
      away.note = "sampled far-field decay of the criterion functional";
    }
  }
  rep.hypothesis_checks.push_back(away);
  auto scan =
      scan_log_grid(lo, std::max(hi, lo * 2), value_at, scan_anchors(info, mu));
  rep.sup_value = scan.sup;
  rep.witness_points = witnesses_of(scan.top);
  {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "w in [%.6g, %.6g], sector half-angle %.4g",
                  lo, std::max(hi, lo * 2), half_angle);
    rep.tested_range = buf;
  }
  bool all_ok = scan.stable;
  for (const auto& h : rep.hypothesis_checks) all_ok = all_ok && h.passed;
  if (!std::isfinite(scan.sup))
    rep.verdict = Verdict::Unbounded;
  else
    rep.verdict = all_ok ? Verdict::Bounded : Verdict::Inconclusive;
  return rep;
}

Complex ModelKernel::operator()(Complex z) const {
  const Complex ts = inner::eval(theta, s);
  return (1.0 - std::conj(ts) * inner::eval(theta, z)) /
         (kTwoPi * (z + std::conj(s)));
}

ModelKernel model_kernel(const inner::InnerFunction& theta, Complex s) {
  inner::validate(theta);
  if (theta.domain != measure::Domain::HalfPlane)
    throw InputError("model_kernel expects a half-plane inner function");
  if (!(s.real() > 0)) throw InputError("model_kernel needs Re s > 0");
  ModelKernel k;
  k.theta = theta;
  k.s = s;
  const double mod2 = std::norm(inner::eval(theta, s));
  k.norm_squared = (1.0 - mod2) / (2.0 * kTwoPi * s.real());
  k.time_side_norm_squared = kTwoPi * k.norm_squared;
  return k;
}

}  // namespace lcembed::cohn
