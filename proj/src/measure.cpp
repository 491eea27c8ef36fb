#include "lcembed/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace lcembed::measure {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool finite(double x) { return std::isfinite(x); }

}  // namespace

double PositiveMeasure::total_atom_mass() const {
  double m = 0;
  for (const auto& a : atoms) m += a.mass;
  return m;
}

void validate(const PositiveMeasure& mu) {
  for (const auto& a : mu.atoms) {
    if (!(a.mass >= 0) || !finite(a.mass))
      throw InputError("measure atom has negative or non-finite mass");
    if (!finite(a.location.real()) || !finite(a.location.imag()))
      throw InputError("measure atom location is not finite");
    switch (mu.domain) {
      case Domain::HalfPlane:
        if (a.location.real() < 0)
          throw InputError("half-plane atom with Re < 0");
        break;
      case Domain::Axis:
        if (a.location.real() < 0 || a.location.imag() != 0)
          throw InputError("axis atom off the nonnegative real axis");
        break;
      case Domain::Disc:
        if (std::abs(a.location) > 1 + 1e-15)
          throw InputError("disc atom outside the closed disc");
        break;
    }
  }
  for (const auto& p : mu.radial) {
    if (!(p.x0 >= 0) || !(p.x1 > p.x0))
      throw InputError("radial piece needs 0 <= x0 < x1");
    if (p.is_power()) {
      if (!(p.power.c >= 0) || !finite(p.power.c))
        throw InputError("radial piece has negative density coefficient");
      if (p.power.beta <= -1 && p.x0 <= 0)
        throw InputError("radial piece with beta <= -1 must start above 0");
    }
    if (mu.domain == Domain::Disc && p.x1 > 1 + 1e-15)
      throw InputError("disc radial piece leaves [0,1]");
  }
  if (!mu.planar.empty() && mu.domain != Domain::HalfPlane)
    throw InputError("planar pieces require the half-plane domain");
  for (const auto& p : mu.planar) {
    if (!(p.density >= 0) || !finite(p.density))
      throw InputError("planar piece has negative density");
    if (!(p.re1 > p.re0) || !(p.im1 > p.im0) || p.re0 < 0)
      throw InputError("planar piece rectangle is degenerate or leaves the domain");
  }
}

double radial_piece_mass(const RadialPiece& p, double lo, double hi) {
  lo = std::max(lo, p.x0);
  hi = std::min(hi, p.x1);
  if (!(hi > lo)) return 0.0;
  if (p.is_power()) {
    const double c = p.power.c;
    const double beta = p.power.beta;
    if (c == 0) return 0.0;
    if (beta == -1.0) {
      if (std::isinf(hi)) return kInf;
      return c * std::log(hi / lo);
    }
    const double e = beta + 1.0;
    if (std::isinf(hi)) return e > 0 ? kInf : -c * std::pow(lo, e) / e;
    return c * (std::pow(hi, e) - std::pow(lo, e)) / e;
  }
  if (std::isinf(hi)) {
    auto r = quad::integrate_to_infinity(
        [&p](double x) { return Complex{p.tabulated(x), 0.0}; }, lo, 1e-10);
    return r.converged ? r.real() : kInf;
  }
  return quad::integrate_real(p.tabulated, lo, hi, 1e-10).real();
}

double square_mass(const PositiveMeasure& mu, const CarlesonSquare& q) {
  if (!(q.h > 0)) throw InputError("Carleson square needs h > 0");
  if (mu.domain == Domain::Disc)
    throw InputError("square_mass expects a half-plane or axis measure");
  const double ylo = q.a - q.h / 2, yhi = q.a + q.h / 2;
  double m = 0;
  for (const auto& a : mu.atoms) {
    if (a.location.real() <= q.h && a.location.imag() >= ylo &&
        a.location.imag() <= yhi)
      m += a.mass;
  }
  if (ylo <= 0 && 0 <= yhi) {
    for (const auto& p : mu.radial) m += radial_piece_mass(p, 0.0, q.h);
  }
  for (const auto& p : mu.planar) {
    const double w = std::min(p.re1, q.h) - std::max(p.re0, 0.0);
    const double v = std::min(p.im1, yhi) - std::max(p.im0, ylo);
    if (w > 0 && v > 0) m += p.density * w * v;
  }
  return m;
}

double interval_mass(const PositiveMeasure& mu, double x) {
  if (mu.domain != Domain::Axis)
    throw InputError("interval_mass expects an axis measure");
  if (!(x >= 0)) throw InputError("interval_mass needs x >= 0");
  double m = 0;
  for (const auto& a : mu.atoms)
    if (a.location.real() <= x) m += a.mass;
  for (const auto& p : mu.radial) m += radial_piece_mass(p, 0.0, x);
  return m;
}

namespace {

// One radial power piece against a kernel. The substitution x = u^(1/e),
// e = beta+1, turns c x^beta dx into c/e du exactly, absorbing an endpoint
// singularity at 0.
quad::Result integrate_power_piece(const RadialPiece& p, double lo, double hi,
                                   const std::function<Complex(Complex)>& k,
                                   double rel_tol) {
  const double c = p.power.c;
  const double beta = p.power.beta;
  if (c == 0) return {Complex{0, 0}, 0, true};
  if (beta > -1.0 && beta != 0.0) {
    const double e = beta + 1.0;
    auto g = [&k, c, e](double u) {
      return (c / e) * k(Complex{std::pow(u, 1.0 / e), 0.0});
    };
    return quad::integrate(g, std::pow(lo, e), std::pow(hi, e), rel_tol);
  }
  auto g = [&k, c, beta](double x) {
    const double d = beta == 0.0 ? c : c * std::pow(x, beta);
    return d * k(Complex{x, 0.0});
  };
  return quad::integrate(g, lo, hi, rel_tol);
}

quad::Result integrate_radial_piece(const RadialPiece& p,
                                    const std::function<Complex(Complex)>& k,
                                    double rel_tol) {
  if (!p.is_power()) {
    auto g = [&p, &k](double x) { return p.tabulated(x) * k(Complex{x, 0.0}); };
    if (std::isinf(p.x1))
      return quad::integrate_to_infinity(g, p.x0, rel_tol);
    return quad::integrate(g, p.x0, p.x1, rel_tol);
  }
  if (!std::isinf(p.x1)) return integrate_power_piece(p, p.x0, p.x1, k, rel_tol);
  const double split = std::max(1.0, 2.0 * p.x0);
  quad::Result head = integrate_power_piece(p, p.x0, split, k, rel_tol);
  const double c = p.power.c, beta = p.power.beta;
  auto tail_g = [&k, c, beta](double u) {
    return c * std::pow(u, -beta - 2.0) * k(Complex{1.0 / u, 0.0});
  };
  quad::Result tail = quad::integrate(tail_g, 0.0, 1.0 / split, rel_tol);
  return {head.value + tail.value, head.error + tail.error,
          head.converged && tail.converged};
}

quad::Result integrate_planar_piece(const PlanarPiece& p,
                                    const std::function<Complex(Complex)>& k,
                                    double rel_tol) {
  double inner_err = 0;
  bool inner_ok = true;
  auto outer = [&](double x) {
    auto r = quad::integrate(
        [&k, x](double y) { return k(Complex{x, y}); }, p.im0, p.im1,
        rel_tol * 0.25);
    inner_err = std::max(inner_err, r.error);
    inner_ok = inner_ok && r.converged;
    return r.value;
  };
  quad::Result r = quad::integrate(outer, p.re0, p.re1, rel_tol);
  r.value *= p.density;
  r.error = (r.error + inner_err * (p.re1 - p.re0)) * p.density;
  r.converged = r.converged && inner_ok;
  return r;
}

}  // namespace

quad::Result integrate_kernel(const PositiveMeasure& mu,
                              const std::function<Complex(Complex)>& kernel,
                              double rel_tol) {
  quad::Result total;
  for (const auto& a : mu.atoms) total.value += a.mass * kernel(a.location);
  for (const auto& p : mu.radial) {
    auto r = integrate_radial_piece(p, kernel, rel_tol);
    total.value += r.value;
    total.error += r.error;
    total.converged = total.converged && r.converged;
  }
  for (const auto& p : mu.planar) {
    auto r = integrate_planar_piece(p, kernel, rel_tol);
    total.value += r.value;
    total.error += r.error;
    total.converged = total.converged && r.converged;
  }
  return total;
}

namespace {

struct RatioEval {
  double ratio;
  bool infinite;
};

RatioEval eval_square_ratio(
    const PositiveMeasure& mu,
    const std::function<double(const CarlesonSquare&)>& nu,
    const CarlesonSquare& q) {
  const double num = square_mass(mu, q);
  const double den = nu(q);
  if (den <= 0) {
    if (num > 0) return {kInf, true};
    return {0.0, false};
  }
  return {num / den, false};
}

void record(std::vector<SquareRatio>& wit, const CarlesonSquare& q, double r) {
  wit.push_back({q, r});
  std::sort(wit.begin(), wit.end(),
            [](const SquareRatio& a, const SquareRatio& b) {
              return a.ratio > b.ratio;
            });
  if (wit.size() > 3) wit.resize(3);
}

std::vector<double> atom_feature_scales(const PositiveMeasure& mu) {
  std::vector<double> s;
  for (const auto& a : mu.atoms) {
    s.push_back(a.location.real());
    s.push_back(std::abs(a.location.imag()));
  }
  for (const auto& p : mu.radial) {
    s.push_back(p.x0);
    if (!std::isinf(p.x1)) s.push_back(p.x1);
  }
  for (const auto& p : mu.planar) {
    s.push_back(p.re1);
    s.push_back(std::abs(p.im0));
    s.push_back(std::abs(p.im1));
  }
  return s;
}

CarlesonSupResult carleson_sup_atomic(
    const PositiveMeasure& mu,
    const std::function<double(const CarlesonSquare&)>& nu, double h_min) {
  CarlesonSupResult res;
  res.exact = true;
  std::set<double> centers, sides;
  double ymin = kInf, ymax = -kInf;
  for (const auto& a : mu.atoms) {
    const double y = a.location.imag();
    centers.insert(y);
    ymin = std::min(ymin, y);
    ymax = std::max(ymax, y);
    if (a.location.real() > 0) sides.insert(a.location.real());
  }
  for (const auto& a : mu.atoms)
    for (const auto& b : mu.atoms) {
      centers.insert(0.5 * (a.location.imag() + b.location.imag()));
      const double gap = std::abs(a.location.imag() - b.location.imag());
      if (gap > 0) sides.insert(gap);
    }
  if (h_min > 0) sides.insert(h_min);
  if (sides.empty()) sides.insert(1.0);
  // minimal square covering every atom at once
  double hall = std::max(h_min, ymax - ymin);
  for (const auto& a : mu.atoms) hall = std::max(hall, a.location.real());
  if (hall > 0) sides.insert(hall);
  if (!mu.atoms.empty()) centers.insert(0.5 * (ymin + ymax));

  for (double a : centers)
    for (double h : sides) {
      if (h < h_min) continue;
      CarlesonSquare q{a, h};
      RatioEval e = eval_square_ratio(mu, nu, q);
      if (e.infinite) {
        res.sup = kInf;
        res.finite = false;
        res.witnesses = {{q, kInf}};
        return res;
      }
      if (e.ratio > res.sup) res.sup = e.ratio;
      record(res.witnesses, q, e.ratio);
    }

  // shrinking squares against an atom sitting on the boundary axis
  if (h_min == 0) {
    for (const auto& a : mu.atoms) {
      if (a.location.real() == 0 && a.mass > 0) {
        double prev = 0;
        bool growing = true;
        for (double h : {1e-3, 1e-6, 1e-9}) {
          RatioEval e =
              eval_square_ratio(mu, nu, CarlesonSquare{a.location.imag(), h});
          if (e.infinite) {
            res.sup = kInf;
            res.finite = false;
            return res;
          }
          growing = growing && (prev == 0 || e.ratio > 10 * prev);
          prev = e.ratio;
          if (e.ratio > res.sup) res.sup = e.ratio;
        }
        if (growing && prev > res.sup * 0.5) {
          res.finite = false;
          res.sup = kInf;
          res.growth_exponent = 1.0;
          return res;
        }
      }
    }
  }
  res.certified_lower_bound = res.sup;
  return res;
}

}  // namespace

CarlesonSupResult carleson_sup(
    const PositiveMeasure& mu,
    const std::function<double(const CarlesonSquare&)>& nu_square_mass,
    double h_min) {
  validate(mu);
  if (h_min < 0) throw InputError("carleson_sup needs h_min >= 0");

  CarlesonSupResult res;
  if (mu.purely_atomic()) {
    if (mu.atoms.empty()) {
      res.exact = true;
      return res;
    }
    res = carleson_sup_atomic(mu, nu_square_mass, h_min);
    if (!res.finite) return res;
  } else {
    // multiscale grid seeded with feature scales, then local refinement
    std::vector<double> feats = atom_feature_scales(mu);
    double max_scale = h_min > 0 ? h_min : 1.0;
    for (double f : feats) max_scale = std::max(max_scale, f);
    const double h_lo = h_min > 0 ? h_min : 1e-6 * max_scale;
    const double h_hi = 4.0 * max_scale;

    std::set<double> centers{0.0}, sides;
    for (const auto& a : mu.atoms) centers.insert(a.location.imag());
    for (const auto& a : mu.atoms)
      for (const auto& b : mu.atoms)
        centers.insert(0.5 * (a.location.imag() + b.location.imag()));
    for (const auto& p : mu.planar) centers.insert(0.5 * (p.im0 + p.im1));
    for (double f : feats)
      if (f >= h_lo) sides.insert(f);
    const int per_decade = 16;
    const double decades = std::log10(h_hi / h_lo);
    const int steps = std::max(1, (int)std::ceil(decades * per_decade));
    for (int i = 0; i <= steps; ++i)
      sides.insert(h_lo * std::pow(h_hi / h_lo, (double)i / steps));

    CarlesonSquare best{0.0, std::max(h_min, 1.0)};
    for (double a : centers)
      for (double h : sides) {
        if (h < h_min || h <= 0) continue;
        CarlesonSquare q{a, h};
        RatioEval e = eval_square_ratio(mu, nu_square_mass, q);
        if (e.infinite) {
          res.sup = kInf;
          res.finite = false;
          res.witnesses = {{q, kInf}};
          return res;
        }
        if (e.ratio > res.sup) {
          res.sup = e.ratio;
          best = q;
        }
        record(res.witnesses, q, e.ratio);
      }
    // dyadic local refinement around the best square
    double rad_a = best.h, rad_l = std::log(2.0);
    for (int round = 0; round < 20; ++round) {
      const double before = res.sup;
      for (int ia = -2; ia <= 2; ++ia)
        for (int ih = -2; ih <= 2; ++ih) {
          const double a = best.a + rad_a * 0.5 * ia;
          const double h = best.h * std::exp(rad_l * 0.5 * ih);
          if (h < h_min || h <= 0) continue;
          CarlesonSquare q{a, h};
          RatioEval e = eval_square_ratio(mu, nu_square_mass, q);
          if (e.infinite) {
            res.sup = kInf;
            res.finite = false;
            res.witnesses = {{q, kInf}};
            return res;
          }
          if (e.ratio > res.sup) {
            res.sup = e.ratio;
            best = q;
            record(res.witnesses, q, e.ratio);
          }
        }
      rad_a *= 0.5;
      rad_l *= 0.5;
      if (round >= 2 && res.sup <= before * (1.0 + 1e-3)) break;
    }
    res.certified_lower_bound = res.sup;
  }

  // large-square growth probe
  std::vector<double> feats = atom_feature_scales(mu);
  double max_scale = std::max(h_min, 1.0);
  for (double f : feats) max_scale = std::max(max_scale, f);
  double r_prev = -1, h_prev = 0;
  bool increasing = true;
  double exponent = 0, r_last = 0;
  for (double mult : {1e2, 1e4, 1e6}) {
    const double h = 4.0 * max_scale * mult;
    RatioEval e = eval_square_ratio(mu, nu_square_mass, CarlesonSquare{0, h});
    if (e.infinite) {
      res.sup = kInf;
      res.finite = false;
      res.witnesses = {{CarlesonSquare{0, h}, kInf}};
      return res;
    }
    if (r_prev >= 0) {
      increasing = increasing && e.ratio > r_prev * 1.01;
      if (e.ratio > 0 && r_prev > 0)
        exponent = std::log(e.ratio / r_prev) / std::log(h / h_prev);
    }
    r_prev = e.ratio;
    h_prev = h;
    r_last = e.ratio;
  }
  if (increasing && r_last > res.sup) {
    res.finite = false;
    res.sup = kInf;
    res.growth_exponent = exponent;
  }
  return res;
}

namespace {

double ratio_at(const PositiveMeasure& mu, double q, double x) {
  return interval_mass(mu, x) / std::pow(x, q);
}

}  // namespace

RatioSupResult ratio_sup(const PositiveMeasure& mu, double q, double x_min) {
  validate(mu);
  if (mu.domain != Domain::Axis)
    throw InputError("ratio_sup expects an axis measure");
  if (!(q > 0)) throw InputError("ratio_sup needs a positive exponent");
  if (x_min < 0) throw InputError("ratio_sup needs x_min >= 0");

  RatioSupResult res;

  // behavior at the left end of the tested range
  if (x_min == 0) {
    double atom0 = 0;
    for (const auto& a : mu.atoms)
      if (a.location.real() == 0) atom0 += a.mass;
    if (atom0 > 0) {
      res.sup = kInf;
      res.finite = false;
      res.growth_exponent = q;
      res.witness_x = 0;
      return res;
    }
    double e0 = kInf;
    for (const auto& p : mu.radial)
      if (p.x0 == 0 && p.is_power() && p.power.c > 0)
        e0 = std::min(e0, p.power.beta + 1.0);
    if (e0 < q) {
      res.sup = kInf;
      res.finite = false;
      res.growth_exponent = q - e0;
      res.witness_x = 0;
      return res;
    }
    if (e0 == q) {
      for (const auto& p : mu.radial)
        if (p.x0 == 0 && p.is_power() && p.power.beta + 1.0 == e0) {
          const double lim = p.power.c / e0;
          if (lim > res.sup) {
            res.sup = lim;
            res.witness_x = 0;
          }
        }
    }
  }

  std::set<double> xs;
  auto add = [&](double x) {
    if (x > 0 && x >= x_min && std::isfinite(x)) xs.insert(x);
  };
  add(x_min);
  for (const auto& a : mu.atoms) add(std::max(a.location.real(), x_min));
  for (const auto& p : mu.radial) {
    add(p.x0);
    if (!std::isinf(p.x1)) add(p.x1);
    if (!p.is_power() || p.power.c == 0) continue;
    // stationary points of G(x)/x^q on the segments of the piece between
    // interior atoms, where G(x) = A + B x^e is smooth
    const double c = p.power.c, beta = p.power.beta;
    std::set<double> breaks{p.x0};
    for (const auto& a : mu.atoms) {
      const double t = a.location.real();
      if (t > p.x0 && (std::isinf(p.x1) || t < p.x1)) breaks.insert(t);
    }
    std::vector<double> seg(breaks.begin(), breaks.end());
    seg.push_back(std::isinf(p.x1) ? kInf : p.x1);
    for (size_t i = 0; i + 1 < seg.size(); ++i) {
      const double lo = seg[i], hi = seg[i + 1];
      const double prefix = interval_mass(mu, lo);
      if (beta == -1.0) {
        const double G_target = c / q;
        if (G_target > prefix) {
          const double x = lo * std::exp((G_target - prefix) / c);
          if (x > lo && x < hi) add(x);
        }
        continue;
      }
      const double e = beta + 1.0;
      const double B = c / e;
      const double A = prefix - B * std::pow(lo, e);
      if (e == q) continue;  // ratio monotone or constant on the segment
      const double rhs = q * A * e / (c * (e - q));
      if (rhs > 0) {
        const double x = std::pow(rhs, 1.0 / e);
        if (x > lo && x < hi) add(x);
      }
    }
  }

  for (double x : xs) {
    const double r = ratio_at(mu, q, x);
    if (r > res.sup) {
      res.sup = r;
      res.witness_x = x;
    }
  }

  // x -> infinity
  double E = -kInf, L = 0;
  for (const auto& p : mu.radial)
    if (std::isinf(p.x1) && p.is_power() && p.power.c > 0)
      E = std::max(E, p.power.beta + 1.0);
  if (E > q) {
    res.sup = kInf;
    res.finite = false;
    res.growth_exponent = E - q;
    res.witness_x = kInf;
    return res;
  }
  if (E == q) {
    for (const auto& p : mu.radial)
      if (std::isinf(p.x1) && p.is_power() && p.power.beta + 1.0 == E)
        L += p.power.c / E;
    if (L > res.sup) {
      res.sup = L;
      res.witness_x = kInf;
    }
  }
  return res;
}

}  // namespace lcembed::measure
