#include "lcembed/zen.hpp"

#include <cmath>
#include <limits>

namespace lcembed::zen {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = 3.1415926535897932384626433832795;
constexpr double kTwoPi = 2.0 * kPi;
}  // namespace

ZenBase ZenBase::hardy() {
  ZenBase b;
  b.atom_at_zero = 1.0;
  return b;
}

ZenBase ZenBase::bergman() {
  ZenBase b;
  measure::RadialPiece p;
  p.x0 = 0;
  p.x1 = kInf;
  p.power = {1.0, 0.0};
  b.density.push_back(p);
  return b;
}

ZenBase ZenBase::power(double alpha) {
  if (!(alpha > 0))
    throw InputError("power base needs alpha > 0 (alpha = 0 is the hardy base)");
  ZenBase b;
  measure::RadialPiece p;
  p.x0 = 0;
  p.x1 = kInf;
  p.power = {1.0, 2.0 * alpha - 1.0};
  b.density.push_back(p);
  return b;
}

void validate(const ZenBase& base) {
  if (!(base.atom_at_zero >= 0) || !std::isfinite(base.atom_at_zero))
    throw InputError("base measure atom at 0 must be a nonnegative number");
  bool supported_at_zero = base.atom_at_zero > 0;
  for (const auto& p : base.density) {
    if (!(p.x0 >= 0) || !(p.x1 > p.x0))
      throw InputError("base density piece needs 0 <= x0 < x1");
    if (p.is_power()) {
      if (!(p.power.c >= 0)) throw InputError("base density must be nonnegative");
      if (p.power.beta <= -1 && p.x0 <= 0)
        throw InputError("base density with beta <= -1 must start above 0");
      if (p.power.c > 0 && p.x0 == 0) supported_at_zero = true;
    } else if (p.x0 == 0) {
      supported_at_zero = true;
    }
  }
  if (!supported_at_zero)
    throw InputError("base measure must have 0 in its support");
}

double base_interval_mass(const ZenBase& base, double t) {
  double m = base.atom_at_zero;
  for (const auto& p : base.density) m += measure::radial_piece_mass(p, 0, t);
  return m;
}

Delta2Result delta2_ratio(const ZenBase& base, double t_lo, double t_hi,
                          int per_decade) {
  validate(base);
  Delta2Result res;
  if (base.density.empty()) {
    res = {1.0, true, true};
    return res;
  }
  // closed form: atom plus one whole-axis power piece
  if (base.density.size() == 1 && base.density[0].is_power() &&
      base.density[0].x0 == 0 && std::isinf(base.density[0].x1)) {
    const double e = base.density[0].power.beta + 1.0;
    res.sup = std::max(1.0, std::pow(2.0, e));
    res.satisfied = true;
    res.exact = true;
    return res;
  }
  const int n = std::max(2, (int)std::ceil(std::log10(t_hi / t_lo) * per_decade));
  double sup = 0, last_decade_sup = 0, prev_decade_sup = 0;
  const double t_mid_hi = t_hi / 10.0;
  for (int i = 0; i <= n; ++i) {
    const double t = t_lo * std::pow(t_hi / t_lo, (double)i / n);
    const double denom = base_interval_mass(base, t);
    if (denom <= 0) continue;
    const double r = base_interval_mass(base, 2 * t) / denom;
    sup = std::max(sup, r);
    if (t >= t_mid_hi)
      last_decade_sup = std::max(last_decade_sup, r);
    else if (t >= t_mid_hi / 10.0)
      prev_decade_sup = std::max(prev_decade_sup, r);
  }
  res.sup = sup;
  const bool trending_up =
      prev_decade_sup > 0 && last_decade_sup > prev_decade_sup * 1.05;
  res.satisfied = std::isfinite(sup) && sup < 1e8 && !trending_up;
  return res;
}

double ZenWeight::operator()(double t) const {
  if (!(t > 0)) throw InputError("zen weight defined for t > 0");
  switch (tag) {
    case Tag::Hardy:
      return kTwoPi * base.atom_at_zero;
    case Tag::Bergman:
      return kPi * base.density[0].power.c / t;
    case Tag::Power: {
      const double c = base.density[0].power.c;
      return kTwoPi * c * std::tgamma(2.0 * alpha) /
             std::pow(2.0 * t, 2.0 * alpha);
    }
    case Tag::Numeric:
      break;
  }
  double w = kTwoPi * base.atom_at_zero;
  for (const auto& p : base.density) {
    measure::PositiveMeasure one;
    one.domain = measure::Domain::Axis;
    one.radial.push_back(p);
    auto r = measure::integrate_kernel(
        one, [t](Complex r_) { return std::exp(-2.0 * t * r_); }, 1e-10);
    if (!r.converged)
      throw InputError("zen weight integral diverges for this base");
    w += kTwoPi * r.real();
  }
  return w;
}

ZenWeight weight_from_base(const ZenBase& base) {
  validate(base);
  ZenWeight w;
  w.base = base;
  if (base.density.empty()) {
    w.tag = ZenWeight::Tag::Hardy;
    w.closed_form = "2*pi*m0";
    return w;
  }
  if (base.atom_at_zero == 0 && base.density.size() == 1 &&
      base.density[0].is_power() && base.density[0].x0 == 0 &&
      std::isinf(base.density[0].x1)) {
    const double beta = base.density[0].power.beta;
    if (beta == 0.0) {
      w.tag = ZenWeight::Tag::Bergman;
      w.closed_form = "pi*c/t";
      return w;
    }
    if (beta > -1.0) {
      w.tag = ZenWeight::Tag::Power;
      w.alpha = (beta + 1.0) / 2.0;
      w.closed_form = "2*pi*c*Gamma(2a)/(2t)^(2a)";
      return w;
    }
  }
  w.tag = ZenWeight::Tag::Numeric;
  w.closed_form = "numeric-laplace";
  w(1.0);  // probe so a divergent base is reported at construction
  return w;
}

double product_square_mass(const ZenBase& base, const measure::CarlesonSquare& q) {
  if (!(q.h > 0)) throw InputError("Carleson square needs h > 0");
  return base_interval_mass(base, q.h) * q.h;
}

EmbeddingResult finite_time_embedding_test(const measure::PositiveMeasure& mu,
                                           const ZenBase& base, double T) {
  if (!(T > 0)) throw InputError("embedding test needs a positive horizon T");
  EmbeddingResult res;
  res.T = T;
  res.delta2 = delta2_ratio(base);
  if (!res.delta2.satisfied)
    throw HypothesisError(
        "base measure fails the doubling condition; embedding test aborted");
  auto sup = measure::carleson_sup(
      mu,
      [&base](const measure::CarlesonSquare& q) {
        return product_square_mass(base, q);
      },
      1.0);
  res.bounded = sup.finite;
  res.constant_k = sup.sup;
  res.witnesses = sup.witnesses;
  return res;
}

}  // namespace lcembed::zen
