#include "lcembed/inner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace lcembed::inner {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Complex int_pow(Complex b, int n) {
  Complex r{1.0, 0.0};
  for (int i = 0; i < n; ++i) r *= b;
  return r;
}

}  // namespace

void validate(const InnerFunction& theta) {
  if (theta.domain == measure::Domain::Axis)
    throw InputError("inner function domain must be half-plane or disc");
  if (!(theta.singular_T >= 0) || !std::isfinite(theta.singular_T))
    throw InputError("singular factor exponent must be a nonnegative number");
  for (const auto& z : theta.zeros) {
    if (z.mult < 1) throw InputError("Blaschke zero multiplicity must be >= 1");
    if (!std::isfinite(z.z.real()) || !std::isfinite(z.z.imag()))
      throw InputError("Blaschke zero location is not finite");
    if (theta.domain == measure::Domain::HalfPlane && !(z.z.real() > 0))
      throw InputError("half-plane Blaschke zero needs Re > 0");
    if (theta.domain == measure::Domain::Disc && !(std::abs(z.z) < 1))
      throw InputError("disc Blaschke zero needs |z| < 1");
  }
}

Complex eval(const InnerFunction& theta, Complex s) {
  Complex v{1.0, 0.0};
  if (theta.domain == measure::Domain::HalfPlane) {
    for (const auto& z : theta.zeros)
      v *= int_pow((s - z.z) / (s + std::conj(z.z)), z.mult);
    if (theta.has_singular()) v *= std::exp(-theta.singular_T * s);
  } else {
    for (const auto& z : theta.zeros)
      v *= int_pow((z.z - s) / (1.0 - std::conj(z.z) * s), z.mult);
    if (theta.has_singular())
      v *= std::exp(theta.singular_T * (s - 1.0) / (s + 1.0));
  }
  return v;
}

Complex log_derivative(const InnerFunction& theta, Complex s) {
  Complex d{0.0, 0.0};
  if (theta.domain == measure::Domain::HalfPlane) {
    for (const auto& z : theta.zeros)
      d += (double)z.mult * (1.0 / (s - z.z) - 1.0 / (s + std::conj(z.z)));
    if (theta.has_singular()) d -= theta.singular_T;
  } else {
    for (const auto& z : theta.zeros)
      d += (double)z.mult *
           (-1.0 / (z.z - s) + std::conj(z.z) / (1.0 - std::conj(z.z) * s));
    if (theta.has_singular()) {
      const Complex q = s + 1.0;
      d += 2.0 * theta.singular_T / (q * q);
    }
  }
  return d;
}

LogModResult log_modulus_and_derivative(const InnerFunction& theta, Complex s) {
  LogModResult out;
  double lm = 0.0;
  int mult_at_s = 0;
  for (const auto& z : theta.zeros) {
    if (z.z == s) {
      mult_at_s += z.mult;
      continue;
    }
    double t;
    if (theta.domain == measure::Domain::HalfPlane) {
      const Complex den = s + std::conj(z.z);
      t = -4.0 * z.z.real() * s.real() / std::norm(den);
    } else {
      const Complex den = 1.0 - std::conj(z.z) * s;
      t = -(1.0 - std::norm(z.z)) * (1.0 - std::norm(s)) / std::norm(den);
    }
    lm += 0.5 * z.mult * std::log1p(t);
  }
  if (theta.has_singular()) {
    if (theta.domain == measure::Domain::HalfPlane)
      lm += -theta.singular_T * s.real();
    else
      lm += theta.singular_T * (std::norm(s) - 1.0) / std::norm(s + 1.0);
  }
  if (mult_at_s > 0) {
    out.log_modulus = -kInf;
    if (mult_at_s == 1) {
      // product rule at a simple zero: factor derivative times the rest
      Complex rest{1.0, 0.0};
      Complex factor_d{0.0, 0.0};
      for (const auto& z : theta.zeros) {
        if (z.z == s) {
          if (theta.domain == measure::Domain::HalfPlane) {
            const Complex den = s + std::conj(z.z);
            factor_d = 2.0 * z.z.real() / (den * den);
          } else {
            const Complex den = 1.0 - std::conj(z.z) * s;
            factor_d = (std::norm(z.z) - 1.0) / (den * den);
          }
        } else if (theta.domain == measure::Domain::HalfPlane) {
          rest *= int_pow((s - z.z) / (s + std::conj(z.z)), z.mult);
        } else {
          rest *= int_pow((z.z - s) / (1.0 - std::conj(z.z) * s), z.mult);
        }
      }
      if (theta.has_singular())
        rest *= theta.domain == measure::Domain::HalfPlane
                    ? std::exp(-theta.singular_T * s)
                    : std::exp(theta.singular_T * (s - 1.0) / (s + 1.0));
      out.derivative = factor_d * rest;
    }
    return out;
  }
  out.log_modulus = lm;
  out.derivative = eval(theta, s) * log_derivative(theta, s);
  return out;
}

double SpectrumInfo::dist_to(Complex p) const {
  double d = kInf;
  for (const auto& z : zero_points) d = std::min(d, std::abs(p - z));
  return d;
}

double SpectrumInfo::sup_abs() const {
  double m = 0;
  for (const auto& z : zero_points) m = std::max(m, std::abs(z));
  return m;
}

bool SpectrumInfo::contains_origin() const {
  return dist_to(Complex{0.0, 0.0}) == 0.0;
}

SpectrumInfo spectrum(const InnerFunction& theta) {
  SpectrumInfo info;
  for (const auto& z : theta.zeros) {
    if (std::find(info.zero_points.begin(), info.zero_points.end(), z.z) ==
        info.zero_points.end())
      info.zero_points.push_back(z.z);
  }
  if (theta.has_singular()) {
    if (theta.domain == measure::Domain::HalfPlane)
      info.contains_infinity = true;
    else
      info.contains_minus_one = true;
  }
  return info;
}

Complex mobius(Complex z) { return (1.0 - z) / (1.0 + z); }

InnerFunction transfer_inner(const InnerFunction& theta) {
  validate(theta);
  InnerFunction out;
  out.domain = theta.domain == measure::Domain::Disc ? measure::Domain::HalfPlane
                                                     : measure::Domain::Disc;
  out.singular_T = theta.singular_T;
  for (const auto& z : theta.zeros) out.zeros.push_back({mobius(z.z), z.mult});
  return out;
}

measure::PositiveMeasure transfer_measure_disc_to_halfplane(
    const measure::PositiveMeasure& rho) {
  if (rho.domain != measure::Domain::Disc)
    throw InputError("transfer expects a disc measure");
  measure::validate(rho);
  measure::PositiveMeasure mu;
  mu.domain = measure::Domain::HalfPlane;
  for (const auto& a : rho.atoms) {
    const double den = std::norm(a.location + 1.0);
    if (den == 0.0)
      throw InputError("atom at -1 transfers to infinity");
    mu.atoms.push_back({mobius(a.location), 4.0 * a.mass / den});
  }
  for (const auto& p : rho.radial) {
    // disc radius [x0,x1) in [0,1] maps onto [M(x1), M(x0)] on the axis
    measure::RadialPiece q;
    q.x0 = (1.0 - p.x1) / (1.0 + p.x1);
    q.x1 = (1.0 - p.x0) / (1.0 + p.x0);
    if (p.is_power()) {
      const double c = p.power.c, beta = p.power.beta;
      q.tabulated = [c, beta](double s) {
        const double x = (1.0 - s) / (1.0 + s);
        return 2.0 * c * std::pow(x, beta);
      };
    } else {
      auto f = p.tabulated;
      q.tabulated = [f](double s) { return 2.0 * f((1.0 - s) / (1.0 + s)); };
    }
    mu.radial.push_back(std::move(q));
  }
  return mu;
}

measure::PositiveMeasure transfer_measure_halfplane_to_disc(
    const measure::PositiveMeasure& mu) {
  if (mu.domain != measure::Domain::HalfPlane &&
      mu.domain != measure::Domain::Axis)
    throw InputError("transfer expects a half-plane or axis measure");
  measure::validate(mu);
  measure::PositiveMeasure rho;
  rho.domain = measure::Domain::Disc;
  for (const auto& a : mu.atoms) {
    const Complex z = mobius(a.location);
    if (std::abs(z) > 1 + 1e-12)
      throw InputError("atom transfers outside the closed disc");
    rho.atoms.push_back({z, a.mass / std::norm(a.location + 1.0)});
  }
  for (const auto& p : mu.radial) {
    if (p.x1 > 1.0)
      throw InputError(
          "axis density beyond x = 1 transfers to the negative radius, which "
          "the disc representation cannot hold");
    measure::RadialPiece q;
    q.x0 = (1.0 - p.x1) / (1.0 + p.x1);
    q.x1 = (1.0 - p.x0) / (1.0 + p.x0);
    if (p.is_power()) {
      const double c = p.power.c, beta = p.power.beta;
      q.tabulated = [c, beta](double t) {
        const double x = (1.0 - t) / (1.0 + t);
        return 0.5 * c * std::pow(x, beta);
      };
    } else {
      auto f = p.tabulated;
      q.tabulated = [f](double t) { return 0.5 * f((1.0 - t) / (1.0 + t)); };
    }
    rho.radial.push_back(std::move(q));
  }
  if (!mu.planar.empty())
    throw InputError("planar density pieces have no disc representation");
  return rho;
}

double baranov_log_bound(const InnerFunction& theta, double omega, Complex z) {
  validate(theta);
  if (theta.domain != measure::Domain::HalfPlane)
    throw InputError("decay bound is stated for half-plane inner functions");
  if (theta.has_singular())
    throw InputError(
        "decay bound requires a pure Blaschke product (no singular factor)");
  if (theta.zeros.empty())
    throw InputError("decay bound needs at least one Blaschke zero");
  const auto info = spectrum(theta);
  const double delta = info.dist_to(Complex{0.0, omega});
  if (!(delta > 0))
    throw InputError("i*omega lies in the spectrum");
  if (!(z.real() >= delta) || !(std::abs(z.imag() - omega) <= z.real()))
    throw InputError("point is outside the cone where the bound holds");
  const Complex w0{delta / 4.0, omega};
  const double rate = std::abs(log_derivative(theta, w0));
  return -(delta * delta / 48.0) * rate / z.real();
}

}  // namespace lcembed::inner
