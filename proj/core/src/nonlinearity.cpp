#include "paps/nonlinearity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "paps/error.hpp"

namespace paps {

double sine_mode(std::size_t k, double x) {
  return std::sqrt(2.0 / std::numbers::pi) * std::sin(static_cast<double>(k) * x);
}

double profile_norm(const std::vector<double>& c) {
  double s = 0.0;
  for (double v : c) s += v * v;
  return std::sqrt(s);
}

struct NonlinearitySpec::Data {
  Kind kind = Kind::zero;
  std::string name = "zero";
  std::size_t modes = 1;
  StateNorm norm = StateNorm::l2;
  Signal K;
  Signal H;  // modal forcing, or the zero scalar when absent
  bool has_h = false;
  std::vector<double> profile;
  double a = 0.0;
  double lipschitz = 0.0;
  Fn fn;
  // pseudo-spectral tables for quadratic_field
  std::vector<double> points;
  std::vector<double> synth;     // points x modes
  std::vector<double> analysis;  // modes x points
};

namespace {

using Data = NonlinearitySpec::Data;

void add_forcing(const Data& d, double t, std::span<double> out) {
  if (!d.has_h) return;
  double stack[64];
  std::vector<double> heap;
  std::span<double> h;
  if (d.modes <= 64) {
    h = std::span<double>(stack, d.modes);
  } else {
    heap.resize(d.modes);
    h = heap;
  }
  d.H.evaluate(t, h);
  for (std::size_t k = 0; k < d.modes; ++k) out[k] += h[k];
}

double l2(std::span<const double> u) {
  double s = 0.0;
  for (double v : u) s += v * v;
  return std::sqrt(s);
}

void check_forcing(const Signal& h, std::size_t modes, const char* what) {
  if (h.dimension() != modes) {
    throw ArgumentError(std::string(what) + ": forcing dimension " +
                        std::to_string(h.dimension()) + " does not match " +
                        std::to_string(modes) + " modes");
  }
}

void check_scalar(const Signal& s, const char* what) {
  if (s.dimension() != 1) throw ArgumentError(std::string(what) + " must be a scalar signal");
}

}  // namespace

NonlinearitySpec::NonlinearitySpec(std::shared_ptr<const Data> data) : data_(std::move(data)) {}

NonlinearitySpec NonlinearitySpec::zero(std::size_t modes) {
  if (modes == 0) throw ArgumentError("nonlinearity needs at least one mode");
  auto d = std::make_shared<Data>();
  d->modes = modes;
  return NonlinearitySpec(d);
}

NonlinearitySpec NonlinearitySpec::mk_saturating(Signal K, std::vector<double> R, Signal H) {
  check_scalar(K, "mk-saturating K");
  if (R.empty()) throw ArgumentError("mk-saturating: empty profile R");
  for (double r : R) {
    if (r < 0.0) throw ArgumentError("mk-saturating: profile R must be nonnegative");
  }
  auto d = std::make_shared<Data>();
  d->kind = Kind::mk_saturating;
  d->name = "mk-saturating";
  d->modes = R.size();
  d->K = std::move(K);
  d->profile = std::move(R);
  if (!H.is_zero()) {
    check_forcing(H, d->modes, "mk-saturating");
    d->H = std::move(H);
    d->has_h = true;
  }
  return NonlinearitySpec(d);
}

NonlinearitySpec NonlinearitySpec::mk_saturating(Signal K, std::vector<double> R) {
  return mk_saturating(std::move(K), std::move(R), Signal());
}

NonlinearitySpec NonlinearitySpec::mk_saturating_v2(Signal K, std::vector<double> Q, Signal H) {
  auto base = mk_saturating(std::move(K), std::move(Q), std::move(H));
  auto d = std::make_shared<Data>(*base.data_);
  d->kind = Kind::mk_saturating_v2;
  d->name = "mk-saturating-v2";
  return NonlinearitySpec(d);
}

NonlinearitySpec NonlinearitySpec::quadratic_scalar(Signal b, Signal C) {
  check_scalar(b, "quadratic b");
  auto d = std::make_shared<Data>();
  d->kind = Kind::quadratic_scalar;
  d->name = "quadratic-scalar";
  d->modes = C.dimension();
  d->norm = StateNorm::sup;
  d->K = std::move(b);
  d->H = std::move(C);
  d->has_h = !d->H.is_zero();
  return NonlinearitySpec(d);
}

NonlinearitySpec NonlinearitySpec::quadratic_field(Signal b, Signal C, std::size_t modes) {
  check_scalar(b, "quadratic b");
  if (modes == 0) throw ArgumentError("quadratic-field needs at least one mode");
  auto d = std::make_shared<Data>();
  d->kind = Kind::quadratic_field;
  d->name = "quadratic-field";
  d->modes = modes;
  d->norm = StateNorm::sup;
  d->K = std::move(b);
  if (!C.is_zero()) {
    check_forcing(C, modes, "quadratic-field");
    d->H = std::move(C);
    d->has_h = true;
  }
  // odd point count so x = pi/2 is a sample point
  const std::size_t nx = std::max<std::size_t>(65, 4 * modes + 1);
  const double dx = std::numbers::pi / static_cast<double>(nx + 1);
  d->points.resize(nx);
  d->synth.resize(nx * modes);
  d->analysis.resize(modes * nx);
  for (std::size_t j = 0; j < nx; ++j) {
    const double x = dx * static_cast<double>(j + 1);
    d->points[j] = x;
    for (std::size_t k = 0; k < modes; ++k) {
      const double e = sine_mode(k + 1, x);
      d->synth[j * modes + k] = e;
      d->analysis[k * nx + j] = dx * e;
    }
  }
  return NonlinearitySpec(d);
}

NonlinearitySpec NonlinearitySpec::affine(double a, Signal h) {
  auto d = std::make_shared<Data>();
  d->kind = Kind::affine;
  d->name = "affine";
  d->modes = h.dimension();
  d->a = a;
  d->H = std::move(h);
  d->has_h = !d->H.is_zero();
  return NonlinearitySpec(d);
}

NonlinearitySpec NonlinearitySpec::custom(std::size_t modes, Fn fn, double lipschitz,
                                          std::string name) {
  if (modes == 0 || !fn) throw ArgumentError("custom nonlinearity needs modes and a callable");
  auto d = std::make_shared<Data>();
  d->kind = Kind::custom;
  d->name = std::move(name);
  d->modes = modes;
  d->fn = std::move(fn);
  d->lipschitz = lipschitz;
  return NonlinearitySpec(d);
}

NonlinearitySpec::Kind NonlinearitySpec::kind() const { return data_->kind; }
const std::string& NonlinearitySpec::name() const { return data_->name; }
std::size_t NonlinearitySpec::dimension() const { return data_->modes; }
NonlinearitySpec::StateNorm NonlinearitySpec::state_norm_kind() const { return data_->norm; }

std::vector<double> NonlinearitySpec::field_points() const {
  if (!data_->points.empty()) return data_->points;
  return {};
}

std::vector<double> NonlinearitySpec::synthesize(std::span<const double> u) const {
  const Data& d = *data_;
  std::vector<double> v(d.points.size(), 0.0);
  for (std::size_t j = 0; j < d.points.size(); ++j) {
    double s = 0.0;
    for (std::size_t k = 0; k < d.modes; ++k) s += d.synth[j * d.modes + k] * u[k];
    v[j] = s;
  }
  return v;
}

void NonlinearitySpec::evaluate(double t, std::span<const double> u, std::span<double> out) const {
  const Data& d = *data_;
  if (u.size() != d.modes || out.size() != d.modes) {
    throw ArgumentError("nonlinearity '" + d.name + "': state dimension mismatch");
  }
  switch (d.kind) {
    case Kind::zero:
      std::fill(out.begin(), out.end(), 0.0);
      return;
    case Kind::mk_saturating: {
      const double c = d.K(t) / (1.0 + l2(u));
      for (std::size_t k = 0; k < d.modes; ++k) out[k] = c * d.profile[k];
      break;
    }
    case Kind::mk_saturating_v2: {
      const double n = l2(u);
      const double c = d.K(t) * n / (1.0 + n);
      for (std::size_t k = 0; k < d.modes; ++k) out[k] = c * d.profile[k];
      break;
    }
    case Kind::quadratic_scalar: {
      const double b = d.K(t);
      for (std::size_t k = 0; k < d.modes; ++k) out[k] = b * u[k] * u[k];
      break;
    }
    case Kind::quadratic_field: {
      const double b = d.K(t);
      std::fill(out.begin(), out.end(), 0.0);
      if (b != 0.0) {
        const std::size_t nx = d.points.size();
        for (std::size_t j = 0; j < nx; ++j) {
          double v = 0.0;
          for (std::size_t k = 0; k < d.modes; ++k) v += d.synth[j * d.modes + k] * u[k];
          const double g = b * v * v;
          for (std::size_t k = 0; k < d.modes; ++k) out[k] += d.analysis[k * nx + j] * g;
        }
      }
      break;
    }
    case Kind::affine:
      for (std::size_t k = 0; k < d.modes; ++k) out[k] = d.a * u[k];
      break;
    case Kind::custom:
      d.fn(t, u, out);
      return;
  }
  add_forcing(d, t, out);
}

double NonlinearitySpec::state_norm(std::span<const double> u) const {
  const Data& d = *data_;
  if (d.norm == StateNorm::l2) return l2(u);
  if (d.kind == Kind::quadratic_field) {
    double m = 0.0;
    for (double v : synthesize(u)) m = std::max(m, std::abs(v));
    return m;
  }
  double m = 0.0;
  for (double v : u) m = std::max(m, std::abs(v));
  return m;
}

Signal NonlinearitySpec::zero_section() const {
  const NonlinearitySpec self = *this;
  const std::size_t m = data_->modes;
  return Signal::vector(
      m,
      [self, m](double t, std::span<double> out) {
        std::vector<double> zero(m, 0.0);
        self.evaluate(t, zero, out);
      },
      data_->name + "(t,0)");
}

Signal NonlinearitySpec::zero_section_norm() const {
  const NonlinearitySpec self = *this;
  const std::size_t m = data_->modes;
  return Signal::scalar(
      [self, m](double t) {
        std::vector<double> zero(m, 0.0);
        std::vector<double> out(m);
        self.evaluate(t, zero, out);
        return self.state_norm(out);
      },
      "|" + data_->name + "(t,0)|");
}

Signal NonlinearitySpec::lipschitz_function() const {
  const Data& d = *data_;
  switch (d.kind) {
    case Kind::zero:
      return Signal::constant(0.0);
    case Kind::mk_saturating:
    case Kind::mk_saturating_v2: {
      const Signal K = d.K;
      const double r = profile_norm(d.profile);
      return Signal::scalar([K, r](double t) { return std::abs(K(t)) * r; }, "L(t)");
    }
    case Kind::affine:
      return Signal::constant(std::abs(d.a));
    case Kind::custom:
      return Signal::constant(d.lipschitz);
    case Kind::quadratic_scalar:
    case Kind::quadratic_field:
      break;
  }
  throw ArgumentError("nonlinearity '" + d.name + "' is only Lipschitz on bounded sets");
}

Signal NonlinearitySpec::ball_lipschitz(double rho) const {
  if (!(rho > 0.0)) throw ArgumentError("ball_lipschitz: rho must be positive");
  const Data& d = *data_;
  if (d.kind == Kind::quadratic_scalar || d.kind == Kind::quadratic_field) {
    const Signal b = d.K;
    return Signal::scalar([b, rho](double t) { return 2.0 * rho * std::abs(b(t)); }, "L_rho(t)");
  }
  return lipschitz_function();
}

double NonlinearitySpec::lipschitz_bsp(StepanovExponent p, Interval window, double step) const {
  return bsp_norm(lipschitz_function(), p, window, step).value;
}

}  // namespace paps
