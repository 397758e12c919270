#include "paps/signal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "paps/error.hpp"
#include "paps/quadrature.hpp"

namespace paps {

namespace detail {

class SignalImpl {
 public:
  SignalImpl(std::size_t dim, Interval domain, std::string name)
      : dim_(dim), domain_(domain), name_(std::move(name)) {}
  virtual ~SignalImpl() = default;

  std::size_t dim() const { return dim_; }
  Interval domain() const { return domain_; }
  const std::string& name() const { return name_; }
  virtual bool is_zero() const { return false; }
  virtual void eval(double t, std::span<double> out) const = 0;
  virtual void kinks(double, double, std::vector<double>&) const {}

 private:
  std::size_t dim_;
  Interval domain_;
  std::string name_;
};

}  // namespace detail

using detail::SignalImpl;

namespace {

Interval intersect(Interval a, Interval b) { return {std::max(a.lo, b.lo), std::min(a.hi, b.hi)}; }

class ConstantImpl final : public SignalImpl {
 public:
  explicit ConstantImpl(std::vector<double> v)
      : SignalImpl(v.size(), {}, "constant"), value_(std::move(v)) {}
  bool is_zero() const override {
    return std::all_of(value_.begin(), value_.end(), [](double x) { return x == 0.0; });
  }
  void eval(double, std::span<double> out) const override {
    std::copy(value_.begin(), value_.end(), out.begin());
  }

 private:
  std::vector<double> value_;
};

class QuasiPeriodicImpl final : public SignalImpl {
 public:
  explicit QuasiPeriodicImpl(std::vector<SineTerm> terms, std::string name)
      : SignalImpl(1, {}, std::move(name)), terms_(std::move(terms)) {}
  void eval(double t, std::span<double> out) const override {
    double s = 0.0;
    for (const auto& term : terms_) s += term.amplitude * std::sin(term.omega * t + term.phase);
    out[0] = s;
  }

 private:
  std::vector<SineTerm> terms_;
};

class Psi1Impl final : public SignalImpl {
 public:
  Psi1Impl(double alpha, double beta, bool use_cos)
      : SignalImpl(1, {}, use_cos ? "psi1-cos" : "psi1"),
        alpha_(alpha),
        beta_(beta),
        use_cos_(use_cos) {}
  void eval(double t, std::span<double> out) const override {
    const double den = 2.0 + std::cos(alpha_ * t) + std::cos(beta_ * t);
    if (den < 1e-12) {
      throw DomainError("psi1: denominator 2 + cos(alpha t) + cos(beta t) below 1e-12 at t = " +
                        std::to_string(t));
    }
    out[0] = use_cos_ ? std::cos(1.0 / den) : std::sin(1.0 / den);
  }

 private:
  double alpha_;
  double beta_;
  bool use_cos_;
};

class ArctanImpl final : public SignalImpl {
 public:
  ArctanImpl() : SignalImpl(1, {}, "arctan-shift") {}
  void eval(double t, std::span<double> out) const override {
    out[0] = std::atan(t) - 0.5 * std::numbers::pi;
  }
};

struct BumpNormalization {
  double kappa;
};

double raw_bump(double s) {
  const double y = 1.0 - 4.0 * s * s;
  if (y <= 0.0) return 0.0;
  return std::exp(1.0 - 1.0 / y);
}

const BumpNormalization& bump_normalization() {
  static const BumpNormalization norm = [] {
    AdaptiveOptions opt;
    opt.abs_tol = 1e-15;
    const double i0 = adaptive_gauss_kronrod(raw_bump, -0.5, 0.5, opt).value;
    const double i2 =
        adaptive_gauss_kronrod([](double s) { return 4.0 * s * s * raw_bump(s); }, -0.5, 0.5, opt)
            .value;
    return BumpNormalization{(1.0 - i0) / i2};
  }();
  return norm;
}

class SpikeTrainImpl final : public SignalImpl {
 public:
  SpikeTrainImpl(int n_max, double window)
      : SignalImpl(1, {}, "spike-train"), n_max_(n_max), window_(window) {}

  void eval(double t, std::span<double> out) const override {
    double s = 0.0;
    double scale = 1.0;
    for (int n = 1; n <= n_max_; ++n) {
      scale *= 3.0;
      const double m = std::round((t / scale - 1.0) / 2.0);
      const double i = scale * (2.0 * m + 1.0);
      if (std::abs(i) > window_) continue;
      const double n2 = static_cast<double>(n) * n;
      s += spike_bump(n2 * (t - i));
    }
    out[0] = s;
  }

  void kinks(double a, double b, std::vector<double>& out) const override {
    double scale = 1.0;
    for (int n = 1; n <= n_max_; ++n) {
      scale *= 3.0;
      const double half = 0.5 / (static_cast<double>(n) * n);
      const double lo = std::max(a, -window_) - half;
      const double hi = std::min(b, window_) + half;
      double m = std::ceil((lo / scale - 1.0) / 2.0);
      for (double i = scale * (2.0 * m + 1.0); i <= hi; m += 1.0, i = scale * (2.0 * m + 1.0)) {
        if (std::abs(i) > window_) continue;
        for (double x : {i - half, i, i + half}) {
          if (x > a && x < b) out.push_back(x);
        }
      }
    }
  }

 private:
  int n_max_;
  double window_;
};

class SamplesImpl final : public SignalImpl {
 public:
  SamplesImpl(std::vector<double> times, std::size_t dim, std::vector<double> values,
              bool uniform)
      : SignalImpl(dim, {times.front(), times.back()}, "grid"),
        times_(std::move(times)),
        values_(std::move(values)),
        uniform_(uniform) {}

  void eval(double t, std::span<double> out) const override {
    const std::size_t d = dim();
    const std::size_t n = times_.size();
    if (!(t >= times_.front() && t <= times_.back())) {
      throw DomainError("grid signal evaluated at t = " + std::to_string(t) + " outside [" +
                        std::to_string(times_.front()) + ", " + std::to_string(times_.back()) +
                        "]");
    }
    if (n == 1) {
      std::copy_n(values_.begin(), d, out.begin());
      return;
    }
    std::size_t k;
    if (uniform_) {
      const double step = times_[1] - times_[0];
      k = static_cast<std::size_t>(std::floor((t - times_.front()) / step));
      k = std::min(k, n - 2);
    } else {
      auto it = std::upper_bound(times_.begin(), times_.end(), t);
      k = static_cast<std::size_t>(it - times_.begin());
      k = k == 0 ? 0 : std::min(k - 1, n - 2);
    }
    const double w = (t - times_[k]) / (times_[k + 1] - times_[k]);
    const double* v0 = values_.data() + k * d;
    const double* v1 = v0 + d;
    for (std::size_t j = 0; j < d; ++j) out[j] = (1.0 - w) * v0[j] + w * v1[j];
  }

  void kinks(double a, double b, std::vector<double>& out) const override {
    auto lo = std::upper_bound(times_.begin(), times_.end(), a);
    auto hi = std::lower_bound(times_.begin(), times_.end(), b);
    out.insert(out.end(), lo, hi);
  }

 private:
  std::vector<double> times_;
  std::vector<double> values_;
  bool uniform_;
};

class ScalarFnImpl final : public SignalImpl {
 public:
  ScalarFnImpl(Signal::ScalarFn fn, std::string name, Interval domain, std::vector<double> kinks)
      : SignalImpl(1, domain, std::move(name)), fn_(std::move(fn)), kinks_(std::move(kinks)) {
    std::sort(kinks_.begin(), kinks_.end());
  }
  void eval(double t, std::span<double> out) const override { out[0] = fn_(t); }
  void kinks(double a, double b, std::vector<double>& out) const override {
    for (double x : kinks_) {
      if (x > a && x < b) out.push_back(x);
    }
  }

 private:
  Signal::ScalarFn fn_;
  std::vector<double> kinks_;
};

class VectorFnImpl final : public SignalImpl {
 public:
  VectorFnImpl(std::size_t dim, Signal::VectorFn fn, std::string name, Interval domain)
      : SignalImpl(dim, domain, std::move(name)), fn_(std::move(fn)) {}
  void eval(double t, std::span<double> out) const override { fn_(t, out); }

 private:
  Signal::VectorFn fn_;
};

class ShiftImpl final : public SignalImpl {
 public:
  ShiftImpl(std::shared_ptr<const SignalImpl> base, double tau)
      : SignalImpl(base->dim(), {base->domain().lo - tau, base->domain().hi - tau},
                   base->name()),
        base_(std::move(base)),
        tau_(tau) {}
  bool is_zero() const override { return base_->is_zero(); }
  void eval(double t, std::span<double> out) const override { base_->eval(t + tau_, out); }
  void kinks(double a, double b, std::vector<double>& out) const override {
    std::vector<double> tmp;
    base_->kinks(a + tau_, b + tau_, tmp);
    for (double x : tmp) out.push_back(x - tau_);
  }

 private:
  std::shared_ptr<const SignalImpl> base_;
  double tau_;
};

class ScaleImpl final : public SignalImpl {
 public:
  ScaleImpl(std::shared_ptr<const SignalImpl> base, double c)
      : SignalImpl(base->dim(), base->domain(), base->name()), base_(std::move(base)), c_(c) {}
  bool is_zero() const override { return c_ == 0.0 || base_->is_zero(); }
  void eval(double t, std::span<double> out) const override {
    base_->eval(t, out);
    for (double& x : out) x *= c_;
  }
  void kinks(double a, double b, std::vector<double>& out) const override {
    base_->kinks(a, b, out);
  }

 private:
  std::shared_ptr<const SignalImpl> base_;
  double c_;
};

class CombineImpl final : public SignalImpl {
 public:
  enum class Op { sum, difference, product };

  CombineImpl(std::shared_ptr<const SignalImpl> a, std::shared_ptr<const SignalImpl> b, Op op)
      : SignalImpl(op == Op::product ? a->dim() : a->dim(), intersect(a->domain(), b->domain()),
                   a->name() + (op == Op::sum ? "+" : op == Op::difference ? "-" : "*") +
                       b->name()),
        a_(std::move(a)),
        b_(std::move(b)),
        op_(op) {}

  bool is_zero() const override {
    if (op_ == Op::product) return a_->is_zero() || b_->is_zero();
    return a_->is_zero() && b_->is_zero();
  }

  void eval(double t, std::span<double> out) const override {
    const std::size_t d = dim();
    double stack[8];
    std::vector<double> heap;
    std::span<double> tmp;
    const std::size_t need = op_ == Op::product ? 1 : d;
    if (need <= 8) {
      tmp = std::span<double>(stack, need);
    } else {
      heap.resize(need);
      tmp = heap;
    }
    a_->eval(t, out);
    b_->eval(t, tmp);
    switch (op_) {
      case Op::sum:
        for (std::size_t j = 0; j < d; ++j) out[j] += tmp[j];
        break;
      case Op::difference:
        for (std::size_t j = 0; j < d; ++j) out[j] -= tmp[j];
        break;
      case Op::product:
        for (std::size_t j = 0; j < d; ++j) out[j] *= tmp[0];
        break;
    }
  }

  void kinks(double a, double b, std::vector<double>& out) const override {
    a_->kinks(a, b, out);
    b_->kinks(a, b, out);
  }

 private:
  std::shared_ptr<const SignalImpl> a_;
  std::shared_ptr<const SignalImpl> b_;
  Op op_;
};

}  // namespace

double spike_bump(double s) {
  if (std::abs(s) >= 0.5) return 0.0;
  return raw_bump(s) * (1.0 + bump_normalization().kappa * 4.0 * s * s);
}

Signal::Signal() : impl_(std::make_shared<ConstantImpl>(std::vector<double>{0.0})) {}

Signal::Signal(std::shared_ptr<const SignalImpl> impl) : impl_(std::move(impl)) {}

Signal Signal::constant(double value) { return constant(std::vector<double>{value}); }

Signal Signal::constant(std::vector<double> value) {
  if (value.empty()) throw ArgumentError("constant signal needs at least one component");
  return Signal(std::make_shared<ConstantImpl>(std::move(value)));
}

Signal Signal::sine(double amplitude, double omega, double phase) {
  return Signal(
      std::make_shared<QuasiPeriodicImpl>(std::vector<SineTerm>{{amplitude, omega, phase}}, "sin"));
}

Signal Signal::quasi_periodic(std::vector<SineTerm> terms) {
  if (terms.empty()) throw ArgumentError("quasi-periodic signal needs at least one term");
  return Signal(std::make_shared<QuasiPeriodicImpl>(std::move(terms), "quasi-periodic"));
}

Signal Signal::psi1(double alpha, double beta, bool use_cos) {
  return Signal(std::make_shared<Psi1Impl>(alpha, beta, use_cos));
}

Signal Signal::arctan_shift() { return Signal(std::make_shared<ArctanImpl>()); }

Signal Signal::spike_train(int n_max, double window) {
  if (n_max < 1) throw ArgumentError("spike train needs n_max >= 1");
  if (!(window > 0.0)) throw ArgumentError("spike train needs a positive window");
  return Signal(std::make_shared<SpikeTrainImpl>(n_max, window));
}

Signal Signal::grid(double t0, double step, std::size_t dim, std::vector<double> values) {
  if (!(step > 0.0)) throw ArgumentError("grid signal step must be positive");
  if (dim == 0 || values.empty() || values.size() % dim != 0) {
    throw ArgumentError("grid signal value array length must be a positive multiple of dim");
  }
  const std::size_t n = values.size() / dim;
  std::vector<double> times(n);
  for (std::size_t k = 0; k < n; ++k) times[k] = t0 + step * static_cast<double>(k);
  return Signal(std::make_shared<SamplesImpl>(std::move(times), dim, std::move(values), true));
}

Signal Signal::samples(std::vector<double> times, std::size_t dim, std::vector<double> values) {
  if (dim == 0 || times.empty() || values.size() != times.size() * dim) {
    throw ArgumentError("sample signal: value array length must equal times * dim");
  }
  for (std::size_t k = 1; k < times.size(); ++k) {
    if (!(times[k] > times[k - 1])) throw ArgumentError("sample signal: times must increase");
  }
  return Signal(std::make_shared<SamplesImpl>(std::move(times), dim, std::move(values), false));
}

Signal Signal::scalar(ScalarFn fn, std::string name, Interval domain, std::vector<double> kinks) {
  return Signal(
      std::make_shared<ScalarFnImpl>(std::move(fn), std::move(name), domain, std::move(kinks)));
}

Signal Signal::vector(std::size_t dim, VectorFn fn, std::string name, Interval domain) {
  if (dim == 0) throw ArgumentError("vector signal needs dim >= 1");
  return Signal(std::make_shared<VectorFnImpl>(dim, std::move(fn), std::move(name), domain));
}

Signal Signal::shifted(double tau) const {
  if (tau == 0.0) return *this;
  return Signal(std::make_shared<ShiftImpl>(impl_, tau));
}

Signal Signal::scaled(double c) const { return Signal(std::make_shared<ScaleImpl>(impl_, c)); }

Signal Signal::times(const Signal& scalar_factor) const {
  if (scalar_factor.dimension() != 1) throw ArgumentError("times: factor must be scalar");
  return Signal(std::make_shared<CombineImpl>(impl_, scalar_factor.impl_,
                                              CombineImpl::Op::product));
}

Signal operator+(const Signal& a, const Signal& b) {
  if (a.dimension() != b.dimension()) throw ArgumentError("signal sum: dimension mismatch");
  return Signal(std::make_shared<CombineImpl>(a.impl_, b.impl_, CombineImpl::Op::sum));
}

Signal operator-(const Signal& a, const Signal& b) {
  if (a.dimension() != b.dimension()) throw ArgumentError("signal difference: dimension mismatch");
  return Signal(std::make_shared<CombineImpl>(a.impl_, b.impl_, CombineImpl::Op::difference));
}

std::size_t Signal::dimension() const { return impl_->dim(); }
Interval Signal::domain() const { return impl_->domain(); }
const std::string& Signal::name() const { return impl_->name(); }
bool Signal::is_zero() const { return impl_->is_zero(); }

void Signal::evaluate(double t, std::span<double> out) const {
  if (out.size() != impl_->dim()) throw ArgumentError("evaluate: output span has wrong size");
  if (!impl_->domain().contains(t)) {
    throw DomainError("signal '" + impl_->name() + "' evaluated at t = " + std::to_string(t) +
                      " outside its domain");
  }
  impl_->eval(t, out);
}

double Signal::operator()(double t) const {
  const std::size_t d = impl_->dim();
  if (d == 1) {
    double v;
    evaluate(t, std::span<double>(&v, 1));
    return v;
  }
  std::vector<double> v(d);
  evaluate(t, v);
  return v[0];
}

double Signal::norm_at(double t) const {
  const std::size_t d = impl_->dim();
  if (d == 1) return std::abs((*this)(t));
  double stack[16];
  std::vector<double> heap;
  std::span<double> v;
  if (d <= 16) {
    v = std::span<double>(stack, d);
  } else {
    heap.resize(d);
    v = heap;
  }
  evaluate(t, v);
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

std::vector<double> Signal::breakpoints(double a, double b) const {
  std::vector<double> out;
  if (!(a < b)) return out;
  impl_->kinks(a, b, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace paps
