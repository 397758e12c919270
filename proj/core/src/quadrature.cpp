#include "paps/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <queue>

#include "paps/error.hpp"

namespace paps {

GaussRule make_gauss_legendre(std::size_t n) {
  if (n == 0) throw ArgumentError("gauss_legendre: order must be positive");
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const std::size_t half = (n + 1) / 2;
  for (std::size_t i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // recompute derivative at the converged node
    double p0 = 1.0;
    double p1 = x;
    for (std::size_t k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
      p0 = p1;
      p1 = p2;
    }
    if (n == 1) p0 = 1.0;
    dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

const GaussRule& gauss_legendre(std::size_t n) {
  static const std::array<GaussRule, 6> cache = {make_gauss_legendre(2), make_gauss_legendre(4),
                                                 make_gauss_legendre(8), make_gauss_legendre(16),
                                                 make_gauss_legendre(32), make_gauss_legendre(64)};
  switch (n) {
    case 2: return cache[0];
    case 4: return cache[1];
    case 8: return cache[2];
    case 16: return cache[3];
    case 32: return cache[4];
    case 64: return cache[5];
    default: break;
  }
  static std::mutex mutex;
  static std::map<std::size_t, GaussRule> extra;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = extra.find(n);
  if (it == extra.end()) it = extra.emplace(n, make_gauss_legendre(n)).first;
  return it->second;
}

namespace {

// Kronrod 15-point nodes (positive half) and weights, Gauss 7-point weights.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Piece {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Piece& other) const { return error < other.error; }
};

Piece kronrod(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double resk = fc * kWgk[7];
  double resg = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    const double f1 = f(c - dx);
    const double f2 = f(c + dx);
    resk += kWgk[j] * (f1 + f2);
    if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
  }
  return {a, b, resk * h, std::abs((resk - resg) * h)};
}

}  // namespace

QuadratureResult adaptive_gauss_kronrod(const std::function<double(double)>& f, double a,
                                        double b, const AdaptiveOptions& options,
                                        std::span<const double> breakpoints, double max_piece) {
  if (!(a <= b)) throw ArgumentError("adaptive_gauss_kronrod: reversed interval");
  QuadratureResult out;
  if (a == b) return out;

  std::vector<double> cuts{a, b};
  for (double x : breakpoints) {
    if (x > a && x < b) cuts.push_back(x);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  if (max_piece > 0.0) {
    std::vector<double> refined;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      const double len = cuts[i + 1] - cuts[i];
      const auto m = static_cast<std::size_t>(std::ceil(len / max_piece));
      for (std::size_t j = 0; j < std::max<std::size_t>(m, 1); ++j) {
        refined.push_back(cuts[i] + len * static_cast<double>(j) / static_cast<double>(std::max<std::size_t>(m, 1)));
      }
    }
    refined.push_back(b);
    cuts = std::move(refined);
  }

  std::priority_queue<Piece> heap;
  double total = 0.0;
  double total_err = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    Piece p = kronrod(f, cuts[i], cuts[i + 1]);
    total += p.value;
    total_err += p.error;
    heap.push(p);
  }
  out.evaluations = 15 * heap.size();

  auto target = [&] { return std::max(options.abs_tol, options.rel_tol * std::abs(total)); };
  while (total_err > target() && heap.size() < options.max_intervals) {
    Piece worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) break;
    heap.pop();
    Piece left = kronrod(f, worst.a, mid);
    Piece right = kronrod(f, mid, worst.b);
    out.evaluations += 30;
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }
  // re-sum to shed accumulated rounding from the running updates
  total = 0.0;
  total_err = 0.0;
  out.intervals = heap.size();
  while (!heap.empty()) {
    total += heap.top().value;
    total_err += heap.top().error;
    heap.pop();
  }
  out.value = total;
  out.error = total_err;
  return out;
}

}  // namespace paps
