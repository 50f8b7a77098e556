#include "volfield/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "volfield/parallel.hpp"

namespace volfield {

namespace {

GaussRule compute_gauss_rule(int n) {
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  // Newton on Legendre P_n with the Chebyshev-like initial guess.
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double p_prime = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      p_prime = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / p_prime;
      x -= dx;
      if (std::fabs(dx) < 1e-15) break;
    }
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * p_prime * p_prime);
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

}  // namespace

const GaussRule& gauss_legendre(int points) {
  if (points < 1 || points > 64) throw DomainError("gauss rule size out of range");
  static std::map<int, GaussRule> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(points);
  if (it == cache.end()) it = cache.emplace(points, compute_gauss_rule(points)).first;
  return it->second;
}

void QuadratureSpec::validate() const {
  if (panels_theta < 4 || panels_phi < 4) throw DomainError("quadrature needs >= 4 panels");
  if (points_per_panel < 1) throw DomainError("quadrature needs >= 1 point per panel");
  if (!(tolerance > 0.0)) throw DomainError("quadrature tolerance must be positive");
}

void CompensatedSum::add(double x) {
  const double t = sum_ + x;
  if (std::fabs(sum_) >= std::fabs(x))
    comp_ += (sum_ - t) + x;
  else
    comp_ += (x - t) + sum_;
  sum_ = t;
}

DomainRegion DomainRegion::full() { return DomainRegion(); }

DomainRegion DomainRegion::rectangle(double theta_lo, double theta_hi,
                                     double phi_lo, double phi_hi) {
  if (!(theta_lo < theta_hi && phi_lo < phi_hi))
    throw DomainError("rectangle region must have positive extent");
  if (theta_lo < 0.0 || theta_hi > kPi)
    throw DomainError("rectangle theta range must lie in [0, pi]");
  DomainRegion r;
  r.kind_ = Kind::rectangle;
  r.name_ = "rectangle";
  r.theta_lo_ = theta_lo;
  r.theta_hi_ = theta_hi;
  r.phi_lo_ = phi_lo;
  r.phi_hi_ = phi_hi;
  return r;
}

DomainRegion DomainRegion::predicate(std::string name,
                                     std::function<bool(double, double)> member,
                                     double theta_lo, double theta_hi,
                                     double phi_lo, double phi_hi) {
  DomainRegion r;
  r.kind_ = Kind::predicate;
  r.name_ = std::move(name);
  r.member_ = std::move(member);
  r.theta_lo_ = theta_lo;
  r.theta_hi_ = theta_hi;
  r.phi_lo_ = phi_lo;
  r.phi_hi_ = phi_hi;
  return r;
}

bool DomainRegion::contains(double theta, double phi) const {
  if (theta < theta_lo_ || theta > theta_hi_ || phi < phi_lo_ || phi > phi_hi_)
    return false;
  if (kind_ == Kind::predicate) return member_(theta, phi);
  return true;
}

double DomainRegion::euclidean_area(const QuadratureSpec& spec) const {
  if (kind_ != Kind::predicate)
    return (theta_hi_ - theta_lo_) * (phi_hi_ - phi_lo_);
  if (cached_area_ >= 0.0) return cached_area_;
  cached_area_ = integrate_region([](double, double) { return 1.0; }, *this, spec).value;
  return cached_area_;
}

namespace {

double tensor_pass(const std::function<double(double, double)>& f, double theta_lo,
                   double theta_hi, double phi_lo, double phi_hi, int pt, int pp,
                   const GaussRule& rule) {
  const double ht = (theta_hi - theta_lo) / pt;
  const double hp = (phi_hi - phi_lo) / pp;
  const int q = static_cast<int>(rule.nodes.size());

  // Panel sums are computed in parallel slots, then reduced in panel order.
  std::vector<double> panel(static_cast<std::size_t>(pt) * pp, 0.0);
  parallel_for(panel.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t idx = begin; idx < end; ++idx) {
      const int i = static_cast<int>(idx) / pp;
      const int j = static_cast<int>(idx) % pp;
      const double t0 = theta_lo + i * ht;
      const double p0 = phi_lo + j * hp;
      CompensatedSum cell;
      for (int a = 0; a < q; ++a) {
        const double theta = t0 + 0.5 * ht * (rule.nodes[a] + 1.0);
        for (int b = 0; b < q; ++b) {
          const double phi = p0 + 0.5 * hp * (rule.nodes[b] + 1.0);
          cell.add(rule.weights[a] * rule.weights[b] * f(theta, phi));
        }
      }
      panel[idx] = cell.value() * 0.25 * ht * hp;
    }
  });

  CompensatedSum total;
  for (double v : panel) total.add(v);
  return total.value();
}

}  // namespace

Integral2dResult integrate_rectangle(const std::function<double(double, double)>& f,
                                     double theta_lo, double theta_hi,
                                     double phi_lo, double phi_hi,
                                     const QuadratureSpec& spec) {
  spec.validate();
  const GaussRule& rule = gauss_legendre(spec.points_per_panel);
  const double fine = tensor_pass(f, theta_lo, theta_hi, phi_lo, phi_hi,
                                  spec.panels_theta, spec.panels_phi, rule);
  const double coarse = tensor_pass(f, theta_lo, theta_hi, phi_lo, phi_hi,
                                    std::max(4, spec.panels_theta / 2),
                                    std::max(4, spec.panels_phi / 2), rule);
  const double disagreement = std::fabs(fine - coarse);
  const double scale = std::max(1.0, std::fabs(fine));
  if (disagreement > spec.tolerance * scale)
    throw ConvergenceError("tensor quadrature refinement disagreement " +
                           std::to_string(disagreement));
  Integral2dResult result;
  result.value = fine;
  result.error_estimate = disagreement + 1e-14 * scale;
  return result;
}

namespace {

struct Cell {
  double t0, t1, p0, p1;
  double area() const { return (t1 - t0) * (p1 - p0); }
};

enum class CellClass { inside, outside, boundary };

CellClass classify(const DomainRegion& region, const Cell& c) {
  int in = 0, total = 0;
  for (int i = 0; i <= 2; ++i) {
    for (int j = 0; j <= 2; ++j) {
      const double t = c.t0 + 0.5 * i * (c.t1 - c.t0);
      const double p = c.p0 + 0.5 * j * (c.p1 - c.p0);
      ++total;
      if (region.contains(t, p)) ++in;
    }
  }
  if (in == total) return CellClass::inside;
  if (in == 0) return CellClass::outside;
  return CellClass::boundary;
}

double cell_gauss(const std::function<double(double, double)>& f, const Cell& c,
                  const GaussRule& rule) {
  const int q = static_cast<int>(rule.nodes.size());
  CompensatedSum sum;
  for (int a = 0; a < q; ++a) {
    const double theta = c.t0 + 0.5 * (c.t1 - c.t0) * (rule.nodes[a] + 1.0);
    for (int b = 0; b < q; ++b) {
      const double phi = c.p0 + 0.5 * (c.p1 - c.p0) * (rule.nodes[b] + 1.0);
      sum.add(rule.weights[a] * rule.weights[b] * f(theta, phi));
    }
  }
  return sum.value() * 0.25 * c.area();
}

}  // namespace

Integral2dResult integrate_region(const std::function<double(double, double)>& f,
                                  const DomainRegion& region,
                                  const QuadratureSpec& spec) {
  spec.validate();
  if (region.kind() != DomainRegion::Kind::predicate) {
    return integrate_rectangle(f, region.theta_lo(), region.theta_hi(),
                               region.phi_lo(), region.phi_hi(), spec);
  }

  const GaussRule& rule = gauss_legendre(4);
  CompensatedSum value;
  CompensatedSum error;

  // Depth-first subdivision; a minimum depth keeps thin features from being
  // misclassified by the 9-point sampling.
  constexpr int kMinDepth = 5;
  std::vector<std::pair<Cell, int>> stack;
  stack.push_back({{region.theta_lo(), region.theta_hi(), region.phi_lo(),
                    region.phi_hi()},
                   0});
  while (!stack.empty()) {
    auto [cell, depth] = stack.back();
    stack.pop_back();

    CellClass cls = depth < kMinDepth ? CellClass::boundary : classify(region, cell);
    if (cls == CellClass::outside) continue;
    if (cls == CellClass::inside) {
      value.add(cell_gauss(f, cell, rule));
      continue;
    }
    if (depth >= kMinDepth && cell.area() < spec.boundary_cell_area) {
      // Unresolved boundary sliver: score by sampled coverage.
      int in = 0;
      const int n = 4;
      double fsum = 0.0;
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          const double t = cell.t0 + (i + 0.5) * (cell.t1 - cell.t0) / n;
          const double p = cell.p0 + (j + 0.5) * (cell.p1 - cell.p0) / n;
          if (region.contains(t, p)) {
            ++in;
            fsum += f(t, p);
          }
        }
      }
      if (in > 0) {
        value.add(cell.area() * fsum / (n * n));
        error.add(cell.area() * std::fabs(fsum / in));
      }
      continue;
    }
    const double tm = 0.5 * (cell.t0 + cell.t1);
    const double pm = 0.5 * (cell.p0 + cell.p1);
    stack.push_back({{cell.t0, tm, cell.p0, pm}, depth + 1});
    stack.push_back({{cell.t0, tm, pm, cell.p1}, depth + 1});
    stack.push_back({{tm, cell.t1, cell.p0, pm}, depth + 1});
    stack.push_back({{tm, cell.t1, pm, cell.p1}, depth + 1});
  }

  Integral2dResult result;
  result.value = value.value();
  result.error_estimate = error.value() + 1e-12 * std::max(1.0, std::fabs(result.value));
  return result;
}

double integrate_interval(const std::function<double(double)>& f, double lo,
                          double hi, int panels, int points) {
  if (panels < 1) throw DomainError("interval quadrature needs >= 1 panel");
  const GaussRule& rule = gauss_legendre(points);
  const double h = (hi - lo) / panels;
  CompensatedSum sum;
  for (int i = 0; i < panels; ++i) {
    const double a = lo + i * h;
    for (std::size_t n = 0; n < rule.nodes.size(); ++n) {
      const double x = a + 0.5 * h * (rule.nodes[n] + 1.0);
      sum.add(rule.weights[n] * f(x));
    }
  }
  return sum.value() * 0.5 * h;
}

}  // namespace volfield
