#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "charts.hpp"
#include "error.hpp"
#include "polytope.hpp"
#include "rational.hpp"

namespace tropex {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

inline Complex to_complex(const GaussianRational& c) { return {c.re.get_d(), c.im.get_d()}; }

// Polynomial in smooth coordinates zeta_1..zeta_n and their conjugates.
// An exponent vector has length 2n: powers of zeta_i, then powers of conj(zeta_i).
class SmoothPoly {
 public:
  using Exponent = std::vector<unsigned>;

  SmoothPoly() = default;
  explicit SmoothPoly(std::size_t n) : n_(n) {}

  static SmoothPoly constant(std::size_t n, const GaussianRational& c) {
    SmoothPoly p(n);
    p.add_term(Exponent(2 * n, 0), c);
    return p;
  }

  static SmoothPoly variable(std::size_t n, std::size_t i, bool conjugate = false) {
    SmoothPoly p(n);
    Exponent e(2 * n, 0);
    e[conjugate ? n + i : i] = 1;
    p.add_term(e, GaussianRational(1));
    return p;
  }

  std::size_t n() const { return n_; }
  const std::map<Exponent, GaussianRational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const Exponent& e, const GaussianRational& c) {
    if (e.size() != 2 * n_) fail(ErrorCode::DimensionMismatch, "exponent length does not match variable count");
    if (c.is_zero()) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_.emplace(e, c);
      return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }

  unsigned degree() const {
    unsigned d = 0;
    for (const auto& [e, c] : terms_) {
      unsigned s = 0;
      for (auto x : e) s += x;
      d = std::max(d, s);
    }
    return d;
  }

  // Monomials involving any of the marked variables (or their conjugates) are dropped.
  SmoothPoly without(const std::vector<bool>& vanish) const {
    SmoothPoly out(n_);
    for (const auto& [e, c] : terms_) {
      bool keep = true;
      for (std::size_t i = 0; i < n_ && keep; ++i)
        if (vanish[i] && (e[i] > 0 || e[n_ + i] > 0)) keep = false;
      if (keep) out.terms_.emplace(e, c);
    }
    return out;
  }

  // Multiplies each monomial by a scalar depending on its exponent.
  SmoothPoly scaled(const std::function<GaussianRational(const Exponent&)>& factor) const {
    SmoothPoly out(n_);
    for (const auto& [e, c] : terms_) out.add_term(e, c * factor(e));
    return out;
  }

  Complex operator()(const ComplexVector& z) const {
    Complex sum = 0;
    for (const auto& [e, c] : terms_) {
      Complex term = to_complex(c);
      for (std::size_t i = 0; i < n_; ++i) {
        for (unsigned k = 0; k < e[i]; ++k) term *= z[i];
        for (unsigned k = 0; k < e[n_ + i]; ++k) term *= std::conj(z[i]);
      }
      sum += term;
    }
    return sum;
  }

  // Double-precision evaluator with coefficients converted once.
  std::function<Complex(const ComplexVector&)> compiled() const {
    struct Mono {
      Complex c;
      std::vector<std::pair<std::size_t, unsigned>> zs, conjs;
    };
    std::vector<Mono> monos;
    for (const auto& [e, c] : terms_) {
      Mono m{to_complex(c), {}, {}};
      for (std::size_t i = 0; i < n_; ++i) {
        if (e[i]) m.zs.emplace_back(i, e[i]);
        if (e[n_ + i]) m.conjs.emplace_back(i, e[n_ + i]);
      }
      monos.push_back(std::move(m));
    }
    return [monos](const ComplexVector& z) {
      Complex sum = 0;
      for (const auto& m : monos) {
        Complex term = m.c;
        for (const auto& [i, k] : m.zs)
          for (unsigned r = 0; r < k; ++r) term *= z[i];
        for (const auto& [i, k] : m.conjs)
          for (unsigned r = 0; r < k; ++r) term *= std::conj(z[i]);
        sum += term;
      }
      return sum;
    };
  }

  friend SmoothPoly operator+(const SmoothPoly& a, const SmoothPoly& b) {
    SmoothPoly out = a;
    for (const auto& [e, c] : b.terms_) out.add_term(e, c);
    return out;
  }
  friend SmoothPoly operator-(const SmoothPoly& a, const SmoothPoly& b) {
    SmoothPoly out = a;
    for (const auto& [e, c] : b.terms_) out.add_term(e, -c);
    return out;
  }
  friend SmoothPoly operator*(const SmoothPoly& a, const SmoothPoly& b) {
    SmoothPoly out(a.n_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        Exponent e(ea.size());
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
        out.add_term(e, ca * cb);
      }
    return out;
  }
  friend bool operator==(const SmoothPoly& a, const SmoothPoly& b) { return a.n_ == b.n_ && a.terms_ == b.terms_; }
  friend bool operator!=(const SmoothPoly& a, const SmoothPoly& b) { return !(a == b); }
  friend bool operator<(const SmoothPoly& a, const SmoothPoly& b) {
    if (a.n_ != b.n_) return a.n_ < b.n_;
    return a.terms_ < b.terms_;
  }

 private:
  std::size_t n_ = 0;
  std::map<Exponent, GaussianRational> terms_;
};

using BlackBox = std::function<Complex(const ComplexVector&)>;

// Either an exact polynomial or a sampled function of the smooth coordinates.
class TestFunction {
 public:
  TestFunction(SmoothPoly p) : f_(std::move(p)) {}  // NOLINT(google-explicit-constructor)
  TestFunction(BlackBox b) : f_(std::move(b)) {}    // NOLINT(google-explicit-constructor)

  bool is_polynomial() const { return std::holds_alternative<SmoothPoly>(f_); }
  const SmoothPoly& polynomial() const { return std::get<SmoothPoly>(f_); }

  Complex operator()(const ComplexVector& z) const {
    if (is_polynomial()) return polynomial()(z);
    return std::get<BlackBox>(f_)(z);
  }

  BlackBox as_black_box() const {
    if (is_polynomial()) return polynomial().compiled();
    return std::get<BlackBox>(f_);
  }

 private:
  std::variant<SmoothPoly, BlackBox> f_;
};

// Basis monomials that vanish on the stratum, i.e. have positive tropical exponent there.
inline std::vector<bool> vanishing_set(const Stratum& s, const Chart& chart) {
  const auto& strata = chart.strata();
  bool known = std::any_of(strata.begin(), strata.end(), [&](const Stratum& t) { return t.tight == s.tight; });
  if (!known) fail(ErrorCode::NotAStratum, "not a stratum of the chart polytope");
  std::vector<bool> out;
  for (const auto& b : chart.basis()) out.push_back(b.a + dot(b.alpha, s.relint) > 0);
  return out;
}

inline TestFunction e_S(const TestFunction& f, const Stratum& s, const Chart& chart) {
  std::vector<bool> vanish = vanishing_set(s, chart);
  if (f.is_polynomial()) return f.polynomial().without(vanish);
  BlackBox g = f.as_black_box();
  return BlackBox([g, vanish](const ComplexVector& z) {
    ComplexVector w = z;
    for (std::size_t i = 0; i < w.size(); ++i)
      if (vanish[i]) w[i] = 0;
    return g(w);
  });
}

// e_{S_1} ∘ ... ∘ e_{S_k}; the identity for the empty collection.
inline TestFunction e_I(const TestFunction& f, const std::vector<Stratum>& I, const Chart& chart) {
  TestFunction g = f;
  for (const auto& s : I) g = e_S(g, s, chart);
  return g;
}

// prod over S in I of (id - e_S), applied to f.
inline TestFunction delta_I(const TestFunction& f, const std::vector<Stratum>& I, const Chart& chart) {
  if (I.empty()) fail(ErrorCode::InvalidArgument, "delta needs a nonempty collection of strata");
  if (f.is_polynomial()) {
    SmoothPoly g = f.polynomial();
    for (const auto& s : I) g = g - e_S(g, s, chart).polynomial();
    return g;
  }
  std::vector<std::vector<bool>> vanish;
  for (const auto& s : I) vanish.push_back(vanishing_set(s, chart));
  BlackBox g = f.as_black_box();
  return BlackBox([g, vanish](const ComplexVector& z) {
    Complex sum = 0;
    std::size_t k = vanish.size();
    for (unsigned long mask = 0; mask < (1UL << k); ++mask) {
      ComplexVector w = z;
      int sgn = 1;
      for (std::size_t j = 0; j < k; ++j)
        if (mask & (1UL << j)) {
          sgn = -sgn;
          for (std::size_t i = 0; i < w.size(); ++i)
            if (vanish[j][i]) w[i] = 0;
        }
      sum += static_cast<double>(sgn) * g(w);
    }
    return sum;
  });
}

// Generators of the monomials fixed by delta_I, as exponent vectors over the chart basis.
// w_I is the sum of their absolute values.
struct WeightDescriptor {
  std::vector<IntVector> generators;

  double operator()(const ComplexVector& z) const {
    if (generators.empty()) return 1.0;
    double sum = 0;
    for (const auto& g : generators) {
      double m = 1;
      for (std::size_t i = 0; i < g.size(); ++i)
        if (g[i] != 0) m *= std::pow(std::abs(z[i]), g[i].get_d());
      sum += m;
    }
    return sum;
  }
};

inline WeightDescriptor weight_w_I(const std::vector<Stratum>& I, const Chart& chart) {
  std::size_t n = chart.basis().size();
  if (I.empty()) return {};
  std::vector<std::vector<bool>> vanish;
  for (const auto& s : I) {
    vanish.push_back(vanishing_set(s, chart));
    if (std::none_of(vanish.back().begin(), vanish.back().end(), [](bool b) { return b; }))
      fail(ErrorCode::InvalidArgument, "no smooth monomial vanishes on a stratum of the collection");
  }
  // minimal sets of basis monomials meeting every vanishing set
  std::vector<std::vector<std::size_t>> transversals;
  std::function<void(std::size_t, std::vector<std::size_t>&)> grow = [&](std::size_t j, std::vector<std::size_t>& chosen) {
    if (j == vanish.size()) {
      transversals.push_back(chosen);
      return;
    }
    for (auto c : chosen)
      if (vanish[j][c]) {
        grow(j + 1, chosen);
        return;
      }
    for (std::size_t i = 0; i < n; ++i)
      if (vanish[j][i]) {
        chosen.push_back(i);
        grow(j + 1, chosen);
        chosen.pop_back();
      }
  };
  std::vector<std::size_t> chosen;
  grow(0, chosen);
  std::set<IntVector> candidates;
  for (auto& t : transversals) {
    IntVector e(n, Integer(0));
    for (auto i : t) e[i] = 1;
    candidates.insert(e);
  }
  // drop a candidate that is another candidate times a smooth monomial
  auto asMonomial = [&](const IntVector& e) {
    SmoothMonomial m{Rational(0), IntVector(chart.m(), Integer(0))};
    for (std::size_t i = 0; i < n; ++i) {
      m.a += e[i] * chart.basis()[i].a;
      for (std::size_t j = 0; j < chart.m(); ++j) m.alpha[j] += e[i] * chart.basis()[i].alpha[j];
    }
    return m;
  };
  WeightDescriptor out;
  for (const auto& c : candidates) {
    SmoothMonomial mc = asMonomial(c);
    bool redundant = false;
    for (const auto& g : candidates) {
      if (g == c) continue;
      SmoothMonomial mg = asMonomial(g);
      IntVector rest(chart.m());
      for (std::size_t j = 0; j < chart.m(); ++j) rest[j] = mc.alpha[j] - mg.alpha[j];
      auto ar = minimal_offset(chart.polytope(), rest);
      if (ar && mc.a - mg.a >= *ar && (mg < mc || !(mc.a - mg.a == *ar && is_zero(rest)))) {
        redundant = true;
        break;
      }
    }
    if (!redundant) out.generators.push_back(c);
  }
  return out;
}

// Standard-basis derivatives: r d/dr and d/dtheta in each exploded coordinate.
inline std::vector<TestFunction> gradient(const TestFunction& f, const Chart& chart, double step = 1e-4) {
  std::size_t n = chart.basis().size(), m = chart.m();
  std::vector<TestFunction> out;
  for (std::size_t j = 0; j < m; ++j) {
    if (f.is_polynomial()) {
      const SmoothPoly& p = f.polynomial();
      out.push_back(p.scaled([&](const SmoothPoly::Exponent& e) {
        Integer s = 0;
        for (std::size_t i = 0; i < n; ++i) s += chart.basis()[i].alpha[j] * (e[i] + e[n + i]);
        return GaussianRational(Rational(s));
      }));
      out.push_back(p.scaled([&](const SmoothPoly::Exponent& e) {
        Integer s = 0;
        for (std::size_t i = 0; i < n; ++i)
          s += chart.basis()[i].alpha[j] * (static_cast<long>(e[i]) - static_cast<long>(e[n + i]));
        return GaussianRational(Rational(0), Rational(s));
      }));
      continue;
    }
    BlackBox g = f.as_black_box();
    std::vector<double> weights;
    for (const auto& b : chart.basis()) weights.push_back(b.alpha[j].get_d());
    for (bool angular : {false, true}) {
      out.push_back(BlackBox([g, weights, angular, step](const ComplexVector& z) {
        ComplexVector plus = z, minus = z;
        for (std::size_t i = 0; i < z.size(); ++i) {
          Complex up = angular ? std::polar(1.0, weights[i] * step) : Complex(std::exp(weights[i] * step), 0);
          Complex down = angular ? std::polar(1.0, -weights[i] * step) : Complex(std::exp(-weights[i] * step), 0);
          plus[i] *= up;
          minus[i] *= down;
        }
        return (g(plus) - g(minus)) / (2 * step);
      }));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Sampling

// |zeta_i| <= radii[i] for each basis monomial.
struct Region {
  std::vector<double> radii;
};

namespace detail {

struct SamplePoint {
  std::size_t stratum;
  std::vector<double> logRadius;  // per exploded coordinate
  std::vector<double> angle;
};

class ChartSampler {
 public:
  ChartSampler(const Chart& chart, Region region) : chart_(chart), region_(std::move(region)) {
    if (region_.radii.size() != chart.basis().size())
      fail(ErrorCode::EmptyRegion, "region needs one radius per basis monomial");
    for (double r : region_.radii)
      if (!(r > 0)) fail(ErrorCode::EmptyRegion, "region radii must be positive");
    for (const auto& s : chart.strata()) vanish_.push_back(vanishing_set(s, chart));
    for (const auto& b : chart.basis()) {
      alpha_.emplace_back();
      for (const auto& x : b.alpha) alpha_.back().push_back(x.get_d());
    }
  }

  std::size_t strata() const { return vanish_.size(); }

  // Exploded coordinates that change some monomial not vanishing on the stratum.
  std::vector<std::size_t> active(std::size_t s) const {
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < chart_.m(); ++j)
      for (std::size_t i = 0; i < chart_.basis().size(); ++i)
        if (!vanish_[s][i] && chart_.basis()[i].alpha[j] != 0) {
          out.push_back(j);
          break;
        }
    return out;
  }

  bool negative_power(std::size_t s, std::size_t j) const {
    for (std::size_t i = 0; i < chart_.basis().size(); ++i)
      if (!vanish_[s][i] && chart_.basis()[i].alpha[j] < 0) return true;
    return false;
  }

  ComplexVector coords(const SamplePoint& p) const {
    ComplexVector z(chart_.basis().size());
    for (std::size_t i = 0; i < z.size(); ++i) {
      if (vanish_[p.stratum][i]) {
        z[i] = 0;
        continue;
      }
      double lr = 0, th = 0;
      for (std::size_t j = 0; j < chart_.m(); ++j) {
        lr += alpha_[i][j] * p.logRadius[j];
        th += alpha_[i][j] * p.angle[j];
      }
      z[i] = std::polar(std::exp(lr), th);
    }
    return z;
  }

  bool inside(const ComplexVector& z) const {
    for (std::size_t i = 0; i < z.size(); ++i)
      if (std::abs(z[i]) > region_.radii[i] * (1 + 1e-12)) return false;
    return true;
  }

  // Deterministic Halton sample of 64 N^2 points per stratum in polar coordinates of the active
  // exploded coordinates. Half of the radii sit on the circle of radius rmax and the rest are
  // area-uniform in the disc; coordinates entering some monomial with a negative power are
  // log-uniform in [rmax / 16N, 16N rmax]. When no coordinate has a negative power, a regular
  // grid of 4N angles per coordinate on the torus of radius rmax is added.
  std::vector<SamplePoint> grid(int N) const {
    static constexpr unsigned primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53};
    auto halton = [](unsigned long i, unsigned base) {
      double f = 1, r = 0;
      for (; i > 0; i /= base) {
        f /= base;
        r += f * static_cast<double>(i % base);
      }
      return r;
    };
    std::vector<SamplePoint> out;
    double rmax = *std::max_element(region_.radii.begin(), region_.radii.end());
    double span = std::log(16.0 * N);
    for (std::size_t s = 0; s < vanish_.size(); ++s) {
      std::vector<std::size_t> act = active(s);
      if (2 * act.size() > std::size(primes)) fail(ErrorCode::DimTooLarge, "too many active coordinates to sample");
      unsigned long count = act.empty() ? 1 : 64UL * static_cast<unsigned long>(N) * static_cast<unsigned long>(N);
      for (unsigned long k = 1; k <= count; ++k) {
        SamplePoint p{s, std::vector<double>(chart_.m(), 0.0), std::vector<double>(chart_.m(), 0.0)};
        for (std::size_t t = 0; t < act.size(); ++t) {
          double u = halton(k, primes[2 * t]);
          if (negative_power(s, act[t]))
            p.logRadius[act[t]] = std::log(rmax) + span * (2 * u - 1);
          else if (u < 0.5)
            p.logRadius[act[t]] = std::log(rmax);
          else
            p.logRadius[act[t]] = std::log(rmax) + 0.5 * std::log(std::max(2 * u - 1, 1e-12));
          p.angle[act[t]] = 2 * M_PI * halton(k, primes[2 * t + 1]);
        }
        if (inside(coords(p))) out.push_back(std::move(p));
      }
      bool bounded = std::none_of(act.begin(), act.end(), [&](std::size_t j) { return negative_power(s, j); });
      if (!bounded || act.empty()) continue;
      std::vector<int> idx(act.size(), 0);
      while (true) {
        SamplePoint p{s, std::vector<double>(chart_.m(), 0.0), std::vector<double>(chart_.m(), 0.0)};
        for (std::size_t t = 0; t < act.size(); ++t) {
          p.logRadius[act[t]] = std::log(rmax);
          p.angle[act[t]] = 2 * M_PI * idx[t] / (4 * N);
        }
        if (inside(coords(p))) out.push_back(std::move(p));
        std::size_t t = 0;
        for (; t < act.size(); ++t) {
          if (++idx[t] < 4 * N) break;
          idx[t] = 0;
        }
        if (t == act.size()) break;
      }
    }
    return out;
  }

  // Local pattern search maximizing value over the coordinates active on the point's stratum.
  SamplePoint polish(SamplePoint p, const std::function<double(const ComplexVector&)>& value, double step) const {
    std::vector<std::size_t> act = active(p.stratum);
    double best = value(coords(p));
    double rmax = *std::max_element(region_.radii.begin(), region_.radii.end());
    int fine = static_cast<int>(std::lround(1 / step));
    auto consider = [&](const SamplePoint& q) {
      ComplexVector z = coords(q);
      if (!inside(z)) return;
      double v = value(z);
      if (v > best) {
        best = v;
        p = q;
      }
    };
    // coordinate-wise scans over angle and radius
    for (int round = 0; round < 3; ++round)
      for (auto j : act) {
        SamplePoint base = p;
        for (int l = 0; l < 16 * fine; ++l) {
          SamplePoint q = base;
          q.angle[j] = 2 * M_PI * l / (16 * fine);
          consider(q);
        }
        base = p;
        for (int l = 1; l <= 4 * fine; ++l) {
          SamplePoint q = base;
          q.logRadius[j] = std::log(rmax * l / (4 * fine));
          consider(q);
        }
      }
    for (int iter = 0; iter < 200 && step > 1e-7; ++iter) {
      bool improved = false;
      for (auto j : act)
        for (int which = 0; which < 2; ++which)
          for (double dir : {1.0, -1.0}) {
            SamplePoint q = p;
            (which == 0 ? q.logRadius[j] : q.angle[j]) += dir * step;
            ComplexVector z = coords(q);
            if (!inside(z)) continue;
            double v = value(z);
            if (v > best) {
              best = v;
              p = std::move(q);
              improved = true;
            }
          }
      if (!improved) step /= 2;
    }
    return p;
  }

 private:
  const Chart& chart_;
  Region region_;
  std::vector<std::vector<bool>> vanish_;
  std::vector<std::vector<double>> alpha_;
};

// Sup of value over the grid, refined by local search from the best few grid points.
inline double grid_sup(const ChartSampler& sampler, int N, const std::function<double(const ComplexVector&)>& value) {
  std::vector<SamplePoint> pts = sampler.grid(N);
  if (pts.empty()) fail(ErrorCode::EmptyRegion, "no grid point lies in the region");
  std::vector<std::pair<double, std::size_t>> scored;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    double v = value(sampler.coords(pts[i]));
    if (std::isfinite(v)) scored.emplace_back(v, i);
  }
  if (scored.empty()) return 0;
  std::size_t keep = std::min<std::size_t>(8, scored.size());
  std::partial_sort(scored.begin(), scored.begin() + static_cast<long>(keep), scored.end(),
                    [](const auto& a, const auto& b) { return a.first > b.first; });
  double best = scored[0].first;
  for (std::size_t k = 0; k < keep; ++k) {
    SamplePoint p = sampler.polish(pts[scored[k].second], value, 1.0 / N);
    double v = value(sampler.coords(p));
    if (std::isfinite(v)) best = std::max(best, v);
  }
  return best;
}

inline std::string collection_label(const std::vector<Stratum>& I) {
  std::string s = "{";
  for (std::size_t k = 0; k < I.size(); ++k) {
    s += k ? ",[" : "[";
    for (std::size_t j = 0; j < I[k].tight.size(); ++j) s += (j ? "," : "") + std::to_string(I[k].tight[j]);
    s += "]";
  }
  return s + "}";
}

}  // namespace detail

// Strata that some basis monomial vanishes on.
inline std::vector<Stratum> nonzero_strata(const Chart& chart) {
  std::vector<Stratum> out;
  for (const auto& s : chart.strata()) {
    auto v = vanishing_set(s, chart);
    if (std::any_of(v.begin(), v.end(), [](bool b) { return b; })) out.push_back(s);
  }
  return out;
}

inline std::vector<std::vector<Stratum>> collections_up_to(const std::vector<Stratum>& strata, std::size_t k) {
  std::vector<std::vector<Stratum>> out;
  std::size_t n = strata.size();
  for (unsigned long mask = 1; mask < (1UL << n); ++mask) {
    std::vector<Stratum> c;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1UL << i)) c.push_back(strata[i]);
    if (c.size() <= k) out.push_back(std::move(c));
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });
  return out;
}

struct SeminormEstimate {
  double value = 0;
  double gradientPart = 0;
  std::map<std::string, double> perI;  // sup of |w_I^-delta Delta_I f|, "{}" for the sup of |f|
};

inline SeminormEstimate seminorm_estimate(const TestFunction& f, int k, const Rational& delta, const Chart& chart,
                                          const Region& region, int N) {
  if (!(delta > 0 && delta < 1)) fail(ErrorCode::BadDelta, "delta must lie strictly between 0 and 1");
  if (k < 0) fail(ErrorCode::InvalidArgument, "k must be nonnegative");
  if (N < 1) fail(ErrorCode::InvalidArgument, "grid resolution must be positive");
  detail::ChartSampler sampler(chart, region);
  double d = delta.get_d();
  SeminormEstimate out;
  std::vector<std::pair<BlackBox, WeightDescriptor>> parts{{f.as_black_box(), WeightDescriptor{}}};
  std::vector<std::string> labels{"{}"};
  for (const auto& I : collections_up_to(nonzero_strata(chart), static_cast<std::size_t>(k))) {
    parts.emplace_back(delta_I(f, I, chart).as_black_box(), weight_w_I(I, chart));
    labels.push_back(detail::collection_label(I));
  }
  auto total = [&](const ComplexVector& z) {
    double s = 0;
    for (const auto& [g, w] : parts) {
      double v = std::abs(g(z));
      if (v == 0) continue;
      double wz = w(z);
      if (wz == 0) return std::numeric_limits<double>::quiet_NaN();
      s += v / std::pow(wz, d);
    }
    return s;
  };
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const auto& [g, w] = parts[i];
    out.perI[labels[i]] = detail::grid_sup(sampler, N, [&](const ComplexVector& z) {
      double v = std::abs(g(z));
      if (v == 0) return 0.0;
      double wz = w(z);
      return wz == 0 ? std::numeric_limits<double>::quiet_NaN() : v / std::pow(wz, d);
    });
  }
  double sup = detail::grid_sup(sampler, N, total);
  if (k > 0)
    for (const auto& g : gradient(f, chart)) out.gradientPart += seminorm_estimate(g, k - 1, delta, chart, region, N).value;
  out.value = out.gradientPart + sup;
  return out;
}

struct DeltaBound {
  double supRatio = 0;
  double coarse = 0;
  bool stable = false;
};

// Sup of |Delta_I f| / w_I at resolutions N and 2N (the finer sample contains the coarser);
// stable when they agree within 5%.
inline DeltaBound verify_delta_bound(const TestFunction& f, const std::vector<Stratum>& I, const Chart& chart,
                                     const Region& region, int N) {
  if (N < 1) fail(ErrorCode::InvalidArgument, "grid resolution must be positive");
  detail::ChartSampler sampler(chart, region);
  TestFunction d = delta_I(f, I, chart);
  WeightDescriptor w = weight_w_I(I, chart);
  if (d.is_polynomial() && d.polynomial().is_zero()) return {0, 0, true};
  BlackBox g = d.as_black_box();
  auto ratio = [&](const ComplexVector& z) {
    double wz = w(z);
    if (wz == 0) return std::numeric_limits<double>::quiet_NaN();
    return std::abs(g(z)) / wz;
  };
  DeltaBound out;
  out.coarse = detail::grid_sup(sampler, N, ratio);
  out.supRatio = std::max(out.coarse, detail::grid_sup(sampler, 2 * N, ratio));
  double scale = std::max(std::abs(out.supRatio), std::abs(out.coarse));
  out.stable = std::isfinite(out.supRatio) && (scale == 0 || std::abs(out.supRatio - out.coarse) <= 0.05 * scale);
  return out;
}

}  // namespace tropex
