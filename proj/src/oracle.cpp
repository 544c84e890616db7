/*
   Copyright 2026 The ttweng Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include "ttw/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace ttw {

Coefficient apply_to_monomial(const OperatorExpr& x, TestFunction psi) {
  if (x.detached()) return Coefficient();
  const auto& f = x.field();
  Coefficient base = Coefficient::monomial(CyclotomicNumber::one(f),
                                           Monomial{psi.m, psi.n, 0, 0, 0});
  Coefficient acc = Coefficient::zero(f);
  for (const auto& [key, c] : x.terms()) {
    Coefficient t = base.substitute_group(key.g.rot, key.g.refl);
    for (int j = 0; j < key.q; ++j) t = t.d_phi();
    for (int j = 0; j < key.p; ++j) t = t.d_r();
    acc += c * t;
  }
  return acc;
}

namespace {

using cplx = std::complex<double>;
constexpr int kJetOrder = 4;  // plenty for second-order operators

// Mixed derivatives d_r^alpha d_phi^beta of one function on the whole
// dihedral orbit of the sample angle: orbit point (j, s) sits at angle
// (-1)^s phi0 + j pi/k, shared radius r0.
struct OrbitJets {
  int k = 0;
  double r0 = 0.0, phi0 = 0.0;
  std::vector<std::vector<cplx>> pts;  // [2k*2][(M+1)^2], index alpha*(M+1)+beta

  static int slot(int alpha, int beta) { return alpha * (kJetOrder + 1) + beta; }
  int points() const { return 4 * k; }
  double angle(int idx) const {
    int j = idx / 2, s = idx % 2;
    return (s ? -phi0 : phi0) + j * std::numbers::pi / k;
  }
};

OrbitJets make_zero(const OrbitJets& like) {
  OrbitJets z = like;
  for (auto& p : z.pts) std::fill(p.begin(), p.end(), cplx{0.0, 0.0});
  return z;
}

void accumulate(OrbitJets& dst, const OrbitJets& src, cplx scale) {
  for (int i = 0; i < dst.points(); ++i)
    for (std::size_t e = 0; e < dst.pts[i].size(); ++e) dst.pts[i][e] += scale * src.pts[i][e];
}

OrbitJets deriv_r(const OrbitJets& f) {
  OrbitJets out = make_zero(f);
  for (int i = 0; i < f.points(); ++i)
    for (int a = 0; a < kJetOrder; ++a)
      for (int b = 0; b <= kJetOrder; ++b)
        out.pts[i][OrbitJets::slot(a, b)] = f.pts[i][OrbitJets::slot(a + 1, b)];
  return out;
}

OrbitJets deriv_phi(const OrbitJets& f) {
  OrbitJets out = make_zero(f);
  for (int i = 0; i < f.points(); ++i)
    for (int a = 0; a <= kJetOrder; ++a)
      for (int b = 0; b < kJetOrder; ++b)
        out.pts[i][OrbitJets::slot(a, b)] = f.pts[i][OrbitJets::slot(a, b + 1)];
  return out;
}

// (R^t I^eps f)(theta) = f((-1)^eps (theta + t pi/k)); on the orbit this is a
// point permutation plus a sign twist on odd phi-derivatives.
OrbitJets apply_group(const OrbitJets& f, int t, int eps) {
  OrbitJets out = make_zero(f);
  int two_k = 2 * f.k;
  for (int i = 0; i < f.points(); ++i) {
    int j = i / 2, s = i % 2;
    int jt = j + t;
    // target angle (-1)^eps (sigma phi0 + (j+t) pi/k): the phi0 sign folds
    // into s2 and the grid offset reduces mod 2k.
    int s2 = eps ? 1 - s : s;
    int j2 = eps ? -jt : jt;
    j2 = ((j2 % two_k) + two_k) % two_k;
    int src = j2 * 2 + s2;
    for (int a = 0; a <= kJetOrder; ++a)
      for (int b = 0; b <= kJetOrder; ++b) {
        cplx v = f.pts[src][OrbitJets::slot(a, b)];
        if (eps && (b % 2 == 1)) v = -v;
        out.pts[i][OrbitJets::slot(a, b)] = v;
      }
  }
  return out;
}

long fact_binom(int n, int j) {
  long r = 1;
  for (int i = 0; i < j; ++i) r = r * (n - i) / (i + 1);
  return r;
}

// Analytic factor with known jets at every orbit point.
struct FactorJets {
  std::vector<std::vector<cplx>> pts;
};

OrbitJets mul_factor(const OrbitJets& f, const FactorJets& g) {
  OrbitJets out = make_zero(f);
  for (int i = 0; i < f.points(); ++i) {
    for (int a = 0; a <= kJetOrder; ++a)
      for (int b = 0; b <= kJetOrder; ++b) {
        cplx acc{0.0, 0.0};
        for (int x = 0; x <= a; ++x)
          for (int y = 0; y <= b; ++y) {
            cplx fv = f.pts[i][OrbitJets::slot(x, y)];
            cplx gv = g.pts[i][OrbitJets::slot(a - x, b - y)];
            if (fv == cplx{} || gv == cplx{}) continue;
            acc += static_cast<double>(fact_binom(a, x) * fact_binom(b, y)) * fv * gv;
          }
        out.pts[i][OrbitJets::slot(a, b)] = acc;
      }
  }
  return out;
}

FactorJets make_factor_r_power(const OrbitJets& like, int m, double scale) {
  FactorJets g;
  g.pts.assign(like.points(), std::vector<cplx>((kJetOrder + 1) * (kJetOrder + 1), cplx{}));
  for (int i = 0; i < like.points(); ++i) {
    double fall = scale;
    int e = m;
    for (int a = 0; a <= kJetOrder; ++a) {
      g.pts[i][OrbitJets::slot(a, 0)] = cplx{fall * std::pow(like.r0, e), 0.0};
      fall *= e;
      e -= 1;
    }
  }
  return g;
}

enum class TrigFactor { sin, cos, tan, cot };

FactorJets make_factor_trig(const OrbitJets& like, TrigFactor kind, int shift) {
  FactorJets g;
  g.pts.assign(like.points(), std::vector<cplx>((kJetOrder + 1) * (kJetOrder + 1), cplx{}));
  double step = std::numbers::pi / like.k;
  for (int i = 0; i < like.points(); ++i) {
    double th = like.angle(i) + shift * step;
    std::vector<double> d(kJetOrder + 1, 0.0);
    switch (kind) {
      case TrigFactor::sin:
      case TrigFactor::cos: {
        double s = std::sin(th), c = std::cos(th);
        double table[4] = {s, c, -s, -c};  // successive derivatives of sin
        int off = kind == TrigFactor::sin ? 0 : 1;
        for (int n = 0; n <= kJetOrder; ++n) d[n] = table[(n + off) % 4];
        break;
      }
      case TrigFactor::tan:
      case TrigFactor::cot: {
        // T' = 1 + T^2 for tan, C' = -(1 + C^2) for cot; higher orders by
        // Leibniz on the square.
        double sgn = kind == TrigFactor::tan ? 1.0 : -1.0;
        d[0] = kind == TrigFactor::tan ? std::tan(th) : 1.0 / std::tan(th);
        if (kJetOrder >= 1) d[1] = sgn * (1.0 + d[0] * d[0]);
        for (int n = 1; n < kJetOrder; ++n) {
          double acc = 0.0;
          for (int j = 0; j <= n; ++j) acc += fact_binom(n, j) * d[j] * d[n - j];
          d[n + 1] = sgn * acc;
        }
        break;
      }
    }
    for (int b = 0; b <= kJetOrder; ++b) g.pts[i][OrbitJets::slot(0, b)] = cplx{d[b], 0.0};
  }
  return g;
}

OrbitJets make_psi(const TTWParams& P, TestFunction psi, const SamplePoint& pt) {
  OrbitJets f;
  f.k = P.k;
  f.r0 = pt.r;
  f.phi0 = pt.phi;
  f.pts.assign(f.points(), std::vector<cplx>((kJetOrder + 1) * (kJetOrder + 1), cplx{}));
  for (int i = 0; i < f.points(); ++i) {
    double th = f.angle(i);
    cplx ang = std::exp(cplx{0.0, psi.n * th});
    for (int a = 0; a <= kJetOrder; ++a) {
      double radial = std::pow(pt.r, psi.m - a);
      double fall = 1.0;
      for (int x = 0; x < a; ++x) fall *= psi.m - x;
      for (int b = 0; b <= kJetOrder; ++b) {
        cplx iphase = std::pow(cplx{0.0, static_cast<double>(psi.n)}, b);
        f.pts[i][OrbitJets::slot(a, b)] = fall * radial * iphase * ang;
      }
    }
  }
  return f;
}

struct RawCalculus {
  const TTWParams& P;
  const SamplePoint& pt;

  OrbitJets Dr(const OrbitJets& f) const {
    OrbitJets out = deriv_r(f);
    OrbitJets mix = make_zero(f);
    for (int l = 0; l < P.k; ++l) {
      accumulate(mix, apply_group(f, 2 * l + 1, 1), cplx{pt.a, 0.0});
      accumulate(mix, apply_group(f, 2 * l, 1), cplx{pt.b, 0.0});
    }
    mix = mul_factor(mix, make_factor_r_power(f, -1, 1.0));
    accumulate(out, mix, cplx{-1.0, 0.0});
    return out;
  }

  OrbitJets Dphi(const OrbitJets& f) const {
    OrbitJets out = deriv_phi(f);
    for (int l = 0; l < P.k; ++l) {
      OrbitJets ta = mul_factor(apply_group(f, P.k + 2 * l, 1),
                                make_factor_trig(f, TrigFactor::tan, l));
      accumulate(out, ta, cplx{pt.a, 0.0});
      OrbitJets cb = mul_factor(apply_group(f, 2 * l, 1), make_factor_trig(f, TrigFactor::cot, l));
      accumulate(out, cb, cplx{-pt.b, 0.0});
    }
    return out;
  }

  OrbitJets A(const OrbitJets& f, long index, bool dagger) const {
    long lambda = index >= 0 ? index / P.k : -((-index + P.k - 1) / P.k);
    long i0 = index - lambda * P.k;
    double sign = (lambda % 2 == 0) ? 1.0 : -1.0;
    return pair_op(f, static_cast<int>(i0), dagger, false, sign);
  }

  OrbitJets B(const OrbitJets& f, long index, bool dagger) const {
    long lambda = index >= 0 ? index / P.k : -((-index + P.k - 1) / P.k);
    long i0 = index - lambda * P.k;
    double sign = (lambda % 2 == 0) ? 1.0 : -1.0;
    return pair_op(f, static_cast<int>(i0), dagger, true, sign);
  }

  OrbitJets pair_op(const OrbitJets& f, int i0, bool dagger, bool sine_profile,
                    double sign) const {
    double root = std::sqrt(2.0 * pt.w);
    OrbitJets drf = Dr(f);
    OrbitJets dpf = Dphi(f);
    TrigFactor radial = sine_profile ? TrigFactor::sin : TrigFactor::cos;
    TrigFactor angular = sine_profile ? TrigFactor::cos : TrigFactor::sin;
    double ang_sign = sine_profile ? 1.0 : -1.0;
    double deriv_sign = dagger ? -1.0 : 1.0;

    OrbitJets core = mul_factor(f, make_factor_r_power(f, 1, pt.w));
    accumulate(core, drf, cplx{deriv_sign, 0.0});
    core = mul_factor(core, make_factor_trig(f, radial, i0));
    OrbitJets ang = mul_factor(mul_factor(dpf, make_factor_trig(f, angular, i0)),
                               make_factor_r_power(f, -1, 1.0));
    accumulate(core, ang, cplx{ang_sign * deriv_sign, 0.0});
    for (auto& p : core.pts)
      for (auto& v : p) v *= sign / root;
    return core;
  }

  OrbitJets H(const OrbitJets& f, long index) const {
    OrbitJets t1 = A(A(f, index, true), index, false);
    OrbitJets t2 = A(A(f, index, false), index, true);
    accumulate(t1, t2, cplx{1.0, 0.0});
    for (auto& p : t1.pts)
      for (auto& v : p) v *= 0.5;
    return t1;
  }

  OrbitJets Hext(const OrbitJets& f) const {
    OrbitJets drf = Dr(f);
    OrbitJets out = Dr(drf);
    for (auto& p : out.pts)
      for (auto& v : p) v = -v;
    OrbitJets bracket = drf;
    for (int l = 0; l < P.k; ++l) {
      accumulate(bracket, apply_group(drf, 2 * l + 1, 1), cplx{2.0 * pt.a, 0.0});
      accumulate(bracket, apply_group(drf, 2 * l, 1), cplx{2.0 * pt.b, 0.0});
    }
    accumulate(out, mul_factor(bracket, make_factor_r_power(f, -1, 1.0)), cplx{-1.0, 0.0});
    accumulate(out, mul_factor(Dphi(Dphi(f)), make_factor_r_power(f, -2, 1.0)), cplx{-1.0, 0.0});
    accumulate(out, mul_factor(f, make_factor_r_power(f, 2, pt.w * pt.w)), cplx{1.0, 0.0});
    return out;
  }

  OrbitJets Xext(const OrbitJets& f) const {
    OrbitJets out = Dphi(Dphi(f));
    for (auto& p : out.pts)
      for (auto& v : p) v = -v;
    return out;
  }
};

}  // namespace

const char* raw_op_name(RawOp op) {
  switch (op) {
    case RawOp::zero: return "zero";
    case RawOp::Dr: return "Dr";
    case RawOp::Dphi: return "Dphi";
    case RawOp::A: return "A";
    case RawOp::Adag: return "Adag";
    case RawOp::B: return "B";
    case RawOp::Bdag: return "Bdag";
    case RawOp::H: return "H";
    case RawOp::Hext: return "Hext";
    case RawOp::Xext: return "Xext";
  }
  return "?";
}

std::complex<double> numeric_apply(const TTWParams& P, RawOp op, long index, TestFunction psi,
                                   const SamplePoint& pt) {
  OrbitJets f = make_psi(P, psi, pt);
  RawCalculus calc{P, pt};
  OrbitJets out = make_zero(f);
  switch (op) {
    case RawOp::zero: break;
    case RawOp::Dr: out = calc.Dr(f); break;
    case RawOp::Dphi: out = calc.Dphi(f); break;
    case RawOp::A: out = calc.A(f, index, false); break;
    case RawOp::Adag: out = calc.A(f, index, true); break;
    case RawOp::B: out = calc.B(f, index, false); break;
    case RawOp::Bdag: out = calc.B(f, index, true); break;
    case RawOp::H: out = calc.H(f, index); break;
    case RawOp::Hext: out = calc.Hext(f); break;
    case RawOp::Xext: out = calc.Xext(f); break;
  }
  return out.pts[0][OrbitJets::slot(0, 0)];
}

SamplePoint random_safe_point(const TTWParams& P, std::mt19937_64& rng, double margin) {
  std::uniform_real_distribution<double> radius(0.6, 1.6);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  std::uniform_real_distribution<double> coupling(0.3, 1.7);
  double cell = std::numbers::pi / (2.0 * P.k);
  SamplePoint pt;
  pt.margin = margin;
  pt.r = radius(rng);
  pt.a = coupling(rng);
  pt.b = coupling(rng);
  pt.w = coupling(rng);
  do {
    pt.phi = angle(rng);
  } while (std::abs(pt.phi / cell - std::round(pt.phi / cell)) * cell < margin);
  return pt;
}

namespace {

OperatorExpr symbolic_counterpart(const TTWParams& P, RawOp op, long index) {
  switch (op) {
    case RawOp::zero: return OperatorExpr::zero(P.field);
    case RawOp::Dr: return build_Dr(P);
    case RawOp::Dphi: return build_Dphi(P);
    case RawOp::A: return build_A(P, index, false);
    case RawOp::Adag: return build_A(P, index, true);
    case RawOp::B: return build_B(P, index, false);
    case RawOp::Bdag: return build_B(P, index, true);
    case RawOp::H: return build_H(P, index);
    case RawOp::Hext: return build_extended_H(P);
    case RawOp::Xext: return build_extended_X(P);
  }
  throw std::logic_error("unreachable raw op");
}

const std::vector<TestFunction>& default_test_functions() {
  static const std::vector<TestFunction> fns = {
      {0, 0}, {1, 1}, {2, -1}, {0, 2}, {-1, 1}, {2, 3}, {3, -2}, {1, -3},
  };
  return fns;
}

}  // namespace

VerificationReport crosscheck(const TTWParams& P, RawOp op, long index, int n_points,
                              int n_functions, std::uint64_t seed) {
  auto t0 = std::chrono::steady_clock::now();
  OperatorExpr sym = symbolic_counterpart(P, op, index);
  const auto& fns = default_test_functions();
  n_functions = std::min<int>(n_functions, static_cast<int>(fns.size()));

  std::mt19937_64 rng(seed);
  double max_dev = 0.0;
  bool finite = true;
  for (int fi = 0; fi < n_functions; ++fi) {
    Coefficient applied = apply_to_monomial(sym, fns[fi]);
    std::mt19937_64 rng_pts(rng());  // one stream per test function
    for (int pi = 0; pi < n_points; ++pi) {
      SamplePoint pt = random_safe_point(P, rng_pts);
      EvalPoint ep{pt.r, pt.phi, pt.a, pt.b, pt.w, pt.margin};
      cplx s = applied.eval(ep);
      cplx n = numeric_apply(P, op, index, fns[fi], pt);
      double scale = std::max({std::abs(s), std::abs(n), 1.0});
      double dev = std::abs(s - n) / scale;
      if (!std::isfinite(dev)) finite = false;
      max_dev = std::max(max_dev, dev);
    }
  }

  std::string name = std::string("crosscheck-") + raw_op_name(op);
  if (op == RawOp::A || op == RawOp::Adag || op == RawOp::B || op == RawOp::Bdag ||
      op == RawOp::H)
    name += "-" + std::to_string(index);
  std::ostringstream detail;
  detail << "max relative deviation " << max_dev << " over " << n_points << " points x "
         << n_functions << " functions";
  VerificationReport r = check_condition(name, P.k, finite && max_dev <= 1e-8, detail.str());
  r.seed = seed;
  r.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

std::vector<VerificationReport> check_oracle(const TTWParams& P, int n_points, int n_functions,
                                             std::uint64_t seed) {
  std::vector<VerificationReport> out;
  out.push_back(crosscheck(P, RawOp::Dr, 0, n_points, n_functions, seed));
  out.push_back(crosscheck(P, RawOp::Dphi, 0, n_points, n_functions, seed + 1));
  for (int i = 0; i < P.k; ++i) {
    out.push_back(crosscheck(P, RawOp::A, i, n_points, n_functions, seed + 2 + i));
    out.push_back(crosscheck(P, RawOp::B, i, n_points, n_functions, seed + 100 + i));
    out.push_back(crosscheck(P, RawOp::H, i, n_points, n_functions, seed + 200 + i));
  }
  out.push_back(crosscheck(P, RawOp::Hext, 0, n_points, n_functions, seed + 300));
  out.push_back(crosscheck(P, RawOp::Xext, 0, n_points, n_functions, seed + 301));
  std::sort(out.begin(), out.end(),
            [](const VerificationReport& x, const VerificationReport& y) { return x.name < y.name; });
  return out;
}

}  // namespace ttw
