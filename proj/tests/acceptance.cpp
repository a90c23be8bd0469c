// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#define DOCTEST_CONFIG_DISABLE
#include "oracles.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "recon/characters.hpp"
#include "recon/farey.hpp"
#include "recon/laminations.hpp"
#include "recon/loopcalc.hpp"
#include "recon/mcg.hpp"
#include "recon/polygons.hpp"

using namespace recon;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Records the first failure and keeps the worst measured value.
struct Tracker {
  bool pass = true;
  std::string first_failure;
  void require(bool ok, const std::string& what) {
    if (!ok && pass) first_failure = what;
    pass = pass && ok;
  }
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", x);
  return buf;
}

long long ll(const Integer& x) { return x.convert_to<long long>(); }

// |p q' − p' q| straight from the coordinates.
long long raw_det(const Slope& a, const Slope& b) {
  return std::llabs(ll(a.p()) * ll(b.q()) - ll(a.q()) * ll(b.p()));
}

Outcome farey_exactness() {
  Tracker t;
  const auto all = enumerate_slopes(20);
  t.require(all.size() == oracle::count_slopes(20), "slope count");
  std::size_t pairs = 0;
  for (const auto& a : all) {
    for (const auto& b : all) {
      const Integer d = det(a, b);
      t.require(d == raw_det(a, b), "det " + a.str() + " " + b.str());
      if (d != 1) continue;
      ++pairs;
      const auto [g, gp] = completions(a, b);
      t.require(g != gp && raw_det(g, a) == 1 && raw_det(g, b) == 1 && raw_det(gp, a) == 1 && raw_det(gp, b) == 1,
                "completions " + a.str() + " " + b.str());
      // The completions are the sum and difference of the lattice vectors.
      const std::set<Slope> want{canonicalize(a.p() + b.p(), a.q() + b.q()), canonicalize(a.p() - b.p(), a.q() - b.q())};
      t.require(std::set<Slope>{g, gp} == want, "completion vectors " + a.str() + " " + b.str());
    }
  }
  std::mt19937_64 rng(1);
  for (int i = 0; i < 20; ++i) {
    const auto m = oracle::random_unimod(rng, 8);
    std::vector<Slope> img;
    for (const auto& s : all) {
      img.push_back(apply(m, s));
      t.require(img.back() == canonicalize(m.m11() * s.p() + m.m12() * s.q(), m.m21() * s.p() + m.m22() * s.q()),
                "apply " + s.str());
    }
    for (std::size_t a = 0; a < all.size(); ++a) {
      for (std::size_t b = 0; b < all.size(); ++b) t.require(det(img[a], img[b]) == det(all[a], all[b]), "apply det");
    }
  }
  return {t.pass, t.pass ? std::to_string(all.size()) + " slopes, " + std::to_string(pairs) + " neighbour pairs"
                         : t.first_failure};
}

Outcome trace_round_trip() {
  Tracker t;
  std::mt19937_64 rng(2);
  double worst = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const Matrix2C A = oracle::random_sl2c(rng), B = oracle::random_sl2c(rng);
    const auto tf = generate_t11(A, B, 12);
    for (const auto& s : enumerate_slopes(12)) {
      const double e = oracle::rel_err(tf.values.at(s), oracle::path_word(A, B, s).trace());
      worst = std::max(worst, e);
    }
    const auto r = verify(tf);
    t.require(r.ok(), "verify trial " + std::to_string(trial));
  }
  t.require(worst < 1e-9, "word trace error " + fmt(worst));
  return {t.pass, t.pass ? "100 pairs, max word-trace error " + fmt(worst) : t.first_failure};
}

Outcome markov_anchor() {
  Tracker t;
  const Matrix2Q A{1, 1, 1, 2}, B{2, 1, 1, 1};
  const auto tf = generate_t11(A, B, 12);
  t.require(tf.values.at(slope(1, 0)) == ExactComplex(3) && tf.values.at(slope(0, 1)) == ExactComplex(3) &&
                tf.values.at(slope(1, 1)) == ExactComplex(6),
            "base values");
  t.require((A * B * A.inverse() * B.inverse()).trace() == ExactComplex(-2), "commutator trace");
  t.require(tf.boundary.at("b") == ExactComplex(-2), "boundary value");
  t.require(tf.values.at(slope(-1, 1)) == ExactComplex(3), "flip value");
  const auto sl = verify(tf);
  t.require(sl.ok() && sl.max_residual == 0, "sl2c verification");
  const auto hyp = convert_mode(tf, TraceMode::Hyperbolic);
  t.require(hyp.boundary.at("b") == ExactComplex(2), "hyperbolic boundary");
  const auto hr = verify(hyp);
  t.require(hr.ok() && hr.max_residual == 0, "hyperbolic verification");
  return {t.pass, t.pass ? "t = (3, 3, 6), b = -2 / +2, flip 3, residual 0 over " +
                               std::to_string(hr.checked_triangles) + " triangles"
                         : t.first_failure};
}

Outcome fricke_vogt() {
  Tracker t;
  std::mt19937_64 rng(4);
  std::vector<std::array<int, 4>> perms;
  std::array<int, 4> p{0, 1, 2, 3};
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  double worst = 0, worst_perm = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const Matrix2C A1 = oracle::random_sl2c(rng), A2 = oracle::random_sl2c(rng), A3 = oracle::random_sl2c(rng);
    const std::array<Complex, 7> s{A1.trace(),        A2.trace(),        A3.trace(),
                                   (A1 * A2).trace(), (A2 * A3).trace(), (A3 * A1).trace(),
                                   (A1 * A2 * A3).trace()};
    double m = 1;
    for (const auto& v : s) m = std::max(m, std::abs(v));
    const double scale = m * m * m * m;
    worst = std::max(worst, std::abs(fricke_vogt_residual(s[0], s[1], s[2], s[3], s[4], s[5], s[6])) / scale);
    if (trial >= 20) continue;
    // Off the variety as well, so invariance is not just 0 = 0.
    for (const auto& base : {s, [&] {
                               auto o = s;
                               o[6] += Complex(0.7, -0.3);
                               return o;
                             }()}) {
      const Complex r0 = fricke_vogt_residual(base[0], base[1], base[2], base[3], base[4], base[5], base[6]);
      for (const auto& perm : perms) {
        const auto q = permute_septuple(base, perm);
        const Complex r = fricke_vogt_residual(q[0], q[1], q[2], q[3], q[4], q[5], q[6]);
        worst_perm = std::max(worst_perm, std::abs(r - r0) / scale);
      }
    }
  }
  t.require(worst < 1e-9, "residual " + fmt(worst));
  t.require(worst_perm < 1e-12, "permutation change " + fmt(worst_perm));
  return {t.pass, "max residual " + fmt(worst) + ", max change under 24 permutations " + fmt(worst_perm)};
}

Outcome helling() {
  Tracker t;
  std::mt19937_64 rng(5);
  const Matrix2C A = oracle::random_sl2c(rng), B = oracle::random_sl2c(rng);
  const auto words = reduced_words(6);
  std::uniform_int_distribution<std::size_t> pick(0, words.size() - 1);
  double worst = 0, worst_lib = 0;
  for (int i = 0; i < 200; ++i) {
    const auto& x = words[pick(rng)];
    const auto& y = words[pick(rng)];
    const Matrix2C X = word_matrix(A, B, x), Y = word_matrix(A, B, y);
    // Y⁻¹ from the inverse word, not the adjugate.
    const Matrix2C Yi = word_matrix(A, B, inverse_word(y));
    const Complex lhs = (X * Y).trace() + (X * Yi).trace(), rhs = X.trace() * Y.trace();
    const double size = std::max({1.0, std::abs((X * Y).trace()), std::abs((X * Yi).trace()), std::abs(rhs)});
    worst = std::max(worst, std::abs(lhs - rhs) / size);
    worst_lib = std::max(worst_lib, helling_residual(X, Y));
  }
  t.require(worst < 1e-9, "residual " + fmt(worst));
  t.require(worst_lib < 1e-9, "library residual " + fmt(worst_lib));
  return {t.pass, "200 word pairs, max residual " + fmt(worst)};
}

Outcome laminations() {
  Tracker t;
  using Q = Rational;
  std::mt19937_64 rng(6);
  std::uniform_int_distribution<int> num(-40, 40), den(1, 25);
  const std::map<std::string, Q> zero_t{{"b", 0}};
  const std::map<std::string, Q> zero_s{{"b1", 0}, {"b2", 0}, {"b3", 0}, {"b4", 0}};
  for (int trial = 0; trial < 100; ++trial) {
    Q x(num(rng), den(rng)), y(num(rng), den(rng));
    if (x == 0 && y == 0) y = 1;
    const Q w(den(rng), den(rng));
    const auto surface = trial % 2 ? SurfaceTag::S04 : SurfaceTag::T11;
    const auto f = from_weighted<Q>(surface, {x, y, w}, 20);
    const Q factor = surface == SurfaceTag::S04 ? 2 : 1;
    for (const auto& [s, v] : f.values) {
      Q d = Q(s.p()) * y - Q(s.q()) * x;
      if (d < 0) d = -d;
      t.require(v == factor * w * d, "value at " + s.str());
    }
    const auto r = verify_intersection(f);
    t.require(r.ok() && r.max_residual == 0, "verify trial " + std::to_string(trial));
    const std::array<Q, 3> base{f.values.at(slope(1, 0)), f.values.at(slope(0, 1)), f.values.at(slope(1, 1))};
    const auto prop = propagate<Q>(surface, base, surface == SurfaceTag::T11 ? zero_t : zero_s, 20);
    t.require(prop.values == f.values, "propagate trial " + std::to_string(trial));
  }
  return {t.pass, t.pass ? "100 rational directions exact, propagate matches" : t.first_failure};
}

Outcome loop_calculus() {
  Tracker t;
  const auto all = enumerate_slopes(20);
  const UniModMatrix minus_i = -UniModMatrix::identity();
  std::size_t pairs = 0;
  for (const auto& a : all) {
    for (const auto& b : neighbors_within(a, 20)) {
      ++pairs;
      t.require(multiply(a, multiply(b, a)) == b, "cancellation " + a.str() + " " + b.str());
      t.require(check_relation_II(a, b), "relation II " + a.str() + " " + b.str());
      const auto ta = twist_matrix(a), tb = twist_matrix(b);
      t.require(twist_matrix(multiply(a, b)) == ta * tb * ta.inverse(), "twist conjugation " + a.str());
      const auto pm = ta * tb * twist_matrix(multiply(a, b));
      t.require(pm * pm == minus_i && check_relation_III(a, b), "relation III " + a.str() + " " + b.str());
    }
  }
  const std::set<Slope> want(all.begin(), all.end());
  t.require(generate_closure({slope(1, 0), slope(0, 1), slope(1, 1)}, 20) == want, "closure");
  return {t.pass, t.pass ? std::to_string(pairs) + " neighbour pairs, closure reaches " + std::to_string(want.size()) +
                               " slopes"
                         : t.first_failure};
}

Outcome congruence_words() {
  Tracker t;
  std::mt19937_64 rng(8);
  for (int i = 0; i < 200; ++i) {
    const int len = static_cast<int>(rng() % 31);
    std::string w;
    while (static_cast<int>(w.size()) < len) {
      const char c = "LlRr"[rng() % 4];
      if (!w.empty() && w.back() != c && std::tolower(w.back()) == std::tolower(c)) continue;
      w.push_back(c);
    }
    const CongruenceWord word{w, i % 2 ? -1 : 1};
    UniModMatrix m = word.sign == 1 ? UniModMatrix::identity() : -UniModMatrix::identity();
    for (char c : w) m = m * letter_matrix(c);
    t.require(congruence_decompose(m) == word, "word " + w);
  }
  return {t.pass, t.pass ? "200 words round-trip" : t.first_failure};
}

Outcome polygons() {
  Tracker t;
  std::mt19937_64 rng(9);
  double worst = 0;
  int located = 0, injected = 0;
  for (int n = 5; n <= 12; ++n) {
    for (int trial = 0; trial < 50; ++trial) {
      const auto pts = oracle::random_convex_polygon(rng, n);
      auto quads = tabulate_quads(pts);
      const auto p = reconstruct_polygon(n, quads);
      worst = std::max(worst, oracle::pose_error(p.vertices, pts));

      // Perturb one length inside one quadrilateral.
      auto it = quads.begin();
      std::advance(it, static_cast<long>(rng() % quads.size()));
      const Quad4 key = it->first;
      const int i = static_cast<int>(rng() % 4);
      int j = static_cast<int>(rng() % 3);
      if (j >= i) ++j;
      const int a = key[std::min(i, j)], b = key[std::max(i, j)];
      it->second.at(std::min(i, j) + 1, std::max(i, j) + 1) *= 1 + 1e-3;
      ++injected;
      try {
        reconstruct_polygon(n, quads);
      } catch (const Error& e) {
        const std::string msg = e.what();
        const std::string seg = "segment " + std::to_string(a) + "-" + std::to_string(b);
        if (e.kind() == ErrorKind::Inconsistent && msg.find(seg) != std::string::npos &&
            msg.find(quad_key(key)) != std::string::npos) {
          ++located;
        }
      }
    }
  }
  t.require(worst < 1e-9, "vertex error " + fmt(worst));
  t.require(located == injected, std::to_string(located) + "/" + std::to_string(injected) + " injections located");

  double worst_diag = 0;
  for (int i = 0; i < 500; ++i) {
    const auto pts = oracle::random_convex_polygon(rng, 4);
    const auto q = QuadMetric::from_points({pts[0], pts[1], pts[2], pts[3]});
    const QuadDiagonal d = i % 2 ? QuadDiagonal::D13 : QuadDiagonal::D24;
    const double truth = d == QuadDiagonal::D13 ? q.at(1, 3) : q.at(2, 4);
    const auto r = solve_diagonal(q, d);
    worst_diag = std::max(worst_diag, std::fabs(r.high - truth) / truth);
  }
  t.require(worst_diag < 1e-9, "withheld diagonal " + fmt(worst_diag));
  return {t.pass, "400 polygons, vertex error " + fmt(worst) + "; 500 diagonals, error " + fmt(worst_diag) + "; " +
                      std::to_string(located) + "/" + std::to_string(injected) + " injections located"};
}

double mobius(double a, double b, double c, double d, double x) {
  if (std::isinf(x)) return c == 0 ? HUGE_VAL : a / c;
  const double den = c * x + d;
  return den == 0 ? HUGE_VAL : (a * x + b) / den;
}

Outcome shear() {
  Tracker t;
  const double sym = shear_coordinate({{-1, 0, 1, HUGE_VAL}, QuadDiagonal::D24});
  t.require(std::fabs(sym - 1) < 1e-12, "symmetric quad " + fmt(sym - 1));
  std::mt19937_64 rng(10);
  std::normal_distribution<double> g(0, 3);
  std::uniform_real_distribution<double> u(-2, 2);
  double worst_recip = 0, worst_mob = 0;
  for (int i = 0; i < 100; ++i) {
    std::array<double, 4> x;
    for (;;) {
      for (double& v : x) v = g(rng);
      std::sort(x.begin(), x.end());
      if (x[1] - x[0] > 1e-2 && x[2] - x[1] > 1e-2 && x[3] - x[2] > 1e-2) break;
    }
    if (i % 4 == 0) x[3] = HUGE_VAL;
    const IdealQuad q{x, i % 2 ? QuadDiagonal::D13 : QuadDiagonal::D24};
    const double s = shear_coordinate(q);
    IdealQuad other = q;
    other.diagonal = q.diagonal == QuadDiagonal::D13 ? QuadDiagonal::D24 : QuadDiagonal::D13;
    worst_recip = std::max(worst_recip, std::fabs(s * shear_coordinate(other) - 1));
    double a, b, c, d;
    do {
      a = u(rng), b = u(rng), c = u(rng), d = u(rng);
    } while (a * d - b * c < 0.1);
    IdealQuad moved = q;
    for (double& v : moved.x) v = mobius(a, b, c, d, v);
    worst_mob = std::max(worst_mob, std::fabs(shear_coordinate(moved) - s) / std::max(1.0, s));
  }
  t.require(worst_recip < 1e-12, "reciprocity " + fmt(worst_recip));
  t.require(worst_mob < 1e-12, "Mobius invariance " + fmt(worst_mob));
  return {t.pass, "symmetric quad error " + fmt(std::fabs(sym - 1)) + ", reciprocity " + fmt(worst_recip) +
                      ", Mobius " + fmt(worst_mob)};
}

Outcome emergent_consistency() {
  Tracker t;
  std::mt19937_64 rng(11);
  double worst = 0;
  std::size_t overlaps = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 7 + trial % 3;
    const auto pts = oracle::random_convex_polygon(rng, n);
    const auto quads = tabulate_quads(pts);
    const auto P = reconstruct_polygon(n, quads).vertices;
    // Every length of every quadrilateral, whether or not it was compared.
    for (const auto& [key, m] : quads) {
      for (int i = 0; i < 4; ++i) {
        for (int j = i + 1; j < 4; ++j) {
          const double want = m.at(i + 1, j + 1);
          worst = std::max(worst, std::fabs(std::abs(P[key[j] - 1] - P[key[i] - 1]) - want) / want);
        }
      }
    }
    // Pairs of quadrilaterals meeting in at most one vertex with overlapping interiors.
    for (auto i = quads.begin(); i != quads.end(); ++i) {
      for (auto j = std::next(i); j != quads.end(); ++j) {
        int shared = 0;
        for (int a : i->first)
          for (int b : j->first) shared += a == b;
        if (shared > 1) continue;
        std::vector<Point> qi, qj;
        for (int v : i->first) qi.push_back(P[v - 1]);
        for (int v : j->first) qj.push_back(P[v - 1]);
        if (oracle::area(oracle::clip(qi, qj)) < 1e-6) continue;
        ++overlaps;
        for (const auto* e : {&*i, &*j}) {
          const auto local = realize_quad(e->second).vertices;
          const Point base = P[e->first[0] - 1];
          const Point rot = (P[e->first[1] - 1] - base) / (local[1] - local[0]);
          for (int k = 0; k < 4; ++k) {
            worst = std::max(worst, std::abs(base + rot * (local[k] - local[0]) - P[e->first[k] - 1]));
          }
        }
      }
    }
  }
  t.require(overlaps > 0, "no inessential overlaps found");
  t.require(worst < 1e-9, "agreement " + fmt(worst));
  return {t.pass, "100 polygons, " + std::to_string(overlaps) + " inessential overlaps, max disagreement " + fmt(worst)};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
    double limit_seconds;
  };
  const std::vector<Criterion> criteria{
      {"farey exactness", farey_exactness, 10},
      {"trace round-trip", trace_round_trip, 30},
      {"Markov anchor", markov_anchor, 0},
      {"Fricke-Vogt", fricke_vogt, 0},
      {"Helling property", helling, 0},
      {"laminations", laminations, 0},
      {"loop calculus", loop_calculus, 0},
      {"congruence words", congruence_words, 0},
      {"polygons", polygons, 60},
      {"shear", shear, 0},
      {"emergent consistency", emergent_consistency, 0},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (criteria[i].limit_seconds > 0 && secs >= criteria[i].limit_seconds) {
      o.pass = false;
      o.detail += "; over the " + std::to_string(static_cast<int>(criteria[i].limit_seconds)) + " s limit";
    }
    failures += !o.pass;
    std::printf("%s %2zu %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].name, o.detail.c_str(), secs);
  }
  std::fflush(stdout);
  return failures == 0 ? 0 : 1;
}
