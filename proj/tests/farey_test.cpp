#include <doctest.h>

#include <random>
#include <set>

#include "oracles.hpp"
#include "recon/error.hpp"
#include "recon/farey.hpp"

using namespace recon;

TEST_CASE("canonicalize normalizes sign and gcd") {
  CHECK(canonicalize(2, -4) == slope(-1, 2));
  CHECK(canonicalize(-3, 0) == slope(1, 0));
  CHECK(canonicalize(5, 3).str() == "5/3");
  CHECK(canonicalize(0, -7).str() == "0/1");
  CHECK(canonicalize(-2, -6).str() == "1/3");
  CHECK(oracle::kind_of([] { recon::canonicalize(Integer(0), Integer(0)); }) == ErrorKind::ZeroInput);
}

TEST_CASE("slope parsing") {
  CHECK(Slope::parse("1/0") == slope(1, 0));
  CHECK(Slope::parse("-2/3") == slope(-2, 3));
  CHECK(Slope::parse(slope(-17, 4).str()) == slope(-17, 4));
  CHECK(oracle::kind_of([] { Slope::parse("-4/6"); }) == ErrorKind::ParseError);
  CHECK(oracle::kind_of([] { Slope::parse("3"); }) == ErrorKind::ParseError);
  CHECK(oracle::kind_of([] { Slope::parse("x/2"); }) == ErrorKind::ParseError);
  CHECK(oracle::kind_of([] { Slope::parse("0/0"); }) == ErrorKind::ParseError);
}

TEST_CASE("det examples") {
  CHECK(det(slope(1, 0), slope(0, 1)) == 1);
  CHECK(det(slope(3, 5), slope(2, 3)) == 1);
  CHECK(det(slope(1, 0), slope(7, 9)) == 9);
  CHECK(det(slope(2, 5), slope(2, 5)) == 0);
}

TEST_CASE("completions examples") {
  auto [g, gp] = completions(slope(1, 0), slope(0, 1));
  CHECK(g == slope(1, 1));
  CHECK(gp == slope(-1, 1));
  std::tie(g, gp) = completions(slope(1, 1), slope(1, 2));
  CHECK(g == slope(2, 3));
  CHECK(gp == slope(0, 1));
  std::tie(g, gp) = completions(slope(1, 0), slope(1, 1));
  CHECK(g == slope(2, 1));
  CHECK(gp == slope(0, 1));
  CHECK(oracle::kind_of([] { completions(slope(1, 0), slope(1, 2)); }) == ErrorKind::NotNeighbors);
}

TEST_CASE("completions agree with brute-force common neighbours") {
  const std::pair<Slope, Slope> edges[] = {{slope(1, 1), slope(1, 2)}, {slope(1, 0), slope(1, 1)},
                                           {slope(1, 0), slope(0, 1)}, {slope(-1, 2), slope(-1, 3)}};
  for (const auto& [a, b] : edges) {
    const auto [g, gp] = completions(a, b);
    CHECK(oracle::common_neighbors(a, b, 8) == std::set<Slope>{g, gp});
  }
}

TEST_CASE("enumerate_slopes") {
  CHECK(enumerate_slopes(1) == std::vector<Slope>{slope(0, 1), slope(1, 0)});
  const auto h2 = enumerate_slopes(2);
  CHECK(std::set<Slope>(h2.begin(), h2.end()) ==
        std::set<Slope>{slope(1, 0), slope(0, 1), slope(1, 1), slope(-1, 1)});
  // Frozen from the coprime-pair count.
  CHECK(enumerate_slopes(5).size() == 20);
  for (int h = 1; h <= 25; ++h) {
    const auto all = enumerate_slopes(h);
    REQUIRE(all.size() == oracle::count_slopes(h));
    CHECK(std::is_sorted(all.begin(), all.end()));
    CHECK(std::adjacent_find(all.begin(), all.end()) == all.end());
  }
}

TEST_CASE("apply examples") {
  const auto s = slope(3, 7);
  CHECK(apply(UniModMatrix::identity(), s) == s);
  CHECK(apply(UniModMatrix(1, 1, 0, 1), slope(0, 1)) == slope(1, 1));
  CHECK(apply(UniModMatrix(0, -1, 1, 0), slope(3, 7)) == canonicalize(-7, 3));
  CHECK(oracle::kind_of([] { UniModMatrix(1, 1, 1, 1); }) == ErrorKind::NonUnimodular);
}

TEST_CASE("matrix algebra") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 50; ++i) {
    const auto m = oracle::random_unimod(rng, 8);
    CHECK(m * m.inverse() == UniModMatrix::identity());
    CHECK(m.pow(3) == m * m * m);
    CHECK(m.pow(-2) == m.inverse() * m.inverse());
    CHECK(m.pow(0) == UniModMatrix::identity());
  }
}

TEST_CASE("exhaustive neighbour and completion invariants to height 20") {
  const auto all = enumerate_slopes(20);
  std::size_t pairs = 0;
  for (const auto& a : all) {
    for (const auto& b : all) {
      const Integer d = det(a, b);
      REQUIRE(d == det(b, a));
      REQUIRE((d == 0) == (a == b));
      if (d != 1) continue;
      ++pairs;
      const auto [g, gp] = completions(a, b);
      REQUIRE(g != gp);
      REQUIRE(det(g, a) == 1);
      REQUIRE(det(g, b) == 1);
      REQUIRE(det(gp, a) == 1);
      REQUIRE(det(gp, b) == 1);
      const auto [x, y] = completions(a, g);
      REQUIRE((x == b || y == b));
      REQUIRE(positively_oriented(a, b, g));
    }
  }
  CHECK(pairs > 0);
}

TEST_CASE("apply preserves det") {
  std::mt19937_64 rng(5);
  const auto all = enumerate_slopes(10);
  for (int i = 0; i < 50; ++i) {
    const auto m = oracle::random_unimod(rng, 10);
    std::vector<Slope> img;
    for (const auto& s : all) img.push_back(apply(m, s));
    for (std::size_t a = 0; a < all.size(); ++a) {
      for (std::size_t b = a; b < all.size(); b += 7) REQUIRE(det(img[a], img[b]) == det(all[a], all[b]));
    }
  }
}

TEST_CASE("farey_path examples") {
  const auto p1 = farey_path(slope(1, 1));
  REQUIRE(p1.size() == 1);
  CHECK(p1[0] == FareyTriangle::base());

  const auto p2 = farey_path(slope(1, 2));
  REQUIRE(p2.size() == 2);
  CHECK(p2[1].contains(slope(0, 1)));
  CHECK(p2[1].contains(slope(1, 1)));
  CHECK(p2[1].contains(slope(1, 2)));
}

TEST_CASE("farey_path invariants") {
  for (const auto& s : enumerate_slopes(18)) {
    const auto path = farey_path(s);
    REQUIRE(!path.empty());
    CHECK(path.front() == FareyTriangle::base());
    CHECK(path.back().contains(s));
    for (std::size_t i = 0; i < path.size(); ++i) {
      const auto& t = path[i];
      REQUIRE(det(t.a, t.b) == 1);
      REQUIRE(det(t.b, t.c) == 1);
      REQUIRE(det(t.a, t.c) == 1);
      REQUIRE(positively_oriented(t.a, t.b, t.c));
      if (i == 0) continue;
      int shared = 0;
      for (const auto& v : {t.a, t.b, t.c}) shared += path[i - 1].contains(v) ? 1 : 0;
      REQUIRE(shared == 2);
    }
    if (!s.is_infinity()) {
      CHECK(static_cast<long long>(path.size()) <= oracle::cf_sum(oracle::ll(s.p()), oracle::ll(s.q())) + 1);
    }
  }
  const auto p35 = farey_path(slope(3, 5));
  CHECK(p35.back().contains(slope(3, 5)));
}

TEST_CASE("orientation is cyclic") {
  for (const auto& flip : flip_tree(15)) {
    const auto t = FareyTriangle::make(flip.left, flip.right, flip.new_vertex);
    CHECK(positively_oriented(t.a, t.b, t.c));
    CHECK(positively_oriented(t.b, t.c, t.a));
    CHECK(positively_oriented(t.c, t.a, t.b));
    CHECK_FALSE(positively_oriented(t.b, t.a, t.c));
  }
}

TEST_CASE("FareyTriangle::make rejects non-triangles") {
  CHECK(oracle::kind_of([] { FareyTriangle::make(slope(1, 0), slope(0, 1), slope(1, 2)); }) == ErrorKind::NotNeighbors);
  const auto t = FareyTriangle::make(slope(1, 0), slope(1, 1), slope(0, 1));
  CHECK(t.a == slope(1, 0));
  CHECK(positively_oriented(t.a, t.b, t.c));
}

TEST_CASE("flip_tree reaches every slope once") {
  for (int h : {1, 2, 5, 12, 20}) {
    std::multiset<Slope> seen{slope(1, 0), slope(0, 1), slope(1, 1)};
    for (const auto& f : flip_tree(h)) {
      CHECK(det(f.left, f.right) == 1);
      const auto [g, gp] = completions(f.left, f.right);
      CHECK(std::set<Slope>{g, gp} == std::set<Slope>{f.old_vertex, f.new_vertex});
      CHECK(seen.contains(f.old_vertex));
      seen.insert(f.new_vertex);
    }
    std::set<Slope> want;
    for (const auto& s : enumerate_slopes(h)) want.insert(s);
    want.insert(slope(1, 1));
    CHECK(std::set<Slope>(seen.begin(), seen.end()) == want);
    CHECK(seen.size() == want.size());
  }
}

TEST_CASE("neighbors_within matches brute force") {
  const auto all = enumerate_slopes(15);
  for (const auto& a : {slope(1, 0), slope(2, 5), slope(-3, 4), slope(0, 1)}) {
    std::vector<Slope> want;
    for (const auto& s : all) {
      if (det(a, s) == 1) want.push_back(s);
    }
    CHECK(neighbors_within(a, 15) == want);
  }
}

TEST_CASE("complex_within") {
  const auto all = enumerate_slopes(6);
  const auto cx = complex_within(std::set<Slope>(all.begin(), all.end()));
  CHECK(cx.isolated.empty());
  CHECK(!cx.triangles.empty());
  for (const auto& t : cx.triangles) CHECK(positively_oriented(t.a, t.b, t.c));
  for (const auto& q : cx.quads) {
    const auto [g, gp] = completions(q.a, q.b);
    CHECK(std::set<Slope>{g, gp} == std::set<Slope>{q.gamma, q.gamma_prime});
  }
  const auto lonely = complex_within({slope(1, 0), slope(0, 1), slope(1, 1), slope(5, 7)});
  CHECK(lonely.triangles.size() == 1);
  CHECK(lonely.isolated == std::vector<Slope>{slope(5, 7)});
}

TEST_CASE("big integers along deep paths") {
  // Fibonacci-like slope whose coordinates overflow 64 bits.
  Integer p = 1, q = 1;
  for (int i = 0; i < 100; ++i) {
    Integer t = p + q;
    p = q;
    q = t;
  }
  const Slope s = canonicalize(p, q);
  const auto path = farey_path(s);
  CHECK(path.back().contains(s));
  CHECK(path.size() > 90);
}
