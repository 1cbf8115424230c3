#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <vector>

#include "qlog/json_io.hpp"
#include "qlog/subspace.hpp"

using namespace qlog;

namespace {

Vector unit(long n, long i) {
  Vector v = Vector::Zero(n);
  v(i) = 1.0;
  return v;
}

}  // namespace

TEST_CASE("from_spanning decides dimension by singular values") {
  // duplicate vectors collapse
  Subspace s = from_spanning({unit(2, 0), unit(2, 0)}, 2);
  REQUIRE(s.dim() == 1);
  // empty list is the zero subspace
  REQUIRE(from_spanning({}, 3).dim() == 0);
  // spanning set gives the full space
  Vector p = unit(2, 0) + unit(2, 1), q = unit(2, 0) - unit(2, 1);
  REQUIRE(from_spanning({p, q}, 2).dim() == 2);
  REQUIRE_THROWS_AS(from_spanning({unit(3, 0)}, 2), std::invalid_argument);
  // orthonormality of the returned basis
  Subspace r = from_spanning({p, q, unit(2, 0)}, 2);
  REQUIRE((r.basis().adjoint() * r.basis() - Matrix::Identity(2, 2)).norm() < 1e-12);
}

TEST_CASE("complement") {
  REQUIRE(complement(Subspace::zero(3)).dim() == 3);
  REQUIRE(complement(Subspace::full(3)).dim() == 0);
  Subspace line = from_spanning({unit(3, 0)}, 3);
  Subspace c = complement(line);
  REQUIRE(c.dim() == 2);
  REQUIRE(equal(c, from_spanning({unit(3, 1), unit(3, 2)}, 3)));
  for (int i = 0; i < 100; ++i) {
    Subspace s = random_subspace(5, i % 6, 1000 + static_cast<std::uint64_t>(i));
    REQUIRE(complement(s).dim() == 5 - s.dim());
    REQUIRE(equal(complement(complement(s)), s));
  }
}

TEST_CASE("join and meet") {
  Subspace e1 = from_spanning({unit(2, 0)}, 2);
  Subspace e2 = from_spanning({unit(2, 1)}, 2);
  REQUIRE(equal(join(e1, Subspace::zero(2)), e1));
  REQUIRE(join(e1, e2).dim() == 2);
  REQUIRE(equal(meet(e1, Subspace::full(2)), e1));
  Subspace diag = from_spanning({unit(2, 0) + unit(2, 1)}, 2);
  REQUIRE(meet(e1, diag).dim() == 0);
  REQUIRE_THROWS_AS(join(e1, Subspace::zero(3)), AmbientMismatchError);

  for (int i = 0; i < 100; ++i) {
    std::uint64_t s1 = derive_seed(42, static_cast<std::uint64_t>(i), 1);
    std::uint64_t s2 = derive_seed(42, static_cast<std::uint64_t>(i), 2);
    Subspace s = random_subspace(4, i % 5, s1);
    Subspace t = random_subspace(4, (i * 3) % 5, s2);
    Subspace m = meet(s, t);
    REQUIRE(contains(s, m));
    REQUIRE(contains(t, m));
    REQUIRE(join(s, t).dim() == s.dim() + t.dim() - m.dim());
  }
}

TEST_CASE("projector") {
  REQUIRE(Subspace::zero(3).projector().norm() == 0.0);
  REQUIRE((Subspace::full(3).projector() - Matrix::Identity(3, 3)).norm() < 1e-12);
  Subspace s = random_subspace(5, 3, 99);
  Matrix p = s.projector();
  REQUIRE((p - p.adjoint()).norm() < 1e-12);
  REQUIRE((p * p - p).norm() < 1e-12);
  REQUIRE(std::abs(p.trace().real() - 3.0) < 1e-12);
}

TEST_CASE("contains and equal") {
  REQUIRE(contains(Subspace::full(4), random_subspace(4, 2, 7)));
  Subspace s = random_subspace(4, 2, 8);
  REQUIRE(equal(s, complement(complement(s))));
  REQUIRE(!equal(s, complement(s)));
  REQUIRE(contains(s, Subspace::zero(4)));
}

TEST_CASE("random_subspace determinism and edge dimensions") {
  REQUIRE(random_subspace(4, 0, 5).dim() == 0);
  REQUIRE(random_subspace(4, 4, 5).dim() == 4);
  Subspace a = random_subspace(5, 2, 12345);
  Subspace b = random_subspace(5, 2, 12345);
  REQUIRE((a.basis() - b.basis()).norm() == 0.0);
  REQUIRE(!equal(a, random_subspace(5, 2, 54321)));
  REQUIRE_THROWS_AS(random_subspace(3, 4, 0), std::invalid_argument);
}

TEST_CASE("pushforward preserves structure") {
  Subspace w = random_subspace(6, 3, 77);
  Isometry iso = isometry_onto(w);
  REQUIRE(equal(pushforward(iso, Subspace::full(3)), w));
  for (int i = 0; i < 50; ++i) {
    Subspace p = random_subspace(3, i % 4, 200 + static_cast<std::uint64_t>(i));
    Subspace q = random_subspace(3, (i + 1) % 4, 300 + static_cast<std::uint64_t>(i));
    REQUIRE(pushforward(iso, p).dim() == p.dim());
    REQUIRE(equal(pushforward(iso, meet(p, q)),
                  meet(pushforward(iso, p), pushforward(iso, q))));
    REQUIRE(equal(pushforward(iso, join(p, q)),
                  join(pushforward(iso, p), pushforward(iso, q))));
    // pullback undoes pushforward
    REQUIRE(equal(pullback(iso, pushforward(iso, p)), p));
  }
}

TEST_CASE("apply_unitary") {
  Subspace s = random_subspace(4, 2, 31);
  REQUIRE(equal(apply_unitary(Matrix::Identity(4, 4), s), s));
  // random unitary from the QR of a Gaussian draw
  Matrix g = random_subspace(4, 4, 32).basis();
  Subspace u = apply_unitary(g, s);
  REQUIRE(u.dim() == s.dim());
  Matrix bad = Matrix::Identity(4, 4) * 2.0;
  REQUIRE_THROWS_AS(apply_unitary(bad, s), std::invalid_argument);
}

TEST_CASE("unitary_line_to_axis maps the line onto the axis") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 20; ++i) {
    long n = 3 + (i % 4);
    Subspace line = random_subspace(n, 1, static_cast<std::uint64_t>(400 + i));
    Matrix u = unitary_line_to_axis(line.basis().col(0), n - 1);
    Subspace moved = apply_unitary(u, line);
    Subspace axis = from_spanning({unit(n, n - 1)}, n);
    REQUIRE(equal(moved, axis));
  }
}

TEST_CASE("principal angles") {
  Subspace s = random_subspace(4, 2, 61);
  auto same = principal_angles(s, s);
  REQUIRE(same.size() == 2);
  REQUIRE(same[1] < 1e-7);

  Subspace e1 = from_spanning({unit(2, 0)}, 2);
  Subspace e2 = from_spanning({unit(2, 1)}, 2);
  auto perp = principal_angles(e1, e2);
  REQUIRE(perp.size() == 1);
  REQUIRE(std::abs(perp[0] - M_PI / 2) < 1e-12);

  Subspace diag = from_spanning({(unit(2, 0) + unit(2, 1)) / std::sqrt(2.0)}, 2);
  auto mid = principal_angles(e1, diag);
  REQUIRE(std::abs(mid[0] - M_PI / 4) < 1e-12);
}

TEST_CASE("guard band flags near-cutoff samples") {
  Tolerance tol;
  RankStats stats;
  // a vector nearly inside the span of e1: the stacked rank decision sees a
  // relative singular value around 1e-8, inside the default band
  Vector v = unit(3, 0) + 1e-8 * unit(3, 1);
  Subspace s = from_spanning({unit(3, 0)}, 3);
  Subspace t = from_spanning({v}, 3);
  join(s, t, tol, &stats);
  REQUIRE(stats.decisions == 1);
  REQUIRE(stats.ambiguous > 0);

  // a clean configuration does not trip the band
  RankStats clean;
  join(s, from_spanning({unit(3, 1)}, 3), tol, &clean);
  REQUIRE(clean.ambiguous == 0);
}

TEST_CASE("rank decisions are deterministic") {
  Subspace s = random_subspace(5, 3, 555);
  Subspace t = random_subspace(5, 2, 556);
  Subspace a = meet(s, t);
  Subspace b = meet(s, t);
  REQUIRE(a.dim() == b.dim());
  REQUIRE((a.basis() - b.basis()).norm() == 0.0);
}

TEST_CASE("subspace JSON round trip") {
  Subspace s = random_subspace(4, 2, 777);
  Json j = subspace_to_json(s);
  Subspace back = subspace_from_json(j);
  REQUIRE(back.ambient() == 4);
  REQUIRE(equal(back, s));

  // reader rejects a basis whose claimed dimension collapses
  Json bad = j;
  bad["basis"].push_back(bad["basis"][0]);
  REQUIRE_THROWS_WITH(subspace_from_json(bad),
                      Catch::Matchers::ContainsSubstring("collapsed"));

  REQUIRE_THROWS_AS(subspace_from_json(Json{{"ambient", 3}}), std::runtime_error);
}
