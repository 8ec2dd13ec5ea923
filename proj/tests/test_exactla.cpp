#include <algorithm>
#include <numeric>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "soficlab/linalg.hpp"

using namespace soficlab;

namespace {

const Field Q = Field::rationals();

Vector vec(Field f, std::initializer_list<long long> xs) {
  Vector v;
  for (long long x : xs) v.emplace_back(f, x);
  return v;
}

std::vector<Field> both_fields() { return {Field::rationals(), Field::prime(7), Field::prime(2)}; }

ExactMatrix permute_rows(const ExactMatrix& m, const std::vector<std::size_t>& perm) {
  std::vector<Entry> out;
  for (const auto& e : m.entries()) out.push_back({perm[e.row], e.col, e.value});
  return ExactMatrix::from_entries(m.field(), m.rows(), m.cols(), std::move(out));
}

}  // namespace

TEST_CASE("field arithmetic stays exact") {
  Scalar third(Q, Rational(1, 3));
  CHECK((third + third + third).is_one());
  CHECK(Scalar(Q, Rational(2, 4)).rational() == Rational(1, 2));
  CHECK(Scalar(Q, Rational(3, -6)).to_string() == "-1/2");

  const Field f7 = Field::prime(7);
  CHECK(Scalar(f7, 10).residue() == 3);
  CHECK(Scalar(f7, -1).residue() == 6);
  CHECK((Scalar(f7, 3) * Scalar(f7, 5)).residue() == 1);
  CHECK(Scalar(f7, Rational(1, 2)).residue() == 4);
  CHECK_THROWS_AS(Scalar(f7, 0).inverse(), std::domain_error);
  CHECK_THROWS_AS(Scalar(Field::prime(2), Rational(1, 2)), std::domain_error);
  CHECK_THROWS_AS(Field::prime(9), std::invalid_argument);
  CHECK_THROWS_AS(Scalar(Q, 1) + Scalar(f7, 1), std::invalid_argument);
}

TEST_CASE("field and rational parsing") {
  CHECK(parse_field("q").is_rational());
  CHECK(parse_field("fp:13").characteristic() == 13);
  CHECK_THROWS(parse_field("fp:12"));
  CHECK_THROWS(parse_field("real"));
  CHECK(parse_rational("-3/6") == Rational(-1, 2));
  CHECK(parse_rational("4") == 4);
  CHECK_THROWS(parse_rational("0.5"));
  CHECK_THROWS(parse_rational("1e3"));
  CHECK_THROWS(parse_rational("1/0"));
  CHECK(rational_to_string(Rational(8, 101)) == "8/101");
  CHECK(rational_to_string(Rational(3)) == "3/1");
}

TEST_CASE("matrix construction drops zeros and sums duplicates") {
  auto m = ExactMatrix::from_entries(Q, 2, 2, {{0, 0, Scalar(Q, 1)}, {0, 0, Scalar(Q, -1)}, {1, 0, Scalar(Q, 2)}});
  CHECK(m.nnz() == 1);
  CHECK(m.at(1, 0) == Scalar(Q, 2));
  CHECK_THROWS_AS(ExactMatrix::from_entries(Q, 1, 1, {{1, 0, Scalar(Q, 1)}}), std::out_of_range);
}

TEST_CASE("rank examples") {
  for (const Field& f : both_fields()) {
    CHECK(rank(ExactMatrix::identity(f, 5)) == 5);
    CHECK(rank(ExactMatrix(f, 4, 3)) == 0);
  }
  CHECK(rank(ExactMatrix::from_integers(Q, {{1, 2}, {2, 4}})) == 1);
  // Singular over F_2 only.
  auto m = ExactMatrix::from_integers(Q, {{1, 1}, {1, -1}});
  CHECK(rank(m) == 2);
  CHECK(rank(ExactMatrix::from_integers(Field::prime(2), {{1, 1}, {1, -1}})) == 1);
}

TEST_CASE("kernel basis examples") {
  CHECK(kernel_basis(ExactMatrix::identity(Q, 4)).dim() == 0);
  CHECK(kernel_basis(ExactMatrix(Q, 2, 3)).dim() == 3);
  const auto m = ExactMatrix::from_integers(Q, {{1, 1, 0}});
  const auto k = kernel_basis(m);
  CHECK(k.dim() == 2);
  for (const auto& v : k.vectors()) {
    for (const auto& x : m.apply(v)) CHECK(x.is_zero());
  }
}

TEST_CASE("intersect examples") {
  const auto e12 = SubspaceBasis::span(Q, 3, {vec(Q, {1, 0, 0}), vec(Q, {0, 1, 0})});
  const auto e23 = SubspaceBasis::span(Q, 3, {vec(Q, {0, 1, 0}), vec(Q, {0, 0, 1})});
  const std::vector<SubspaceBasis> pair{e12, e23};
  CHECK(intersect(pair) == SubspaceBasis::span(Q, 3, {vec(Q, {0, 1, 0})}));
  const std::vector<SubspaceBasis> fulls{SubspaceBasis::full(Q, 3), SubspaceBasis::full(Q, 3)};
  CHECK(intersect(fulls) == SubspaceBasis::full(Q, 3));
  const std::vector<SubspaceBasis> single{e12};
  CHECK(intersect(single) == e12);
  const std::vector<SubspaceBasis> bad{e12, SubspaceBasis::full(Q, 2)};
  CHECK_THROWS_AS(intersect(bad), std::invalid_argument);
  CHECK_THROWS_AS(intersect(std::span<const SubspaceBasis>{}), std::invalid_argument);
}

TEST_CASE("kron, direct_sum and commutator examples") {
  CHECK(kron(ExactMatrix::identity(Q, 2), ExactMatrix::identity(Q, 3)) == ExactMatrix::identity(Q, 6));
  const auto a = ExactMatrix::from_integers(Q, {{1, 2}, {3, 4}});
  CHECK(kron(a, ExactMatrix(Q, 2, 2)).is_zero());
  CHECK(direct_sum(ExactMatrix::identity(Q, 2), ExactMatrix::identity(Q, 3)) == ExactMatrix::identity(Q, 5));
  CHECK(direct_sum(a, ExactMatrix(Q, 0, 0)) == a);

  CHECK(commutator(a, a).is_zero());
  CHECK(commutator(ExactMatrix::identity(Q, 2), a).is_zero());
  const auto e12 = ExactMatrix::from_integers(Q, {{0, 1}, {0, 0}});
  const auto e21 = ExactMatrix::from_integers(Q, {{0, 0}, {1, 0}});
  CHECK(commutator(e12, e21) == ExactMatrix::from_integers(Q, {{1, 0}, {0, -1}}));
  CHECK_THROWS_AS(commutator(a, ExactMatrix::identity(Q, 3)), std::invalid_argument);
}

TEST_CASE("echelon form is canonical") {
  const auto m = ExactMatrix::from_integers(Q, {{2, 4, 6}, {1, 1, 1}, {3, 5, 7}});
  const Echelon e = rref(m);
  CHECK(e.pivots == std::vector<std::size_t>{0, 1});
  CHECK(e.reduced == ExactMatrix::from_integers(Q, {{1, 0, -1}, {0, 1, 2}}));
  CHECK(SubspaceBasis::row_space(m) ==
        SubspaceBasis::span(Q, 3, {vec(Q, {1, 0, -1}), vec(Q, {1, 1, 1})}));
}

TEST_CASE("property: rank agrees with dense oracle and rank-nullity holds") {
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<std::size_t> dim(0, 9);
  for (const Field& f : {Field::rationals(), Field::prime(5), Field::prime(2), Field::prime(1000003)}) {
    for (int trial = 0; trial < 150; ++trial) {
      const std::size_t r = dim(rng);
      const std::size_t c = dim(rng);
      const auto m = oracle::random_matrix(rng, f, r, c, 0.35, f.is_rational() || f.characteristic() > 3);
      const std::size_t rk = rank(m);
      CHECK(rk == oracle::rank(m));
      CHECK(rref(m).pivots.size() == rk);
      const auto ker = kernel_basis(m);
      CHECK(rk + ker.dim() == c);
      for (const auto& v : ker.vectors()) {
        for (const auto& x : m.apply(v)) CHECK(x.is_zero());
      }
      CHECK(rank(m.transpose()) == rk);
      std::vector<std::size_t> perm(r);
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      CHECK(rank(permute_rows(m, perm)) == rk);
    }
  }
}

TEST_CASE("property: kron multiplies and direct_sum adds ranks") {
  std::mt19937_64 rng(77);
  for (const Field& f : {Field::rationals(), Field::prime(3)}) {
    for (int trial = 0; trial < 60; ++trial) {
      const auto a = oracle::random_matrix(rng, f, 3, 3, 0.5);
      const auto b = oracle::random_matrix(rng, f, 3, 3, 0.5);
      const auto ra = oracle::rank(a);
      const auto rb = oracle::rank(b);
      CHECK(rank(kron(a, b)) == ra * rb);
      CHECK(oracle::rank(kron(a, b)) == ra * rb);
      CHECK(rank(direct_sum(a, b)) == ra + rb);
    }
  }
}

TEST_CASE("property: intersect is idempotent, commutative and monotone") {
  std::mt19937_64 rng(99);
  for (const Field& f : {Field::rationals(), Field::prime(2)}) {
    for (int trial = 0; trial < 60; ++trial) {
      const auto u = SubspaceBasis::row_space(oracle::random_matrix(rng, f, 3, 6, 0.5));
      const auto w = SubspaceBasis::row_space(oracle::random_matrix(rng, f, 4, 6, 0.5));
      const std::vector<SubspaceBasis> uu{u, u};
      const std::vector<SubspaceBasis> uw{u, w};
      const std::vector<SubspaceBasis> wu{w, u};
      CHECK(intersect(uu) == u);
      const auto i1 = intersect(uw);
      CHECK(i1 == intersect(wu));
      CHECK(u.contains(i1));
      CHECK(w.contains(i1));
      // dim(U ∩ W) = dim U + dim W - dim(U + W)
      const auto sum = SubspaceBasis::row_space(vstack(std::vector<ExactMatrix>{u.echelon(), w.echelon()}));
      CHECK(i1.dim() + sum.dim() == u.dim() + w.dim());
    }
  }
}

TEST_CASE("fraction-free elimination handles large rational entries") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    auto m = oracle::random_matrix(rng, Q, 12, 12, 0.9, true);
    CHECK(rank(m) == oracle::rank(m));
    CHECK(rref(m).reduced.rows() == oracle::rank(m));
  }
}
