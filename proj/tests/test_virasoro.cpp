#include <functional>
#include <map>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "soficlab/virasoro.hpp"

using namespace soficlab;

namespace {

const Field Q = Field::rationals();

using oracle::count_partitions;

/// Independent normal-orderer: words in the modes x_a acting on the
/// highest-weight vector, rewritten by adjacent swaps anywhere in the word.
/// A word is normal when every mode is negative and modes weakly increase
/// left to right, i.e. x_{-i_1} ... x_{-i_k} with i_1 >= ... >= i_k.
using Word = std::vector<long>;

std::map<VermaMonomial, Rational> brute_force_apply(long r, const VermaMonomial& v, const Rational& h,
                                                    const Rational& z) {
  std::map<Word, Rational> work;
  Word start{r};
  for (Index part : v) start.push_back(-part);
  work[start] = 1;
  std::map<VermaMonomial, Rational> out;
  while (!work.empty()) {
    auto node = work.begin();
    Word w = node->first;
    const Rational c = node->second;
    work.erase(node);
    if (c == 0) continue;
    auto push = [&](const Word& word, const Rational& coeff) {
      if (coeff != 0) work[word] += coeff;
    };
    if (!w.empty() && w.back() > 0) continue;
    if (!w.empty() && w.back() == 0) {
      w.pop_back();
      push(w, c * h);
      continue;
    }
    std::size_t descent = w.size();
    for (std::size_t p = 0; p + 1 < w.size(); ++p) {
      if (w[p] > w[p + 1]) {
        descent = p;
        break;
      }
    }
    if (descent == w.size()) {
      VermaMonomial mono;
      for (long a : w) mono.push_back(-a);
      out[mono] += c;
      continue;
    }
    const long a = w[descent];
    const long b = w[descent + 1];
    Word swapped = w;
    std::swap(swapped[descent], swapped[descent + 1]);
    push(swapped, c);
    if (a != b) {
      Word merged = w;
      merged[descent] = a + b;
      merged.erase(merged.begin() + static_cast<long>(descent) + 1);
      push(merged, c * (a - b));
    }
    if (a + b == 0) {
      Word dropped = w;
      dropped.erase(dropped.begin() + static_cast<long>(descent), dropped.begin() + static_cast<long>(descent) + 2);
      push(dropped, c * z * Rational(a * a * a - a) / 12);
    }
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

std::map<VermaMonomial, Rational> as_rationals(const VermaVector& v) {
  std::map<VermaMonomial, Rational> out;
  for (const auto& [mono, c] : v) out[mono] = c.rational();
  return out;
}

Index part_sum(const VermaMonomial& v) {
  Index s = 0;
  for (Index p : v) s += p;
  return s;
}

Vector unit(std::size_t n, std::size_t k) {
  Vector v(n, Scalar(Q));
  v[k] = Scalar(Q, 1);
  return v;
}

HighestWeight weight(const Rational& h, const Rational& z) { return {Scalar(Q, h), Scalar(Q, z)}; }

}  // namespace

TEST_CASE("verma_dim matches a partition enumerator") {
  for (int m = 0; m <= 12; ++m)
    for (int d = 0; d <= 12; ++d) CHECK(verma_dim(m, d) == count_partitions(m, d));
  CHECK(verma_dim(2, 2) == 6);
  CHECK(verma_dim(3, 1) == 4);
  CHECK(verma_dim(0, 5) == 1);
  CHECK(VermaWindow(4, 3).dim() == verma_dim(4, 3));
}

TEST_CASE("verma window ordering") {
  const VermaWindow w(2, 2);
  const std::vector<VermaMonomial> expected{{}, {1}, {2}, {1, 1}, {2, 1}, {2, 2}};
  CHECK(w.basis() == expected);
  CHECK(w.contains({2, 1}));
  CHECK_FALSE(w.contains({3}));
  CHECK_FALSE(w.contains({1, 2}));
}

TEST_CASE("normal ordering worked examples") {
  const Rational h(3, 5);
  const Rational z(7, 2);
  VermaModule module(Q, weight(h, z));
  CHECK(as_rationals(module.apply(1, {1})) == std::map<VermaMonomial, Rational>{{{}, 2 * h}});
  CHECK(as_rationals(module.apply(2, {2})) ==
        std::map<VermaMonomial, Rational>{{{}, 4 * h + z / 2}});
  CHECK(as_rationals(module.apply(-1, {})) == std::map<VermaMonomial, Rational>{{{1}, 1}});
  CHECK(module.apply(3, {}).empty());
  CHECK(as_rationals(module.apply(0, {})) == std::map<VermaMonomial, Rational>{{{}, h}});
  CHECK_THROWS_AS(module.apply(kVirasoroCentral, {}), std::invalid_argument);
  CHECK_THROWS_AS(module.apply(1, {1, 2}), std::invalid_argument);
}

TEST_CASE("normal ordering agrees with an independent rewriting oracle") {
  for (const auto& [h, z] : {std::pair{Rational(0), Rational(1)}, std::pair{Rational(1, 2), Rational(-7, 3)}}) {
    VermaModule module(Q, weight(h, z));
    const VermaWindow window(5, 3);
    for (const auto& v : window.basis()) {
      for (long r = -5; r <= 5; ++r) {
        CAPTURE(r);
        CHECK(as_rationals(module.apply(r, v)) == brute_force_apply(r, v, h, z));
      }
    }
  }
}

TEST_CASE("modes shift the grading by -r") {
  VermaModule module(Q, weight(Rational(2), Rational(1)));
  const VermaWindow window(5, 3);
  for (const auto& v : window.basis()) {
    for (Index r = -4; r <= 4; ++r) {
      for (const auto& [mono, c] : module.apply(r, v)) CHECK(part_sum(mono) == part_sum(v) - r);
    }
  }
}

TEST_CASE("projection onto the window") {
  const VermaWindow window(2, 2);
  const auto out = normal_order_apply(-1, {2, 2}, weight(Rational(0), Rational(1)), window);
  CHECK(out.empty());
  const auto kept = normal_order_apply(-1, {2}, weight(Rational(0), Rational(1)), window);
  CHECK(as_rationals(kept) == std::map<VermaMonomial, Rational>{{{2, 1}, 1}});
}

TEST_CASE("virasoro_rep basics") {
  const AlmostRep rep = virasoro_rep(1, 3, 2, weight(Rational(0), Rational(1)));
  CHECK(rep.carrier_dim() == 10);
  CHECK(rep.image(kVirasoroCentral) == ExactMatrix::identity(Q, 10));
  const VermaWindow carrier(3, 2);
  const Vector e1 = unit(10, *carrier.position({1}));
  for (const auto& s : rep.image(1).apply(e1)) CHECK(s.is_zero());
  CHECK_THROWS_AS(virasoro_rep(2, 1, 2, weight(Rational(0), Rational(1))), std::invalid_argument);
  CHECK_THROWS_AS(virasoro_rep(1, 2, 0, weight(Rational(0), Rational(1))), std::invalid_argument);
  CHECK_THROWS_AS(VermaModule(Field::prime(3), {Scalar(Field::prime(3)), Scalar(Field::prime(3), 1)}),
                  std::invalid_argument);
}

TEST_CASE("central element acts by z and its defect operators vanish") {
  const Rational z(5, 3);
  const AlmostRep rep = virasoro_rep(2, 4, 2, weight(Rational(1), z));
  CHECK(rep.image(kVirasoroCentral) == ExactMatrix::identity(Q, rep.carrier_dim()).scaled(Scalar(Q, z)));
  for (const auto& pair : rep.window().checkable_pairs()) {
    if (pair.left == kVirasoroCentral || pair.right == kVirasoroCentral) CHECK(defect_operator(rep, pair).is_zero());
  }
}

TEST_CASE("defect ratio falls with m for n = 1, d = 2") {
  Rational previous(2);
  for (std::size_t m = 2; m <= 6; ++m) {
    const Rational eps = defect_subspace(virasoro_rep(1, m, 2, weight(Rational(0), Rational(1)))).defect_ratio;
    CHECK(eps <= previous);
    previous = eps;
  }
}

TEST_CASE("defects vanish on short monomials of small total weight") {
  // Monomials with at most d - 1 parts and part-sum at most m - n.
  for (std::size_t n = 1; n <= 2; ++n) {
    for (std::size_t d = 1; d <= 3; ++d) {
      for (std::size_t m = n; m <= 8; ++m) {
        const AlmostRep rep = virasoro_rep(n, m, d, weight(Rational(1), Rational(1)));
        const auto good = defect_subspace(rep).good_subspace;
        const VermaWindow carrier(m, d);
        for (std::size_t k = 0; k < carrier.dim(); ++k) {
          const auto& v = carrier.basis()[k];
          if (v.size() + 1 > d || part_sum(v) > static_cast<Index>(m - n)) continue;
          CAPTURE(n);
          CAPTURE(m);
          CAPTURE(d);
          CHECK(good.contains(unit(carrier.dim(), k)));
        }
      }
    }
  }
}

TEST_CASE("a bound on individual parts alone does not protect a monomial") {
  // (4, 4) has parts <= m - 2n and two parts, yet x_{-2} x_{-1} pushes its
  // normal form partly outside the window while [x_{-2}, x_{-1}] does not.
  const std::size_t n = 2, m = 8, d = 3;
  const AlmostRep rep = virasoro_rep(n, m, d, weight(Rational(1), Rational(1)));
  const auto good = defect_subspace(rep).good_subspace;
  const VermaWindow carrier(m, d);
  CHECK_FALSE(good.contains(unit(carrier.dim(), *carrier.position({4, 4}))));
  CHECK_FALSE(good.contains(unit(carrier.dim(), *carrier.position({4, 3}))));
}

TEST_CASE("virasoro_rep over a prime field") {
  const Field f = Field::prime(7);
  const AlmostRep rep = virasoro_rep(1, 3, 2, {Scalar(f, 2), Scalar(f, 1)});
  CHECK(rep.image(kVirasoroCentral) == ExactMatrix::identity(f, 10));
  CHECK(defect_subspace(rep).good_subspace.dim() <= rep.carrier_dim());
}
