#include <doctest.h>

#include "radmul/rng.hpp"
#include "radmul/tracial_algebra.hpp"

using namespace radmul;

namespace {

Mat diag_pm() {
  Mat v = Mat::Zero(2, 2);
  v(0, 0) = 1.0;
  v(1, 1) = -1.0;
  return v;
}

FactorElement random_element(const CrossedFactor& f, Rng& rng) {
  FactorElement x = f.zero();
  const auto s = static_cast<Eigen::Index>(f.base().matrix_size());
  for (auto& c : x.coeffs) c = rng.complex_matrix(s, s);
  return x;
}

double diff(const CrossedFactor& f, const FactorElement& a, const FactorElement& b) {
  return max_abs(f.add(a, b, -1.0));
}

std::vector<CrossedFactor> sample_factors() {
  return {CrossedFactor::trivial(TracialAlgebra::scalar(), FiniteGroup::cyclic(2)),
          CrossedFactor::trivial(TracialAlgebra::scalar(), FiniteGroup::cyclic(3)),
          CrossedFactor::inner_cyclic(TracialAlgebra::matrix(2), 2, diag_pm()),
          CrossedFactor::trivial(TracialAlgebra::matrix(2), FiniteGroup::cyclic(2)),
          // Z/3 acting on M_3 by the cyclic shift.
          CrossedFactor::inner_cyclic(TracialAlgebra::matrix(3), 3,
                                      (Mat(3, 3) << 0, 0, 1, 1, 0, 0, 0, 1, 0).finished())};
}

}  // namespace

TEST_CASE("tracial algebra axioms") {
  for (std::size_t s : {1u, 2u, 3u}) {
    TracialAlgebra n(s);
    CHECK(n.dimension() == s * s);
    CHECK(n.trace(n.identity()) == cplx(1.0));
    CHECK(n.verify(1e-13).all_passed());
  }
  CHECK_THROWS_AS(TracialAlgebra(0), std::invalid_argument);
}

TEST_CASE("finite groups") {
  auto z3 = FiniteGroup::cyclic(3);
  CHECK(z3.order() == 3);
  CHECK(z3.identity() == 0);
  CHECK(z3.mul(2, 2) == 1);
  CHECK(z3.inverse(1) == 2);
  // Klein four-group from a table.
  FiniteGroup v4({{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}});
  CHECK(v4.inverse(3) == 3);
  CHECK_THROWS_AS(FiniteGroup({{0, 1}, {1, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(FiniteGroup({{0, 1}, {0, 1}}), std::invalid_argument);
  // Non-associative latin square with identity.
  CHECK_THROWS_AS(FiniteGroup({{0, 1, 2, 3, 4},
                               {1, 0, 3, 4, 2},
                               {2, 4, 0, 1, 3},
                               {3, 2, 4, 0, 1},
                               {4, 3, 1, 2, 0}}),
                  std::invalid_argument);
}

TEST_CASE("crossed factor validation") {
  Mat bad = Mat::Identity(2, 2);
  bad(0, 1) = 0.5;
  CHECK_THROWS_AS(CrossedFactor::inner_cyclic(TracialAlgebra::matrix(2), 2, bad), std::invalid_argument);
  // V^2 = diag(1, -1) is not scalar, so Ad(V) has order 4, not 2.
  Mat v = Mat::Zero(2, 2);
  v(0, 0) = 1.0;
  v(1, 1) = cplx(0.0, 1.0);
  CHECK_THROWS_AS(CrossedFactor::inner_cyclic(TracialAlgebra::matrix(2), 2, v), std::invalid_argument);
  CHECK_NOTHROW(CrossedFactor::inner_cyclic(TracialAlgebra::matrix(2), 4, v));
  CHECK_THROWS_AS(CrossedFactor::inner_cyclic(TracialAlgebra::matrix(2), 2, Mat::Identity(3, 3)),
                  std::invalid_argument);
}

TEST_CASE("crossed product arithmetic") {
  Rng rng(7);
  for (const auto& f : sample_factors()) {
    const auto& g = f.group();
    const auto s = static_cast<Eigen::Index>(f.base().matrix_size());
    // (b u_g)(c u_h) = b alpha_g(c) u_{gh}
    for (std::size_t a = 0; a < g.order(); ++a)
      for (std::size_t b = 0; b < g.order(); ++b) {
        Mat x = rng.complex_matrix(s, s), y = rng.complex_matrix(s, s);
        auto prod = f.multiply(f.monomial(a, x), f.monomial(b, y));
        auto expected = f.monomial(g.mul(a, b), x * f.act(a, y));
        CHECK(diff(f, prod, expected) < 1e-13);
      }
    auto x = random_element(f, rng), y = random_element(f, rng), z = random_element(f, rng);
    CHECK(diff(f, f.multiply(f.multiply(x, y), z), f.multiply(x, f.multiply(y, z))) < 1e-12);
    CHECK(diff(f, f.adjoint(f.adjoint(x)), x) < 1e-14);
    CHECK(diff(f, f.adjoint(f.multiply(x, y)), f.multiply(f.adjoint(y), f.adjoint(x))) < 1e-12);
    CHECK(std::abs(f.trace(f.multiply(x, y)) - f.trace(f.multiply(y, x))) < 1e-12);
    CHECK(f.trace(f.multiply(f.adjoint(x), x)).real() > 0.0);
    CHECK(std::abs(f.trace(f.multiply(f.adjoint(x), x)).imag()) < 1e-13);
    // tau o alpha_g = tau
    Mat b = rng.complex_matrix(s, s);
    for (std::size_t a = 0; a < g.order(); ++a)
      CHECK(std::abs(f.base().trace(f.act(a, b)) - f.base().trace(b)) < 1e-14);
  }
}

TEST_CASE("left regular representation is a *-homomorphism") {
  Rng rng(11);
  for (const auto& f : sample_factors()) {
    auto x = random_element(f, rng), y = random_element(f, rng);
    CHECK(max_abs(f.left_regular(f.multiply(x, y)) - f.left_regular(x) * f.left_regular(y)) < 1e-12);
    CHECK(max_abs(f.left_regular(f.adjoint(x)) - f.left_regular(x).adjoint()) < 1e-13);
  }
}

TEST_CASE("conditional expectation") {
  auto f = CrossedFactor::inner_cyclic(TracialAlgebra::matrix(2), 2, diag_pm());
  Rng rng(3);
  Mat b = rng.complex_matrix(2, 2), c = rng.complex_matrix(2, 2);
  CHECK(max_abs(cond_exp(f, f.unit(1))) == 0.0);
  CHECK(max_abs(cond_exp(f, f.from_base(b)) - b) == 0.0);
  CHECK(max_abs(cond_exp(f, f.add(f.monomial(1, b), f.from_base(c))) - c) == 0.0);
  CHECK(max_abs(cond_exp(f, f.from_base(f.base().identity())) - Mat::Identity(2, 2)) == 0.0);
  // Bimodule property and trace preservation.
  auto x = random_element(f, rng);
  Mat lhs = cond_exp(f, f.multiply(f.multiply(f.from_base(b), x), f.from_base(c)));
  CHECK(max_abs(lhs - b * cond_exp(f, x) * c) < 1e-13);
  CHECK(std::abs(f.base().trace(cond_exp(f, x)) - f.trace(x)) < 1e-15);
}

TEST_CASE("pp_expand") {
  auto f = CrossedFactor::trivial(TracialAlgebra::scalar(), FiniteGroup::cyclic(3));
  auto one = pp_expand(f, f.unit(0));
  CHECK(one[0](0, 0) == cplx(1.0));
  CHECK(one[1](0, 0) == cplx(0.0));
  CHECK(one[2](0, 0) == cplx(0.0));

  Mat b = Mat::Constant(1, 1, cplx(2.0, -1.0));
  auto single = pp_expand(f, f.monomial(1, b));  // nonzero only at u_{1^{-1}} = u_2
  CHECK(single[0](0, 0) == cplx(0.0));
  CHECK(single[1](0, 0) == cplx(0.0));
  CHECK(single[2](0, 0) == b(0, 0));

  auto two = pp_expand(f, f.add(f.unit(1), f.unit(2)));
  CHECK(two[0](0, 0) == cplx(0.0));
  CHECK(two[1](0, 0) == cplx(1.0));
  CHECK(two[2](0, 0) == cplx(1.0));

  Rng rng(5);
  for (const auto& fac : sample_factors()) {
    auto x = random_element(fac, rng);
    auto coeffs = pp_expand(fac, x);
    CHECK(diff(fac, pp_reconstruct(fac, coeffs), x) < 1e-14);
  }
}

TEST_CASE("Pimsner-Popa basis verification") {
  for (const auto& f : sample_factors()) {
    auto rep = verify_pp_basis(f, 1e-13);
    CHECK(rep.all_passed());
    CHECK(rep.checks().size() == 4);
  }
  // Basis starts with the unit.
  auto f = CrossedFactor::inner_cyclic(TracialAlgebra::matrix(2), 2, diag_pm());
  CHECK(f.basis_order().front() == f.group().identity());

  // Negative control: a duplicated u_g breaks orthogonality.
  auto basis = f.pp_basis();
  basis.push_back(basis.back());
  auto rep = verify_pp_basis(f, basis, 1e-13);
  CHECK_FALSE(rep.all_passed());
  REQUIRE(rep.find("pp.orthogonality") != nullptr);
  CHECK(rep.find("pp.orthogonality")->status == CheckStatus::fail);
}

TEST_CASE("e0 coefficient vanishes for punctured basis elements") {
  Rng rng(9);
  auto f = CrossedFactor::inner_cyclic(TracialAlgebra::matrix(2), 2, diag_pm());
  CHECK(e0_vanishing(f, 1, f.base().identity()).all_passed());
  Mat h = rng.complex_matrix(2, 2);
  h = (h + h.adjoint()).eval();
  CHECK(e0_vanishing(f, 1, h).all_passed());
  CHECK(e0_vanishing(f, 1, Mat::Zero(2, 2)).all_passed());
  for (const auto& fac : sample_factors())
    for (std::size_t g = 1; g < fac.index(); ++g) {
      const auto s = static_cast<Eigen::Index>(fac.base().matrix_size());
      CHECK(e0_vanishing(fac, g, rng.complex_matrix(s, s)).all_passed());
    }
  CHECK_THROWS_AS(e0_vanishing(f, 0, h), std::invalid_argument);
}
