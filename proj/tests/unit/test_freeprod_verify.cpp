#include <doctest.h>

#include <chrono>
#include <memory>

#include "radmul/freeprod_verify.hpp"
#include "radmul/lemma_suite.hpp"

using namespace radmul;

namespace {

Mat diag_pm() {
  Mat v = Mat::Zero(2, 2);
  v(0, 0) = 1.0;
  v(1, 1) = -1.0;
  return v;
}

std::shared_ptr<const AmalgamatedSystem> dih() {
  return std::make_shared<AmalgamatedSystem>(std::vector<CrossedFactor>{
      CrossedFactor::trivial(TracialAlgebra::scalar(), FiniteGroup::cyclic(2)),
      CrossedFactor::trivial(TracialAlgebra::scalar(), FiniteGroup::cyclic(2))});
}

std::shared_ptr<const AmalgamatedSystem> mat2() {
  return std::make_shared<AmalgamatedSystem>(std::vector<CrossedFactor>{
      CrossedFactor::trivial(TracialAlgebra::matrix(2), FiniteGroup::cyclic(2)),
      CrossedFactor::inner_cyclic(TracialAlgebra::matrix(2), 2, diag_pm())});
}

// Z/3 acting by Ad(diag(1, w)) free with a Z/2 factor, to exercise non-involutive letters.
std::shared_ptr<const AmalgamatedSystem> z3_mix() {
  Mat v = Mat::Zero(2, 2);
  v(0, 0) = 1.0;
  v(1, 1) = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
  return std::make_shared<AmalgamatedSystem>(std::vector<CrossedFactor>{
      CrossedFactor::inner_cyclic(TracialAlgebra::matrix(2), 3, v),
      CrossedFactor::trivial(TracialAlgebra::matrix(2), FiniteGroup::cyclic(2))});
}

ReducedWord units(const AmalgamatedSystem& sys, std::vector<Letter> letters) {
  const auto s = static_cast<Eigen::Index>(sys.base().matrix_size());
  ReducedWord w;
  for (const auto& l : letters) {
    w.factors.push_back(l.factor);
    w.letters.push_back(sys.factor(l.factor).unit(l.element));
    w.coeffs.push_back(Mat::Identity(s, s));
  }
  w.coeffs.push_back(Mat::Identity(s, s));
  return w;
}

Mat scalar(cplx z) { return Mat::Constant(1, 1, z); }

bool passed(const VerificationReport& r) {
  for (const auto& c : r.checks())
    if (c.status == CheckStatus::fail) {
      MESSAGE(c.name << " residual " << c.max_residual << " tol " << c.tolerance);
      return false;
    }
  return true;
}

}  // namespace

TEST_CASE("embedding of units and base elements") {
  for (auto sys : {dih(), mat2(), z3_mix()}) {
    auto space = std::make_shared<FockSpace>(sys, 3);
    const auto s = static_cast<Eigen::Index>(space->matrix_size());
    Rng rng(11);
    for (std::size_t i = 0; i < sys->factor_count(); ++i) {
      const auto& f = sys->factor(i);
      auto one = embed(space, i, f.unit(f.group().identity()));
      CHECK(max_abs(one.dense() - Mat::Identity(one.dense().rows(), one.dense().cols())) < 1e-14);
      const Mat b = rng.complex_matrix(s, s);
      CHECK(max_abs((embed(space, i, f.from_base(b)) - left_multiplication(space, b)).dense()) < 1e-13);
      // u_g creates (i, g) on the vacuum and maps (i, g^{-1}) back to it.
      for (const auto& l : sys->letters_of(i)) {
        auto eg = embed(space, i, f.unit(l.element));
        auto vac = FockVector::vacuum(space, Mat::Identity(s, s));
        CHECK(max_abs(eg.apply(vac).data() - FockVector::word(space, Word{{l}}, Mat::Identity(s, s)).data()) < 1e-14);
        const Letter inv{i, f.group().inverse(l.element)};
        const Mat back = eg.apply(FockVector::word(space, Word{{inv}}, Mat::Identity(s, s))).coeff(0);
        CHECK(max_abs(back - f.unitary(l.element) * f.unitary(inv.element)) < 1e-14);
      }
    }
  }
}

TEST_CASE("embedding is a homomorphism on the guard band") {
  for (auto sys : {dih(), mat2(), z3_mix()}) {
    auto space = std::make_shared<FockSpace>(sys, 3);
    const auto s = static_cast<Eigen::Index>(space->matrix_size());
    Rng rng(12);
    for (std::size_t i = 0; i < sys->factor_count(); ++i) {
      const auto& f = sys->factor(i);
      FactorElement x, y;
      for (std::size_t g = 0; g < f.group().order(); ++g) {
        x.coeffs.push_back(rng.complex_matrix(s, s));
        y.coeffs.push_back(rng.complex_matrix(s, s));
      }
      CHECK(band_residual(embed(space, i, x) * embed(space, i, y), embed(space, i, f.multiply(x, y)), 2) < 1e-12);
      CHECK(max_abs((embed(space, i, f.adjoint(x)) - embed(space, i, x).adjoint()).dense()) < 1e-12);
    }
  }
}

TEST_CASE("word operators on the vacuum") {
  auto sys = dih();
  auto space = std::make_shared<FockSpace>(sys, 3);
  auto vac = FockVector::vacuum(space, scalar(1.0));

  ReducedWord b;
  b.coeffs = {scalar(cplx(2.0, -1.0))};
  CHECK(max_abs(word_operator(space, b).apply(vac).data() - FockVector::vacuum(space, scalar(cplx(2.0, -1.0))).data()) == 0.0);

  auto one = word_operator(space, units(*sys, {{0, 1}}));
  CHECK(max_abs(one.apply(vac).data() - FockVector::word(space, Word{{{0, 1}}}, scalar(1.0)).data()) < 1e-15);
  auto two = word_operator(space, units(*sys, {{0, 1}, {1, 1}}));
  CHECK(max_abs(two.apply(vac).data() - FockVector::word(space, Word{{{0, 1}, {1, 1}}}, scalar(1.0)).data()) < 1e-15);

  ReducedWord bad = units(*sys, {{0, 1}, {0, 1}});
  CHECK_THROWS_AS(word_operator(space, bad), std::invalid_argument);
  ReducedWord not_kernel = units(*sys, {{0, 1}});
  not_kernel.letters[0].coeffs[0] = scalar(0.5);
  CHECK_THROWS_AS(validate(*sys, not_kernel), std::invalid_argument);
}

TEST_CASE("operator and direct routes agree on random words") {
  for (auto sys : {dih(), mat2(), z3_mix()}) {
    auto space = std::make_shared<FockSpace>(sys, 4);
    const auto s = static_cast<Eigen::Index>(space->matrix_size());
    Rng rng(13);
    auto vac = FockVector::vacuum(space, Mat::Identity(s, s));
    for (std::size_t n = 0; n <= 4; ++n)
      for (int k = 0; k < 5; ++k) {
        auto w = random_reduced_word(*sys, n, rng);
        auto a = word_operator(space, w);
        auto v = word_vector(space, w);
        CHECK(max_abs(a.apply(vac).data() - v.data()) < 1e-12 * std::max(1.0, max_abs(v.data())));
        const Mat e = vacuum_expectation(a);
        if (n == 0)
          CHECK(max_abs(e - w.coeffs[0]) < 1e-14);
        else
          CHECK(max_abs(e) < 1e-12 * std::max(1.0, max_abs(a.dense())));
      }
  }
}

TEST_CASE("vacuum expectation examples") {
  auto sys = mat2();
  auto space = std::make_shared<FockSpace>(sys, 2);
  CHECK(max_abs(vacuum_expectation(StructuredOperator::identity(space)) - Mat::Identity(2, 2)) == 0.0);
  CHECK(max_abs(vacuum_expectation(embed(space, 1, sys->factor(1).unit(1)))) == 0.0);
}

TEST_CASE("apply_multiplier examples") {
  auto sys = dih();
  auto space = std::make_shared<FockSpace>(sys, 4);
  auto id = StructuredOperator::identity(space);
  RadialMultiplier geo(RadialSymbol::geometric(1.0, 0.5), space, 0);
  CHECK(max_abs((apply_multiplier(geo, id) - id).dense()) < 1e-12);
  RadialMultiplier three(RadialSymbol({cplx(3.0), cplx(1.0)}, ConstantTail{0.0}), space, 0);
  CHECK(max_abs((apply_multiplier(three, id) - 3.0 * id).dense()) < 1e-12);

  RadialMultiplier d0(RadialSymbol::delta0(), space, 0);
  CHECK(max_abs(apply_multiplier(d0, word_operator(space, units(*sys, {{0, 1}}))).dense()) < 1e-12);
  RadialMultiplier ind(RadialSymbol::indicator(1), space, 0);
  auto a2 = word_operator(space, units(*sys, {{0, 1}, {1, 1}}));
  CHECK(max_abs(apply_multiplier(ind, a2).dense()) < 1e-12);
  auto a1 = word_operator(space, units(*sys, {{1, 1}}));
  CHECK(max_abs((apply_multiplier(ind, a1) - a1).dense()) < 1e-12);
}

TEST_CASE("spanning ranks") {
  auto r = spanning_check(dih(), 2);
  CHECK(r.all_passed());
  CHECK(r.find("spanning.rank")->details["rank"] == 5);
  auto r0 = spanning_check(mat2(), 0);
  CHECK(r0.find("spanning.rank")->details["rank"] == 4);
  auto r1 = spanning_check(mat2(), 1);
  CHECK(r1.find("spanning.rank")->details["rank"] == 12);
  CHECK(spanning_check(z3_mix(), 3).all_passed());
}

TEST_CASE("main theorem suite passes") {
  VerifyOptions opts;
  opts.fock_len = 4;
  opts.words_per_length = 6;
  opts.bound_samples = 20;
  SUBCASE("DIH, indicator of {0,1}") { CHECK(passed(verify_main_theorem(dih(), RadialSymbol::indicator(1), opts, 1))); }
  SUBCASE("MAT2, delta0 gives the conditional expectation") {
    auto r = verify_main_theorem(mat2(), RadialSymbol::delta0(), opts, 2);
    CHECK(passed(r));
    CHECK(r.find("theorem.conditional_expectation") != nullptr);
  }
  SUBCASE("constant 1 is the identity") {
    auto r = verify_main_theorem(mat2(), RadialSymbol::constant(1.0), opts, 3);
    CHECK(passed(r));
    CHECK(r.find("theorem.action.n=2")->max_residual < 1e-14);
  }
  SUBCASE("three-element group") {
    CHECK(passed(verify_main_theorem(z3_mix(), RadialSymbol({0.5, -1.0}, GeometricTail{1.0, 0.4, 0.2}), opts, 4)));
  }
}

TEST_CASE("sampled bound stays below the class norm") {
  auto space = std::make_shared<FockSpace>(mat2(), 3);
  for (const auto& phi : {RadialSymbol::geometric(1.0, 0.5), RadialSymbol::constant(1.0), RadialSymbol::delta0(),
                          RadialSymbol::indicator(1)}) {
    RadialMultiplier t(phi, space, 0);
    auto est = sampled_bound(t, 25, {1, 2}, 7);
    CHECK(est.samples == 50);
    CHECK(est.sup_ratio <= est.norm_c + 1e-8);
    CHECK(est.lower_envelope >= est.max_abs_phi - 1e-8);
  }
  RadialMultiplier one(RadialSymbol::constant(1.0), space, 0);
  CHECK(std::abs(sampled_bound(one, 10, {1}, 3).sup_ratio - 1.0) < 1e-12);
}

TEST_CASE("lemma suites") {
  for (auto sys : {dih(), mat2()}) {
    auto space = std::make_shared<FockSpace>(sys, 5);
    CHECK(passed(fock_invariants(space, 1e-12)));
    CHECK(passed(operator_invariants(space, 16, 5, 1e-10)));
    auto lem = generator_lemmas(space, 16, 5, 1e-10);
    CHECK(passed(lem));
    CHECK(lem.find("lemma.epsilon_case2")->status == CheckStatus::pass);
    RadialMultiplier t(RadialSymbol({1.0, -2.0, 0.5}, GeometricTail{0.3, 0.6, 0.1}), space, 0);
    CHECK(passed(case_rules(t, 5, 1e-10)));
  }
}

TEST_CASE("partition identity residual") {
  Rng rng(21);
  for (int i = 0; i < 20; ++i) CHECK(partition_identity_residual(rng.complex_vector(12), 6) < 1e-12);
  Vec x = Vec::Zero(3);
  x(0) = 1.0;
  CHECK(partition_identity_residual(x, 2) < 1e-15);
}

TEST_CASE("generator enumeration counts") {
  Rng rng(1);
  // DIH: one alternating sequence per length and start factor.
  CHECK(enumerate_generators(*dih(), 2, 2, rng).size() == 25);
  CHECK(enumerate_generators(*z3_mix(), 1, 1, rng).size() == 16);
  auto space = std::make_shared<FockSpace>(dih(), 5);
  GeneratorWord g;
  g.creations = {{0, 1}, {1, 1}};
  g.annihilations = {{0, 1}};
  CHECK(guard_band(*space, g) == 4);
  CHECK(guard_band(*space, g, 2) == 2);
}
