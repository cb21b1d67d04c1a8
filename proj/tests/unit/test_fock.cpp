#include <doctest.h>

#include <functional>
#include <memory>

#include "radmul/fock.hpp"
#include "radmul/rng.hpp"

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

std::shared_ptr<const AmalgamatedSystem> mixed() {
  return std::make_shared<AmalgamatedSystem>(std::vector<CrossedFactor>{
      CrossedFactor::trivial(TracialAlgebra::scalar(), FiniteGroup::cyclic(3)),
      CrossedFactor::trivial(TracialAlgebra::scalar(), FiniteGroup::cyclic(2)),
      CrossedFactor::trivial(TracialAlgebra::scalar(), FiniteGroup::cyclic(2))});
}

// Count all letter sequences of the given length with no two neighbours in the same factor.
std::size_t brute_count(const AmalgamatedSystem& sys, std::size_t len) {
  const auto& letters = sys.letters();
  std::size_t count = 0;
  std::vector<std::size_t> idx(len, 0);
  std::function<void(std::size_t)> rec = [&](std::size_t pos) {
    if (pos == len) {
      for (std::size_t j = 1; j < len; ++j)
        if (letters[idx[j]].factor == letters[idx[j - 1]].factor) return;
      ++count;
      return;
    }
    for (std::size_t a = 0; a < letters.size(); ++a) {
      idx[pos] = a;
      rec(pos + 1);
    }
  };
  rec(0);
  return count;
}

FockVector random_vector(const std::shared_ptr<const FockSpace>& space, Rng& rng) {
  return FockVector(space, rng.complex_vector(static_cast<Eigen::Index>(space->dimension())));
}

Word w(std::initializer_list<Letter> ls) { return Word{std::vector<Letter>(ls)}; }

}  // namespace

TEST_CASE("word enumeration") {
  auto sys = dih();
  auto words = enumerate_words(*sys, 2);
  REQUIRE(words.size() == 5);
  CHECK(words[0] == Word{});
  CHECK(words[1] == w({{0, 1}}));
  CHECK(words[2] == w({{1, 1}}));
  CHECK(words[3] == w({{0, 1}, {1, 1}}));
  CHECK(words[4] == w({{1, 1}, {0, 1}}));

  CHECK(enumerate_words(*sys, 0).size() == 1);

  AmalgamatedSystem one({CrossedFactor::trivial(TracialAlgebra::scalar(), FiniteGroup::cyclic(3))});
  auto single = enumerate_words(one, 4);
  CHECK(single.size() == 3);
  for (const auto& word : single) CHECK(word.length() <= 1);

  auto mx = mixed();
  auto all = enumerate_words(*mx, 4);
  for (std::size_t len = 0; len <= 4; ++len) {
    auto n = static_cast<std::size_t>(std::count_if(all.begin(), all.end(), [len](const Word& x) { return x.length() == len; }));
    CHECK(n == brute_count(*mx, len));
  }
  for (std::size_t i = 1; i < all.size(); ++i) CHECK(length_lex_less(all[i - 1], all[i]));
  for (const auto& x : all) CHECK(mx->is_reduced(x));
}

TEST_CASE("fock space indexing") {
  auto space = std::make_shared<FockSpace>(mat2(), 4);
  CHECK(space->word_count() == 9);
  CHECK(space->block_size() == 4);
  CHECK(space->dimension() == 36);
  CHECK(space->words_up_to(0) == 1);
  CHECK(space->words_up_to(2) == 5);
  CHECK(space->words_up_to(7) == 9);
  for (std::size_t i = 0; i < space->word_count(); ++i) {
    CHECK(space->index_of(space->words()[i]) == i);
    CHECK(space->word_of(space->offset(i) + 3) == i);
  }
  CHECK_FALSE(space->index_of(w({{0, 1}, {0, 1}})).has_value());
  CHECK_FALSE(space->index_of(w({{0, 1}, {1, 1}, {0, 1}, {1, 1}, {0, 1}})).has_value());
}

TEST_CASE("canonicalize") {
  auto sys = mat2();
  auto space = std::make_shared<FockSpace>(sys, 3);
  Rng rng(1);
  Mat b = rng.complex_matrix(2, 2), c = rng.complex_matrix(2, 2);
  const Mat one = Mat::Identity(2, 2);

  auto v1 = canonicalize(space, {{{0, 1}}, {one, b}});
  CHECK(max_abs(v1.coeff(w({{0, 1}})) - b) == 0.0);
  auto v2 = canonicalize(space, {{{0, 1}}, {b, one}});
  CHECK(max_abs(v2.coeff(w({{0, 1}})) - b) < 1e-15);
  auto v3 = canonicalize(space, {{{1, 1}}, {b, one}});
  const Mat v = diag_pm();
  CHECK(max_abs(v3.coeff(w({{1, 1}})) - v.adjoint() * b * v) < 1e-15);

  // Against the crossed-product multiplication: b u_g c = (b alpha_g(c)) u_g = u_g alpha_g^{-1}(b alpha_g(c)).
  const auto& f = sys->factor(1);
  auto prod = f.multiply(f.multiply(f.from_base(b), f.unit(1)), f.from_base(c));
  auto v4 = canonicalize(space, {{{1, 1}}, {b, c}});
  CHECK(max_abs(v4.coeff(w({{1, 1}})) - f.act_inverse(1, prod.coeffs[1])) < 1e-14);

  // Two letters: b0 u (x) b1 u' b2 = u (x) u' alpha'^{-1}(alpha^{-1}(b0) b1) b2.
  Mat b2 = rng.complex_matrix(2, 2);
  auto v5 = canonicalize(space, {{{1, 1}, {0, 1}}, {b, c, b2}});
  CHECK(max_abs(v5.coeff(w({{1, 1}, {0, 1}})) - (v.adjoint() * b * v * c) * b2) < 1e-14);

  CHECK_THROWS_AS(canonicalize(space, {{{0, 1}, {0, 1}}, {one, one, one}}), std::invalid_argument);
  CHECK_THROWS_AS(canonicalize(space, {{{0, 1}}, {one}}), std::invalid_argument);
  // Too long for the truncation: zero vector.
  auto v6 = canonicalize(space, {{{0, 1}, {1, 1}, {0, 1}, {1, 1}}, {one, one, one, one, one}});
  CHECK(v6.data().isZero(0.0));
}

TEST_CASE("inner products") {
  auto space = std::make_shared<FockSpace>(mat2(), 3);
  Rng rng(2);
  const Mat one = Mat::Identity(2, 2);
  auto x = w({{0, 1}, {1, 1}});
  auto y = w({{1, 1}, {0, 1}});
  CHECK(max_abs(inner_n(FockVector::word(space, x, one), FockVector::word(space, x, one)) - one) == 0.0);
  CHECK(max_abs(inner_n(FockVector::word(space, x, one), FockVector::word(space, y, one))) == 0.0);
  Mat b = rng.complex_matrix(2, 2), c = rng.complex_matrix(2, 2);
  CHECK(max_abs(inner_n(FockVector::word(space, x, b), FockVector::word(space, x, c)) - b.adjoint() * c) < 1e-15);
  CHECK(std::abs(FockVector::vacuum(space, one).norm() - 1.0) < 1e-15);

  auto xi = random_vector(space, rng), eta = random_vector(space, rng);
  CHECK(max_abs(inner_n(xi, eta.right_multiply(b)) - inner_n(xi, eta) * b) < 1e-13);
  CHECK(std::abs(inner(xi, eta) - std::conj(inner(eta, xi))) < 1e-14);
  CHECK(std::abs(inner(xi, eta) - inner_n(xi, eta).trace() / 2.0) < 1e-13);
  // Left action is a *-representation.
  CHECK(max_abs(inner_n(xi.left_multiply(b), eta) - inner_n(xi, eta.left_multiply(b.adjoint()))) < 1e-13);
}

TEST_CASE("left and right actions") {
  auto sys = mat2();
  auto space = std::make_shared<FockSpace>(sys, 4);
  Rng rng(3);
  Mat b = rng.complex_matrix(2, 2), c = rng.complex_matrix(2, 2);
  auto xi = random_vector(space, rng);
  CHECK((xi.left_multiply(b).right_multiply(c).data() - xi.right_multiply(c).left_multiply(b).data()).cwiseAbs().maxCoeff() < 1e-13);
  CHECK((xi.left_multiply(b * c).data() - xi.left_multiply(c).left_multiply(b).data()).cwiseAbs().maxCoeff() < 1e-13);
  // Left multiplication agrees with canonicalize on simple tensors.
  auto word = w({{1, 1}, {0, 1}, {1, 1}});
  auto lhs = FockVector::word(space, word, c).left_multiply(b);
  auto rhs = canonicalize(space, {word.letters, {b, Mat::Identity(2, 2), Mat::Identity(2, 2), c}});
  CHECK((lhs.data() - rhs.data()).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("sector projections") {
  auto sys = dih();
  auto space = std::make_shared<FockSpace>(sys, 4);
  const Mat one = Mat::Identity(1, 1);
  CHECK(apply_projection(LengthAtLeast{1}, FockVector::vacuum(space, one)).data().isZero(0.0));
  auto x = FockVector::word(space, w({{0, 1}, {1, 1}}), one);
  CHECK(apply_projection(EndsInFactor{0}, x).data().isZero(0.0));
  CHECK(apply_projection(EndsInFactor{1}, x).data() == x.data());
  CHECK_FALSE(sector_contains(EndsInFactor{0}, Word{}));

  Rng rng(4);
  auto space2 = std::make_shared<FockSpace>(mat2(), 4);
  auto xi = random_vector(space2, rng);
  Mat b = rng.complex_matrix(2, 2);
  for (std::size_t n = 0; n <= 4; ++n) {
    auto q = apply_projection(LengthAtLeast{n}, xi);
    auto split = apply_projection(LengthAtLeast{n + 1}, xi) + apply_projection(LengthExactly{n}, xi);
    CHECK(q.data() == split.data());
  }
  for (SectorProjection p : {SectorProjection{LengthAtLeast{2}}, SectorProjection{LengthExactly{3}},
                             SectorProjection{EndsInFactor{1}}}) {
    auto once = apply_projection(p, xi);
    CHECK(apply_projection(p, once).data() == once.data());
    CHECK((apply_projection(p, xi.right_multiply(b)).data() - once.right_multiply(b).data()).cwiseAbs().maxCoeff() < 1e-14);
    auto eta = random_vector(space2, rng);
    CHECK(std::abs(inner(apply_projection(p, xi), eta) - inner(xi, apply_projection(p, eta))) < 1e-14);
  }
}

TEST_CASE("lambda spans") {
  auto sys = dih();
  auto space = std::make_shared<FockSpace>(sys, 3);
  auto l1 = lambda_span(space, 1);
  REQUIRE(l1.size() == 2);
  CHECK(l1[0].coeff(w({{0, 1}}))(0, 0) == cplx(1.0));
  CHECK(l1[1].coeff(w({{1, 1}}))(0, 0) == cplx(1.0));
  auto l0 = lambda_span(space, 0);
  CHECK(l0.size() == 1);
  CHECK_THROWS_AS(lambda_span(space, 4), std::invalid_argument);

  auto space2 = std::make_shared<FockSpace>(mat2(), 3);
  CHECK(lambda_span(space2, 0).size() == 4);
  CHECK(lambda_span(space2, 2).size() == 2 * 4);
  std::vector<FockVector> all;
  for (std::size_t k = 0; k <= 3; ++k)
    for (auto& v : lambda_span(space2, k)) all.push_back(v);
  Mat gram(static_cast<Eigen::Index>(all.size()), static_cast<Eigen::Index>(all.size()));
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = 0; j < all.size(); ++j)
      gram(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = inner(all[i], all[j]);
  Eigen::FullPivLU<Mat> lu(gram);
  CHECK(static_cast<std::size_t>(lu.rank()) == space2->dimension());
}
