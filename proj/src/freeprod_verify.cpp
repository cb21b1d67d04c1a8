#include "radmul/freeprod_verify.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "radmul/lemma_suite.hpp"

namespace radmul {

namespace {

StructuredOperator basis_creation(const SpacePtr& space, std::size_t factor, std::size_t g) {
  const auto& f = space->system().factor(factor);
  return g == f.group().identity() ? unit_creation(space, factor) : creation(space, Letter{factor, g});
}

StructuredOperator basis_annihilation(const SpacePtr& space, std::size_t factor, std::size_t g) {
  const auto& f = space->system().factor(factor);
  return g == f.group().identity() ? unit_creation(space, factor) : annihilation(space, Letter{factor, g});
}

FactorElement random_element(const CrossedFactor& f, Rng& rng) {
  const auto s = static_cast<Eigen::Index>(f.base().matrix_size());
  FactorElement x;
  for (std::size_t g = 0; g < f.group().order(); ++g) x.coeffs.push_back(rng.complex_matrix(s, s));
  return x;
}

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

double rel(const Mat& diff, const Mat& ref) { return max_abs(diff) / std::max(1.0, max_abs(ref)); }

double norm_of(const StructuredOperator& a, std::uint64_t seed) { return op_norm(a, seed).value; }

// The N-valued vacuum vector of a PP basis element of factor i: the vacuum for e_0, the word (i, g) otherwise.
FockVector basis_vector(const SpacePtr& space, std::size_t factor, std::size_t g) {
  const auto s = static_cast<Eigen::Index>(space->matrix_size());
  const Mat id = Mat::Identity(s, s);
  if (g == space->system().factor(factor).group().identity()) return FockVector::vacuum(space, id);
  return FockVector::word(space, Word{{Letter{factor, g}}}, id);
}

}  // namespace

StructuredOperator embed(const SpacePtr& space, std::size_t factor, const FactorElement& a) {
  const auto& f = space->system().factor(factor);
  if (a.coeffs.size() != f.group().order()) throw std::invalid_argument("embed: wrong number of coefficients");
  auto out = StructuredOperator::zero(space);
  const auto& order = f.basis_order();
  for (std::size_t gk : order) {
    const auto right = f.multiply(a, f.unit(gk));
    const auto ann = basis_annihilation(space, factor, gk);
    for (std::size_t gj : order) {
      const Mat c = cond_exp(f, f.multiply(f.adjoint(f.unit(gj)), right));
      if (max_abs(c) == 0.0) continue;
      out += basis_creation(space, factor, gj) * left_multiplication(space, c) * ann;
    }
  }
  return out;
}

void validate(const AmalgamatedSystem& system, const ReducedWord& w) {
  const std::size_t n = w.letters.size();
  if (w.factors.size() != n || w.coeffs.size() != n + 1)
    throw std::invalid_argument("reduced word: need n letters, n factor indices and n+1 coefficients");
  const auto s = static_cast<Eigen::Index>(system.base().matrix_size());
  for (const auto& b : w.coeffs)
    if (b.rows() != s || b.cols() != s) throw std::invalid_argument("reduced word: coefficient has the wrong size");
  for (std::size_t j = 0; j < n; ++j) {
    if (w.factors[j] >= system.factor_count()) throw std::invalid_argument("reduced word: factor index out of range");
    if (j > 0 && w.factors[j] == w.factors[j - 1])
      throw std::invalid_argument("reduced word: consecutive letters from the same factor");
    const auto& f = system.factor(w.factors[j]);
    const auto& x = w.letters[j];
    if (x.coeffs.size() != f.group().order()) throw std::invalid_argument("reduced word: letter has the wrong size");
    for (const auto& c : x.coeffs)
      if (c.rows() != s || c.cols() != s) throw std::invalid_argument("reduced word: letter coefficient has the wrong size");
    if (max_abs(cond_exp(f, x)) > 1e-13 * std::max(1.0, max_abs(x)))
      throw std::invalid_argument("reduced word: letter has nonzero conditional expectation");
  }
}

StructuredOperator word_operator(const SpacePtr& space, const ReducedWord& w) {
  validate(space->system(), w);
  const std::size_t n = w.length();
  const SpacePtr big = n == 0 ? space : std::make_shared<FockSpace>(space->system_ptr(), space->max_length() + n);
  StructuredOperator prod = left_multiplication(big, w.coeffs[0]);
  for (std::size_t j = 0; j < n; ++j) {
    prod = prod * embed(big, w.factors[j], w.letters[j]);
    prod = prod * left_multiplication(big, w.coeffs[j + 1]);
  }
  if (n == 0) return prod;
  const auto d = static_cast<Eigen::Index>(space->dimension());
  return StructuredOperator(space, SpMat(prod.matrix().topLeftCorner(d, d)));
}

FockVector word_vector(const SpacePtr& space, const ReducedWord& w) {
  validate(space->system(), w);
  const auto& sys = space->system();
  const std::size_t n = w.length();
  FockVector out(space);
  if (n == 0) {
    out += FockVector::vacuum(space, w.coeffs[0]);
    return out;
  }
  // Sum over one group element per letter, skipping the identity (E(a_j) = 0).
  std::vector<std::size_t> pick(n, 0);
  auto valid = [&](std::size_t j) { return pick[j] != sys.factor(w.factors[j]).group().identity(); };
  while (true) {
    bool ok = true;
    for (std::size_t j = 0; j < n && ok; ++j) ok = valid(j);
    if (ok) {
      FormalTensor t;
      for (std::size_t j = 0; j < n; ++j) {
        t.letters.push_back(Letter{w.factors[j], pick[j]});
        t.coeffs.push_back(w.coeffs[j] * w.letters[j].coeffs[pick[j]]);
      }
      t.coeffs.push_back(w.coeffs[n]);
      out += canonicalize(space, t);
    }
    std::size_t j = 0;
    while (j < n && ++pick[j] == sys.factor(w.factors[j]).group().order()) pick[j++] = 0;
    if (j == n) break;
  }
  return out;
}

Mat vacuum_expectation(const StructuredOperator& a) {
  const auto s = static_cast<Eigen::Index>(a.space().matrix_size());
  return a.apply(FockVector::vacuum(a.space_ptr(), Mat::Identity(s, s))).coeff(0);
}

StructuredOperator apply_multiplier(const RadialMultiplier& t, const StructuredOperator& a) { return t(a); }

FactorElement random_kernel_element(const CrossedFactor& f, Rng& rng) {
  const auto s = static_cast<Eigen::Index>(f.base().matrix_size());
  if (f.group().order() < 2) throw std::invalid_argument("random_kernel_element: factor equals N");
  while (true) {
    FactorElement x = random_element(f, rng);
    x.coeffs[f.group().identity()] = Mat::Zero(s, s);
    if (max_abs(x) > 1e-8) return x;
  }
}

ReducedWord random_reduced_word(const AmalgamatedSystem& system, std::size_t n, Rng& rng) {
  const std::size_t count = system.factor_count();
  if (n >= 2 && count < 2) throw std::invalid_argument("random_reduced_word: need two factors for length >= 2");
  const auto s = static_cast<Eigen::Index>(system.base().matrix_size());
  ReducedWord w;
  for (std::size_t j = 0; j < n; ++j) {
    std::size_t i = rng.index(j == 0 ? count : count - 1);
    if (j > 0 && i >= w.factors.back()) ++i;
    w.factors.push_back(i);
    w.letters.push_back(random_kernel_element(system.factor(i), rng));
  }
  for (std::size_t j = 0; j <= n; ++j) w.coeffs.push_back(rng.complex_matrix(s, s));
  return w;
}

VerificationReport verify_main_theorem(std::shared_ptr<const AmalgamatedSystem> system, const RadialSymbol& phi,
                                       const VerifyOptions& opts, std::uint64_t seed) {
  VerificationReport rep;
  Rng rng(seed);
  const SpacePtr space = std::make_shared<FockSpace>(system, opts.fock_len);
  const RadialMultiplier t(phi, space, opts.hankel_dim);
  const auto& tol = opts.tol;
  const std::size_t lmax = space->max_length();
  const std::size_t nmax = std::min(opts.max_word_length, lmax >= 2 ? lmax - 2 : 0);

  const auto id = StructuredOperator::identity(space);
  rep.add("theorem.identity", max_abs((t(id) - phi(0) * id).dense()), tol.eigen, {{"phi0", std::abs(phi(0))}});

  bool conditional = std::abs(phi(0) - 1.0) == 0.0 && phi.limit() == 0.0;
  for (std::size_t n = 1; n <= lmax + 1; ++n) conditional = conditional && phi(n) == 0.0;

  double module = 0.0, expectation = 0.0, vec_res = 0.0, cond_res = 0.0;
  std::vector<std::pair<StructuredOperator, cplx>> pool;
  for (std::size_t n = 0; n <= nmax; ++n) {
    double action = 0.0, image = 0.0;
    for (std::size_t k = 0; k < opts.words_per_length; ++k) {
      const auto w = random_reduced_word(*system, n, rng);
      const auto a = word_operator(space, w);
      const auto ta = t(a);
      const double na = norm_of(a, seed + k);
      action = std::max(action, norm_of(ta - phi(n) * a, seed + k) / na);

      const auto s = static_cast<Eigen::Index>(space->matrix_size());
      const auto vac = FockVector::vacuum(space, Mat::Identity(s, s));
      const auto direct = word_vector(space, w);
      const double scale = std::max(1.0, direct.data().cwiseAbs().maxCoeff());
      vec_res = std::max(vec_res, max_abs(a.apply(vac).data() - direct.data()) / scale);
      image = std::max(image, max_abs(ta.apply(vac).data() - phi(n) * direct.data()) / scale);

      const Mat ea = vacuum_expectation(a);
      expectation = std::max(expectation, rel(n == 0 ? Mat(ea - w.coeffs[0]) : ea, a.dense()));
      module = std::max(module, right_module_residual(ta) / std::max(1.0, max_abs(a.dense())));
      if (conditional)
        cond_res = std::max(cond_res, rel((ta - left_multiplication(space, ea)).dense(), a.dense()));
      if (k < 2) pool.emplace_back(a, phi(n));
    }
    const nlohmann::json d = {{"length", n}, {"words", opts.words_per_length}, {"phi", std::abs(phi(n))}};
    rep.add("theorem.action.n=" + std::to_string(n), action, tol.eigen, d);
    rep.add("theorem.vacuum_image.n=" + std::to_string(n), image, tol.eigen, d);
  }
  rep.add("theorem.word_vector", vec_res, 1e-12);
  rep.add("theorem.expectation", expectation, 1e-12);
  rep.add("theorem.right_module", module, tol.eigen);
  if (conditional)
    rep.add("theorem.conditional_expectation", cond_res, tol.eigen);

  double lin = 0.0;
  for (std::size_t i = 0; i + 1 < pool.size(); ++i) {
    const cplx alpha = rng.complex_normal(), beta = rng.complex_normal();
    const auto& a = pool[i].first;
    const auto& b = pool[i + 1].first;
    const auto combo = alpha * a + beta * b;
    const Mat diff = (t(combo) - alpha * t(a) - beta * t(b)).dense();
    lin = std::max(lin, rel(diff, combo.dense()));
  }
  rep.add("theorem.linearity", lin, 1e-12, {{"pairs", pool.empty() ? 0 : pool.size() - 1}});

  // The embedding of each factor.
  const std::size_t band = lmax >= 1 ? lmax - 1 : 0;
  double hom = 0.0, adj = 0.0, coeff = 0.0;
  for (std::size_t i = 0; i < system->factor_count(); ++i) {
    const auto& f = system->factor(i);
    for (int r = 0; r < 3; ++r) {
      const auto x = random_element(f, rng), y = random_element(f, rng);
      const auto ex = embed(space, i, x), ey = embed(space, i, y);
      hom = std::max(hom, band_residual(ex * ey, embed(space, i, f.multiply(x, y)), band));
      adj = std::max(adj, rel((embed(space, i, f.adjoint(x)) - ex.adjoint()).dense(), ex.dense()));
      for (std::size_t gl : f.basis_order())
        for (std::size_t gm : f.basis_order()) {
          const Mat lhs = inner_n(basis_vector(space, i, gm), ex.apply(basis_vector(space, i, gl)));
          const Mat rhs = cond_exp(f, f.multiply(f.adjoint(f.unit(gm)), f.multiply(x, f.unit(gl))));
          coeff = std::max(coeff, rel(lhs - rhs, rhs));
        }
    }
  }
  rep.add("embedding.homomorphism", hom, 1e-11, {{"band", band}});
  rep.add("embedding.adjoint", adj, 1e-12);
  rep.add("embedding.coefficients", coeff, 1e-12);

  rep.merge(case_rules(t, seed, tol.eigen));

  const auto est = sampled_bound(t, opts.bound_samples, opts.amplifications, seed);
  nlohmann::json bd = {{"norm_c", est.norm_c}, {"sup_ratio", est.sup_ratio}, {"samples", est.samples},
                       {"factor_bound", t.factor_bound()}};
  bd["sup_ratio_by_amplification"] = est.sup_ratio_by_amplification;
  rep.add("bound.upper", std::max(0.0, est.sup_ratio - est.norm_c), tol.spectral, bd);
  rep.add("bound.lower_envelope", std::max(0.0, est.max_abs_phi - est.lower_envelope), tol.spectral,
          {{"lower_envelope", est.lower_envelope}, {"max_abs_phi", est.max_abs_phi}});
  return rep;
}

VerificationReport spanning_check(std::shared_ptr<const AmalgamatedSystem> system, std::size_t max_length) {
  VerificationReport rep;
  const SpacePtr space = std::make_shared<FockSpace>(system, max_length);
  const auto s = static_cast<Eigen::Index>(space->matrix_size());
  const auto vac = FockVector::vacuum(space, Mat::Identity(s, s));
  Mat images(static_cast<Eigen::Index>(space->dimension()), static_cast<Eigen::Index>(space->dimension()));
  Eigen::Index col = 0;
  for (const auto& w : space->words()) {
    ReducedWord rw;
    for (const auto& l : w.letters) {
      rw.factors.push_back(l.factor);
      rw.letters.push_back(system->factor(l.factor).unit(l.element));
      rw.coeffs.push_back(Mat::Identity(s, s));
    }
    rw.coeffs.push_back(Mat::Identity(s, s));
    for (Eigen::Index q = 0; q < s; ++q)
      for (Eigen::Index p = 0; p < s; ++p) {
        Mat unit = Mat::Zero(s, s);
        unit(p, q) = 1.0;
        rw.coeffs.back() = unit;
        images.col(col++) = word_operator(space, rw).apply(vac).data();
      }
  }
  // Gram matrix of the images in the tau-inner product.
  const Mat gram = images.adjoint() * images / static_cast<double>(s);
  Eigen::FullPivLU<Mat> lu(gram);
  const auto rank = static_cast<std::size_t>(lu.rank());
  rep.add("spanning.rank", static_cast<double>(space->dimension() - std::min(rank, space->dimension())), 0.0,
          {{"rank", rank}, {"dimension", space->dimension()}, {"words", space->word_count()}, {"max_length", max_length}});
  return rep;
}

BoundEstimate sampled_bound(const RadialMultiplier& t, std::size_t samples, const std::vector<std::size_t>& amplifications,
                            std::uint64_t seed) {
  BoundEstimate est;
  Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
  const auto& space = t.space();
  const auto& sys = space->system();
  est.norm_c = norm_c(t.symbol(), t.hankel_dim()).value;

  for (std::size_t m : amplifications) {
    double sup = 0.0;
    const auto mm = static_cast<Eigen::Index>(m);
    for (std::size_t k = 0; k < samples; ++k) {
      const std::size_t terms = 1 + rng.index(3);
      Mat a, ta;
      for (std::size_t j = 0; j < terms; ++j) {
        const auto g = materialize(space, random_generator(sys, 2, 2, rng));
        const Mat c = rng.complex_matrix(mm, mm);
        const Mat ga = kron(c, g.dense());
        const Mat gt = kron(c, t(g).dense());
        if (j == 0) {
          a = ga;
          ta = gt;
        } else {
          a += ga;
          ta += gt;
        }
      }
      const double na = spectral_norm(a);
      if (na < 1e-12) continue;
      sup = std::max(sup, spectral_norm(ta) / na);
      ++est.samples;
    }
    est.sup_ratio_by_amplification.push_back(sup);
    est.sup_ratio = std::max(est.sup_ratio, sup);
  }

  // Creation words of length n are eigenvectors: T(a_n) = phi(n) a_n.
  const std::size_t top = std::min<std::size_t>(3, space->max_length());
  const auto s = static_cast<Eigen::Index>(space->matrix_size());
  for (std::size_t n = 0; n <= top; ++n) {
    est.max_abs_phi = std::max(est.max_abs_phi, std::abs(t.symbol()(n)));
    GeneratorWord g;
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t factor = sys.factor_count() < 2 ? 0 : j % 2;
      const auto letters = sys.letters_of(factor);
      if (letters.empty() || (j > 0 && sys.factor_count() < 2)) break;
      g.creations.push_back(letters.front());
    }
    if (g.k() != n) continue;
    for (std::size_t j = 0; j <= n; ++j) g.creation_coeffs.push_back(Mat::Identity(s, s));
    const auto a = materialize(space, g);
    const double na = spectral_norm(a.dense());
    if (na < 1e-12) continue;
    est.lower_envelope = std::max(est.lower_envelope, spectral_norm(t(a).dense()) / na);
  }
  return est;
}

}  // namespace radmul
