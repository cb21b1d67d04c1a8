#include "radmul/lemma_suite.hpp"

#include <algorithm>
#include <cmath>

namespace radmul {

namespace {

std::vector<Word> words_of_length(const AmalgamatedSystem& system, std::size_t n) {
  std::vector<Word> out;
  for (auto& w : enumerate_words(system, n))
    if (w.length() == n) out.push_back(std::move(w));
  return out;
}

GeneratorWord with_coefficients(const AmalgamatedSystem& system, const Word& c, const Word& a, Rng& rng) {
  const auto s = static_cast<Eigen::Index>(system.base().matrix_size());
  GeneratorWord g;
  g.creations = c.letters;
  g.annihilations = a.letters;
  for (std::size_t j = 0; j <= g.k(); ++j) g.creation_coeffs.push_back(rng.complex_matrix(s, s));
  for (std::size_t j = 0; j < g.l(); ++j) g.annihilation_coeffs.push_back(rng.complex_matrix(s, s));
  return g;
}

Word random_alternating(const AmalgamatedSystem& system, std::size_t n, Rng& rng) {
  Word w;
  const auto& letters = system.letters();
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Letter> allowed;
    for (const auto& l : letters)
      if (w.empty() || l.factor != w.letters.back().factor) allowed.push_back(l);
    if (allowed.empty()) break;
    w.letters.push_back(allowed[rng.index(allowed.size())]);
  }
  return w;
}

double max_abs_vec(const FockVector& v) { return v.data().size() == 0 ? 0.0 : v.data().cwiseAbs().maxCoeff(); }

cplx eigen_sum(const Vec& x, const Vec& y, std::ptrdiff_t k, std::ptrdiff_t l) {
  cplx s = 0.0;
  for (std::ptrdiff_t t = 0; k + t < x.size() && l + t < y.size(); ++t) {
    if (k + t < 0 || l + t < 0) continue;
    s += x(k + t) * std::conj(y(l + t));
  }
  return s;
}

}  // namespace

std::vector<GeneratorWord> enumerate_generators(const AmalgamatedSystem& system, std::size_t max_k, std::size_t max_l,
                                                Rng& rng) {
  std::vector<GeneratorWord> out;
  for (std::size_t k = 0; k <= max_k; ++k) {
    const auto cs = words_of_length(system, k);
    for (std::size_t l = 0; l <= max_l; ++l) {
      const auto as = words_of_length(system, l);
      for (const auto& c : cs)
        for (const auto& a : as) out.push_back(with_coefficients(system, c, a, rng));
    }
  }
  return out;
}

GeneratorWord random_generator(const AmalgamatedSystem& system, std::size_t max_k, std::size_t max_l, Rng& rng) {
  const std::size_t k = rng.index(max_k + 1);
  const std::size_t l = rng.index(max_l + 1);
  const Word c = random_alternating(system, k, rng);
  const Word a = random_alternating(system, l, rng);
  return with_coefficients(system, c, a, rng);
}

std::size_t guard_band(const FockSpace& space, const GeneratorWord& w, std::size_t depth) {
  const std::size_t grow = w.k() > w.l() ? w.k() - w.l() : 0;
  const std::size_t lmax = space.max_length();
  return grow + depth >= lmax ? 0 : lmax - grow - depth;
}

double band_residual(const StructuredOperator& lhs, const StructuredOperator& rhs, std::size_t band) {
  const Mat r = rhs.band(band);
  const Mat d = lhs.band(band) - r;
  if (d.size() == 0) return 0.0;
  return max_abs(d) / std::max(1.0, max_abs(r));
}

double partition_identity_residual(const Vec& x, std::size_t max_length) {
  const double total = x.squaredNorm();
  auto at = [&x](std::size_t t) { return t < static_cast<std::size_t>(x.size()) ? std::norm(x(static_cast<Eigen::Index>(t))) : 0.0; };
  double worst = 0.0;
  for (std::size_t k = 0; k <= max_length; ++k) {
    double s = 0.0;
    for (std::size_t n = 0; k + n < static_cast<std::size_t>(x.size()); ++n) s += at(k + n);
    for (std::size_t n = 1; n <= k; ++n) s += at(k - n);
    worst = std::max(worst, std::abs(s - total));
  }
  return worst;
}

VerificationReport fock_invariants(const SpacePtr& space, double tol) {
  VerificationReport rep;
  Rng rng(0);
  const auto& sys = space->system();
  const auto& words = space->words();

  bool ordered = true;
  for (std::size_t i = 0; i < words.size(); ++i) {
    ordered = ordered && sys.is_reduced(words[i]) && words[i].length() <= space->max_length();
    if (i > 0) ordered = ordered && length_lex_less(words[i - 1], words[i]);
  }
  rep.add_bool("fock.enumeration", ordered, {{"words", words.size()}});

  const auto s = static_cast<Eigen::Index>(space->matrix_size());
  const auto dim = static_cast<Eigen::Index>(space->dimension());
  double module = 0.0, commute = 0.0, proj = 0.0, split = 0.0;
  for (int sample = 0; sample < 5; ++sample) {
    FockVector xi(space, rng.complex_vector(dim)), eta(space, rng.complex_vector(dim));
    const Mat b = rng.complex_matrix(s, s), c = rng.complex_matrix(s, s);
    module = std::max(module, max_abs(inner_n(xi, eta.right_multiply(b)) - inner_n(xi, eta) * b));
    commute = std::max(commute, max_abs_vec(xi.left_multiply(c).right_multiply(b) - xi.right_multiply(b).left_multiply(c)));
    std::vector<SectorProjection> ps;
    for (std::size_t n = 0; n <= space->max_length(); ++n) {
      ps.emplace_back(LengthAtLeast{n});
      ps.emplace_back(LengthExactly{n});
      split = std::max(split, max_abs_vec(apply_projection(LengthAtLeast{n}, xi) - apply_projection(LengthAtLeast{n + 1}, xi) -
                                          apply_projection(LengthExactly{n}, xi)));
    }
    for (std::size_t i = 0; i < sys.factor_count(); ++i) ps.emplace_back(EndsInFactor{i});
    for (const auto& p : ps) {
      const auto once = apply_projection(p, xi);
      proj = std::max(proj, max_abs_vec(apply_projection(p, once) - once));
      proj = std::max(proj, max_abs_vec(apply_projection(p, xi.right_multiply(b)) - once.right_multiply(b)));
      proj = std::max(proj, std::abs(inner(once, eta) - inner(xi, apply_projection(p, eta))));
    }
  }
  rep.add("fock.inner_right_module", module, tol);
  rep.add("fock.left_right_commute", commute, tol);
  rep.add("fock.projections", proj, tol);
  rep.add("fock.length_split", split, tol);

  std::vector<FockVector> span;
  for (std::size_t k = 0; k <= space->max_length(); ++k)
    for (auto& v : lambda_span(space, k)) span.push_back(std::move(v));
  Mat gram(static_cast<Eigen::Index>(span.size()), static_cast<Eigen::Index>(span.size()));
  for (std::size_t i = 0; i < span.size(); ++i)
    for (std::size_t j = 0; j < span.size(); ++j)
      gram(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = inner(span[i], span[j]);
  Eigen::FullPivLU<Mat> lu(gram);
  const auto rank = static_cast<std::size_t>(lu.rank());
  rep.add("fock.lambda_span_rank", static_cast<double>(space->dimension() - std::min(rank, space->dimension())), 0.0,
          {{"rank", rank}, {"dimension", space->dimension()}});
  return rep;
}

VerificationReport operator_invariants(const SpacePtr& space, std::size_t hankel_dim, std::uint64_t seed, double tol) {
  VerificationReport rep;
  Rng rng(seed);
  const auto& sys = space->system();
  const std::size_t m = std::max<std::size_t>(hankel_dim, 1);

  double part = 0.0;
  for (int i = 0; i < 100; ++i) part = std::max(part, partition_identity_residual(rng.complex_vector(static_cast<Eigen::Index>(m)), space->max_length()));
  rep.add("ops.partition_identity", part, std::max(tol, 1e-12), {{"samples", 100}, {"M", m}});

  double adj_l = 0.0, adj_r = 0.0;
  for (const auto& g : sys.letters()) {
    adj_l = std::max(adj_l, adjoint_check(creation(space, g), annihilation(space, g), "L").checks().front().max_residual);
    adj_r = std::max(adj_r, adjoint_check(right_creation(space, g), right_annihilation(space, g), "R").checks().front().max_residual);
  }
  const Vec x = rng.complex_vector(static_cast<Eigen::Index>(m));
  const ShiftedVector sx{x, 1, ShiftedVector::Direction::forward};
  const double adj_d = adjoint_check(diag(space, sx), diag(space, sx.conjugate()), "D").checks().front().max_residual;
  rep.add("ops.adjoint.L", adj_l, 1e-12);
  rep.add("ops.adjoint.R", adj_r, 1e-12);
  rep.add("ops.adjoint.D", adj_d, 1e-12);

  const auto id = StructuredOperator::identity(space);
  const auto q1 = projection(space, LengthAtLeast{1});
  rep.add("ops.rho_identity", max_abs((rho(id) - q1).dense()), tol);
  rep.add("ops.epsilon_identity", max_abs((epsilon(id) - q1).dense()), tol);

  double module = 0.0;
  for (const auto& g : sys.letters()) {
    module = std::max(module, right_module_residual(creation(space, g)));
    module = std::max(module, right_module_residual(annihilation(space, g)));
  }
  module = std::max(module, right_module_residual(diag(space, sx)));
  const Vec y = rng.complex_vector(static_cast<Eigen::Index>(m));
  for (int i = 0; i < 3; ++i) {
    const auto a = materialize(space, random_generator(sys, 2, 2, rng));
    const double scale = std::max(1.0, max_abs(a.dense()));
    module = std::max(module, right_module_residual(a) / scale);
    module = std::max(module, right_module_residual(rho(a)) / scale);
    module = std::max(module, right_module_residual(epsilon(a)) / scale);
    module = std::max(module, right_module_residual(phi_block(PhiVariant::first, x, y, a)) / (scale * x.norm() * y.norm()));
    module = std::max(module, right_module_residual(phi_block(PhiVariant::second, x, y, a)) / (scale * x.norm() * y.norm()));
  }
  rep.add("ops.right_module", module, std::max(tol, 1e-12));

  double ident = 0.0, cb = 0.0;
  for (auto v : {PhiVariant::first, PhiVariant::second}) {
    ident = std::max(ident, max_abs((phi_block(v, x, x, id) - x.squaredNorm() * id).dense()) / x.squaredNorm());
    const double bound = phi_cb_bound(space, v, x, y);
    cb = std::max(cb, std::max(0.0, bound - x.norm() * y.norm()) / (x.norm() * y.norm()));
  }
  rep.add("ops.phi_identity", ident, std::max(tol, 1e-12));
  rep.add("ops.phi_cb_bound", cb, 1e-10, {{"norm_x", x.norm()}, {"norm_y", y.norm()}});
  return rep;
}

VerificationReport generator_lemmas(const SpacePtr& space, std::size_t hankel_dim, std::uint64_t seed, double tol) {
  VerificationReport rep;
  Rng rng(seed);
  const auto gens = enumerate_generators(space->system(), 2, 2, rng);
  const std::size_t m = std::max<std::size_t>(hankel_dim, 1);
  Vec x = rng.complex_vector(static_cast<Eigen::Index>(m)), y = rng.complex_vector(static_cast<Eigen::Index>(m));
  x.normalize();
  y.normalize();

  double rho_res = 0.0, eps1 = 0.0, eps2 = 0.0, phi1 = 0.0, phi2 = 0.0;
  std::size_t n_case1 = 0, n_case2 = 0;
  for (const auto& g : gens) {
    const auto a = materialize(space, g);
    StructuredOperator r = a;
    for (std::size_t n = 0; n <= 2; ++n) {
      const auto expected = a * projection(space, LengthAtLeast{g.l() + n});
      rho_res = std::max(rho_res, band_residual(r, expected, guard_band(*space, g, n)));
      r = rho(r);
    }
    const bool two = case_of(g) == CaseTag::case2;
    const auto k = static_cast<std::ptrdiff_t>(g.k());
    const auto l = static_cast<std::ptrdiff_t>(g.l());
    const std::size_t band = guard_band(*space, g);
    if (two) {
      ++n_case2;
      eps2 = std::max(eps2, band_residual(epsilon(a), a, band));
    } else {
      ++n_case1;
      eps1 = std::max(eps1, band_residual(epsilon(a), rho(a), guard_band(*space, g, 1)));
    }
    phi1 = std::max(phi1, band_residual(phi_block(PhiVariant::first, x, y, a), eigen_sum(x, y, k, l) * a, band));
    const cplx lambda2 = two ? eigen_sum(x, y, k - 1, l - 1) : eigen_sum(x, y, k, l);
    phi2 = std::max(phi2, band_residual(phi_block(PhiVariant::second, x, y, a), lambda2 * a, band));
  }
  const nlohmann::json details = {{"generators", gens.size()}, {"case1", n_case1}, {"case2", n_case2}};
  rep.add("lemma.rho_power", rho_res, tol, details);
  rep.add("lemma.epsilon_case1", eps1, tol, details);
  if (n_case2 > 0)
    rep.add("lemma.epsilon_case2", eps2, tol, details);
  else
    rep.add_skipped("lemma.epsilon_case2", "no Case 2 generators for this configuration");
  rep.add("lemma.phi1_eigen", phi1, tol, details);
  rep.add("lemma.phi2_eigen", phi2, tol, details);
  return rep;
}

VerificationReport case_rules(const RadialMultiplier& t, std::uint64_t seed, double tol) {
  VerificationReport rep;
  Rng rng(seed);
  const auto& space = t.space();
  const auto gens = enumerate_generators(space->system(), 2, 2, rng);
  const auto psi = psi_decompose(t.symbol());
  double total = 0.0, r1 = 0.0, r2 = 0.0, module = 0.0;
  for (const auto& g : gens) {
    const auto a = materialize(space, g);
    const auto parts = t.apply_parts(a);
    const std::size_t band = guard_band(*space, g);
    const std::size_t kl = g.k() + g.l();
    const bool two = case_of(g) == CaseTag::case2;
    total = std::max(total, band_residual(parts.total, t.symbol()(free_length(g)) * a, band));
    r1 = std::max(r1, band_residual(parts.t1, psi.psi1(kl) * a, band));
    r2 = std::max(r2, band_residual(parts.t2, (two ? psi.psi2(kl - 2) : psi.psi2(kl)) * a, band));
    module = std::max(module, right_module_residual(parts.total) / std::max(1.0, max_abs(a.dense())));
  }
  const nlohmann::json details = {{"generators", gens.size()}};
  rep.add("cases.T", total, tol, details);
  rep.add("cases.T1", r1, tol, details);
  rep.add("cases.T2", r2, tol, details);
  rep.add("cases.right_module", module, tol, details);
  return rep;
}

}  // namespace radmul
