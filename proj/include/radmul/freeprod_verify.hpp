#pragma once

// Embedding of the factors into operators on the Fock space, reduced words
// of the amalgamated free product, and the verification of the multiplier
// action and its norm bound.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <vector>

#include "radmul/fock.hpp"
#include "radmul/multiplier.hpp"
#include "radmul/operator_kit.hpp"
#include "radmul/report.hpp"
#include "radmul/rng.hpp"

namespace radmul {

struct Tolerances {
  double algebraic = 1e-13;
  double spectral = 1e-8;
  double eigen = 1e-10;
};

struct VerifyOptions {
  std::size_t fock_len = 5;
  std::size_t hankel_dim = 0;  // 0: symbol default
  std::size_t words_per_length = 50;
  std::size_t max_word_length = 3;  // further capped at fock_len - 2
  std::size_t bound_samples = 200;
  std::vector<std::size_t> amplifications{1, 2, 3};
  Tolerances tol;
};

/// sum_{j,k} L_{e_j} E(e_j^* a e_k) L_{e_k}^* over the Pimsner-Popa basis of factor i.
StructuredOperator embed(const SpacePtr& space, std::size_t factor, const FactorElement& a);

/// b_0 a_1 b_1 ... a_n b_n with E(a_j) = 0 and alternating factors.
struct ReducedWord {
  std::vector<Mat> coeffs;  // n + 1
  std::vector<std::size_t> factors;
  std::vector<FactorElement> letters;

  [[nodiscard]] std::size_t length() const { return letters.size(); }
};

/// Throws std::invalid_argument on adjacency violations, wrong sizes or letters with E(a_j) != 0.
void validate(const AmalgamatedSystem& system, const ReducedWord& w);

/// Product embed(b_0) embed(a_1) ... embed(b_n). The product is formed on a
/// Fock space deep enough to hold every intermediate word and compressed
/// back, so the result is the exact compression of the word.
StructuredOperator word_operator(const SpacePtr& space, const ReducedWord& w);

/// b_0 a_1 b_1 ... a_n b_n applied to the vacuum, expanded directly into
/// canonical form. Independent of the operator route.
FockVector word_vector(const SpacePtr& space, const ReducedWord& w);

/// The vacuum-sector coefficient of A applied to the vacuum: E_N(A).
Mat vacuum_expectation(const StructuredOperator& a);

StructuredOperator apply_multiplier(const RadialMultiplier& t, const StructuredOperator& a);

/// Random element of the kernel of E on factor i (resampled if numerically zero).
FactorElement random_kernel_element(const CrossedFactor& f, Rng& rng);
ReducedWord random_reduced_word(const AmalgamatedSystem& system, std::size_t n, Rng& rng);

VerificationReport verify_main_theorem(std::shared_ptr<const AmalgamatedSystem> system, const RadialSymbol& phi,
                                       const VerifyOptions& opts, std::uint64_t seed);

/// Vacuum images of word operators of length <= L span the truncated space.
VerificationReport spanning_check(std::shared_ptr<const AmalgamatedSystem> system, std::size_t max_length);

struct BoundEstimate {
  double norm_c = 0.0;
  double sup_ratio = 0.0;
  std::vector<double> sup_ratio_by_amplification;
  double lower_envelope = 0.0;  // max over n <= 3 of ||T(a_n)|| / ||a_n|| on creation words
  double max_abs_phi = 0.0;     // max_{n <= 3} |phi(n)|
  std::size_t samples = 0;
};

/// Sampled sup ||(id_m (x) T)(a)|| / ||a|| over random combinations of at most
/// three generator words with m x m scalar coefficients.
BoundEstimate sampled_bound(const RadialMultiplier& t, std::size_t samples, const std::vector<std::size_t>& amplifications,
                            std::uint64_t seed);

}  // namespace radmul
