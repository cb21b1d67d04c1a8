#pragma once

// Verification suites for the Fock space and the operator building blocks.
// Identities involving a in L^{k,l} are compared on the guard band: input
// words of length <= L_max - max(k - l, 0) - (extra depth), where truncation
// cannot interfere.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "radmul/freeprod_verify.hpp"
#include "radmul/multiplier.hpp"
#include "radmul/operator_kit.hpp"
#include "radmul/report.hpp"
#include "radmul/rng.hpp"

namespace radmul {

/// Every generator word with k <= max_k, l <= max_l over alternating
/// letters, in deterministic order, with random N-coefficients.
std::vector<GeneratorWord> enumerate_generators(const AmalgamatedSystem& system, std::size_t max_k, std::size_t max_l,
                                                Rng& rng);

GeneratorWord random_generator(const AmalgamatedSystem& system, std::size_t max_k, std::size_t max_l, Rng& rng);

/// Guard band for a in L^{k,l} plus `depth` extra levels.
std::size_t guard_band(const FockSpace& space, const GeneratorWord& w, std::size_t depth = 0);

/// Residual of (lhs - rhs) restricted to the band, relative to max(1, max|rhs|).
double band_residual(const StructuredOperator& lhs, const StructuredOperator& rhs, std::size_t band);

VerificationReport fock_invariants(const SpacePtr& space, double tol);

/// Partition identity, adjoint pairs, module property, rho(1), eps(1),
/// Phi_{x,x}(1) = ||x||^2 and the cb-bound factors.
VerificationReport operator_invariants(const SpacePtr& space, std::size_t hankel_dim, std::uint64_t seed, double tol);

/// rho^n(a) = a Q_{l+n}, the epsilon case rules and the Phi eigen-formulas for
/// every generated a with k, l <= 2.
VerificationReport generator_lemmas(const SpacePtr& space, std::size_t hankel_dim, std::uint64_t seed, double tol);

/// T_1, T_2 and T case rules for every generated a with k, l <= 2.
VerificationReport case_rules(const RadialMultiplier& t, std::uint64_t seed, double tol);

/// max_k over 0 <= k <= L_max of |sum_n |x(k+n)|^2 + sum_{n=1}^k |x(k-n)|^2 - ||x||^2|.
double partition_identity_residual(const Vec& x, std::size_t max_length);

}  // namespace radmul
