#pragma once

// Operators on the truncated Fock space: creation/annihilation from both
// sides, diagonal length multipliers, the maps rho and epsilon, and the
// Phi building blocks of the radial multiplier.
//
// Every operator is a sparse matrix in the coordinates of FockSpace. Words
// pushed beyond the truncation length are sent to zero.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <vector>

#include "radmul/fock.hpp"
#include "radmul/report.hpp"
#include "radmul/types.hpp"

namespace radmul {

class StructuredOperator {
 public:
  StructuredOperator(std::shared_ptr<const FockSpace> space, SpMat matrix);

  static StructuredOperator zero(std::shared_ptr<const FockSpace> space);
  static StructuredOperator identity(std::shared_ptr<const FockSpace> space);

  [[nodiscard]] const FockSpace& space() const { return *space_; }
  [[nodiscard]] const std::shared_ptr<const FockSpace>& space_ptr() const { return space_; }
  [[nodiscard]] const SpMat& matrix() const { return matrix_; }
  [[nodiscard]] std::size_t dimension() const { return space_->dimension(); }
  [[nodiscard]] Mat dense() const { return Mat(matrix_); }

  [[nodiscard]] FockVector apply(const FockVector& xi) const;
  [[nodiscard]] StructuredOperator adjoint() const;

  /// Columns belonging to words of length <= max_len (a leading block).
  [[nodiscard]] Mat band(std::size_t max_len) const;

  StructuredOperator& operator+=(const StructuredOperator& o);
  StructuredOperator& operator-=(const StructuredOperator& o);
  StructuredOperator& operator*=(cplx s);
  friend StructuredOperator operator+(StructuredOperator a, const StructuredOperator& b) { return a += b; }
  friend StructuredOperator operator-(StructuredOperator a, const StructuredOperator& b) { return a -= b; }
  friend StructuredOperator operator*(cplx s, StructuredOperator a) { return a *= s; }
  friend StructuredOperator operator*(const StructuredOperator& a, const StructuredOperator& b);

 private:
  std::shared_ptr<const FockSpace> space_;
  SpMat matrix_;
};

using SpacePtr = std::shared_ptr<const FockSpace>;

/// L_gamma: prepends gamma unless the word starts in the same factor.
StructuredOperator creation(const SpacePtr& space, const Letter& gamma);
/// L_gamma^*: strips a leading gamma, E(gamma^* chi_1) = delta.
StructuredOperator annihilation(const SpacePtr& space, const Letter& gamma);
/// R_{gamma^*}: appends gamma^* unless the word ends in the same factor.
StructuredOperator right_creation(const SpacePtr& space, const Letter& gamma);
/// R_{gamma^*}^*: chi' chi_k b_k -> chi' E(chi_k b_k gamma).
StructuredOperator right_annihilation(const SpacePtr& space, const Letter& gamma);
/// L_{e_0} for e_0 = 1 in factor i: identity on words not starting in factor i, 0 otherwise.
StructuredOperator unit_creation(const SpacePtr& space, std::size_t factor);

/// Left action of b in N.
StructuredOperator left_multiplication(const SpacePtr& space, const Mat& b);
/// Right action xi -> xi b (not a right-module map in general).
StructuredOperator right_multiplication(const SpacePtr& space, const Mat& b);

StructuredOperator projection(const SpacePtr& space, const SectorProjection& p);

/// x shifted n steps: forward is S^n x with (S x)(0) = 0, (S x)(t) = x(t-1);
/// backward is (S^*)^n x with (S^* x)(t) = x(t+1). Zero beyond the stored entries.
struct ShiftedVector {
  enum class Direction { forward, backward };

  Vec base;
  std::size_t shift = 0;
  Direction direction = Direction::backward;

  [[nodiscard]] cplx at(std::size_t t) const;
  [[nodiscard]] ShiftedVector conjugate() const;
};

/// D_x: multiplies the length-k sector by x(k).
StructuredOperator diag(const SpacePtr& space, const ShiftedVector& x);

/// Entry (p, q) of a multiplied by weights(len p, len q); weights is (L_max+1) x (L_max+1).
StructuredOperator length_weighted(const StructuredOperator& a, const Mat& weights);

/// sum over all letters gamma of R_{gamma^*} a R_{gamma^*}^*.
StructuredOperator rho(const StructuredOperator& a);
StructuredOperator rho_power(const StructuredOperator& a, std::size_t n);
/// sum_i q_i a q_i
StructuredOperator epsilon(const StructuredOperator& a);

enum class PhiVariant { first = 1, second = 2 };

/// Phi^{(1)} or Phi^{(2)} for x, y in C^M; sums run to n = max(M, L_max).
StructuredOperator phi_block(PhiVariant variant, const Vec& x, const Vec& y, const StructuredOperator& a);

/// ||sum_k u_k u_k^*||^{1/2} ||sum_k v_k^* v_k||^{1/2} for the families
/// that write Phi_{x,y}(a) = sum_k u_k a v_k.
double phi_cb_bound(const SpacePtr& space, PhiVariant variant, const Vec& x, const Vec& y);

/// b_0 L_{xi_1} b_1 ... L_{xi_k} b_k L*_{eta_1} bt_1 ... L*_{eta_l} bt_l
struct GeneratorWord {
  std::vector<Letter> creations;       // xi_1..xi_k
  std::vector<Mat> creation_coeffs;    // b_0..b_k
  std::vector<Letter> annihilations;   // eta_1..eta_l
  std::vector<Mat> annihilation_coeffs;  // bt_1..bt_l

  [[nodiscard]] std::size_t k() const { return creations.size(); }
  [[nodiscard]] std::size_t l() const { return annihilations.size(); }
};

enum class CaseTag { case1 = 1, case2 = 2 };

/// Case 2 iff k, l >= 1 and the creation and annihilation letters meeting in
/// the middle of the product (xi_k and eta_1) come from the same factor.
CaseTag case_of(const GeneratorWord& w);
/// Length as an element of the amalgamated free product: k + l, or k + l - 1 in Case 2.
std::size_t free_length(const GeneratorWord& w);

StructuredOperator materialize(const SpacePtr& space, const GeneratorWord& w);

struct OpNorm {
  double value = 0.0;
  bool converged = true;
  std::size_t iterations = 0;
  bool exact = false;
};

/// Spectral norm: dense SVD up to dimension `dense_limit`, otherwise power
/// iteration on A^* A from a seeded start vector.
OpNorm op_norm(const SpMat& a, std::uint64_t seed = 0, double rel_tol = 1e-8, std::size_t max_iter = 20000,
               std::size_t dense_limit = 2000);
OpNorm op_norm(const StructuredOperator& a, std::uint64_t seed = 0);
double spectral_norm(const Mat& a);

/// <A xi, eta> = <xi, B eta> for an operator pair, via dense matrices.
VerificationReport adjoint_check(const StructuredOperator& a, const StructuredOperator& b, const std::string& name,
                                 double tol = 1e-12);

/// ||A(xi b) - A(xi) b|| over the matrix units b, i.e. the commutator with right multiplication.
double right_module_residual(const StructuredOperator& a);

}  // namespace radmul
