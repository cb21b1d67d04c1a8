#pragma once

// Finite-dimensional tracial algebras N = M_s(C) and crossed products
// M_i = N x| G_i by finite groups acting through trace-preserving inner
// automorphisms, together with conditional expectations and the group
// Pimsner-Popa basis {u_g}.

#include <cstddef>
#include <span>
#include <vector>

#include "radmul/report.hpp"
#include "radmul/types.hpp"

namespace radmul {

/// M_s(C) with normalized trace tau = Tr / s. s = 1 is the scalar algebra.
/// The linear basis is the family of matrix units E_ab, enumerated
/// column-major (index a + b*s).
class TracialAlgebra {
 public:
  explicit TracialAlgebra(std::size_t matrix_size);

  static TracialAlgebra scalar() { return TracialAlgebra(1); }
  static TracialAlgebra matrix(std::size_t s) { return TracialAlgebra(s); }

  [[nodiscard]] std::size_t matrix_size() const { return size_; }
  /// Linear dimension s^2.
  [[nodiscard]] std::size_t dimension() const { return size_ * size_; }

  [[nodiscard]] Mat identity() const { return Mat::Identity(size_, size_); }
  [[nodiscard]] Mat zero() const { return Mat::Zero(size_, size_); }
  [[nodiscard]] Mat basis(std::size_t index) const;
  [[nodiscard]] cplx trace(const Mat& x) const;

  /// tau(1) = 1, faithfulness, traciality and the involution, on the basis.
  [[nodiscard]] VerificationReport verify(double tol) const;

  bool operator==(const TracialAlgebra&) const = default;

 private:
  std::size_t size_;
};

/// Finite group on {0, ..., order-1} given by its multiplication table.
class FiniteGroup {
 public:
  explicit FiniteGroup(std::vector<std::vector<std::size_t>> table);

  static FiniteGroup cyclic(std::size_t order);

  [[nodiscard]] std::size_t order() const { return table_.size(); }
  [[nodiscard]] std::size_t identity() const { return identity_; }
  [[nodiscard]] std::size_t mul(std::size_t g, std::size_t h) const { return table_[g][h]; }
  [[nodiscard]] std::size_t inverse(std::size_t g) const { return inverse_[g]; }
  [[nodiscard]] const std::vector<std::vector<std::size_t>>& table() const { return table_; }

 private:
  std::vector<std::vector<std::size_t>> table_;
  std::size_t identity_ = 0;
  std::vector<std::size_t> inverse_;
};

/// x = sum_g b_g u_g, coefficients indexed by group element.
struct FactorElement {
  std::vector<Mat> coeffs;
};

/// N x| G with alpha_g = Ad(V_g). The family V_g must be unitary, V_e
/// scalar, and g -> Ad(V_g) a homomorphism.
class CrossedFactor {
 public:
  CrossedFactor(TracialAlgebra base, FiniteGroup group, std::vector<Mat> implementing_unitaries);

  static CrossedFactor trivial(TracialAlgebra base, FiniteGroup group);
  /// Cyclic group of the given order acting by powers of Ad(v); v^order must be scalar.
  static CrossedFactor inner_cyclic(TracialAlgebra base, std::size_t order, const Mat& v);

  [[nodiscard]] const TracialAlgebra& base() const { return base_; }
  [[nodiscard]] const FiniteGroup& group() const { return group_; }
  /// Jones index [M_i : N] = |G_i|.
  [[nodiscard]] std::size_t index() const { return group_.order(); }
  [[nodiscard]] const Mat& unitary(std::size_t g) const { return unitaries_[g]; }

  /// alpha_g(b) = V_g b V_g^*
  [[nodiscard]] Mat act(std::size_t g, const Mat& b) const;
  /// alpha_g^{-1}(b) = V_g^* b V_g
  [[nodiscard]] Mat act_inverse(std::size_t g, const Mat& b) const;

  [[nodiscard]] FactorElement zero() const;
  [[nodiscard]] FactorElement from_base(const Mat& b) const;
  /// b u_g
  [[nodiscard]] FactorElement monomial(std::size_t g, const Mat& b) const;
  [[nodiscard]] FactorElement unit(std::size_t g) const;

  [[nodiscard]] FactorElement multiply(const FactorElement& x, const FactorElement& y) const;
  [[nodiscard]] FactorElement adjoint(const FactorElement& x) const;
  [[nodiscard]] FactorElement add(const FactorElement& x, const FactorElement& y, cplx beta = 1.0) const;
  [[nodiscard]] cplx trace(const FactorElement& x) const;

  /// Group elements in Pimsner-Popa basis order: identity first, then the
  /// remaining elements ascending.
  [[nodiscard]] const std::vector<std::size_t>& basis_order() const { return basis_order_; }
  [[nodiscard]] std::vector<FactorElement> pp_basis() const;

  /// Left multiplication by x on L^2(M_i) in the basis (group element, matrix unit).
  [[nodiscard]] Mat left_regular(const FactorElement& x) const;

 private:
  TracialAlgebra base_;
  FiniteGroup group_;
  std::vector<Mat> unitaries_;
  std::vector<std::size_t> basis_order_;
};

double max_abs(const FactorElement& x);

Mat cond_exp(const CrossedFactor& f, const FactorElement& x);

/// (E(x e_j))_j in basis order.
std::vector<Mat> pp_expand(const CrossedFactor& f, const FactorElement& x);
/// sum_j coeffs_j e_j^*
FactorElement pp_reconstruct(const CrossedFactor& f, std::span<const Mat> coeffs);

/// The four Pimsner-Popa properties for the group basis.
VerificationReport verify_pp_basis(const CrossedFactor& f, double tol = 1e-13);
/// Same checks for an arbitrary candidate basis (negative controls).
VerificationReport verify_pp_basis(const CrossedFactor& f, std::span<const FactorElement> basis,
                                   double tol = 1e-13);

/// For gamma = u_g (g != e): the j = 0 coefficient of the expansion of
/// gamma*b vanishes and the remaining terms reconstruct gamma*b.
VerificationReport e0_vanishing(const CrossedFactor& f, std::size_t g, const Mat& b, double tol = 1e-13);

}  // namespace radmul
