#pragma once

#include <cstddef>
#include <memory>

#include "radmul/operator_kit.hpp"
#include "radmul/symbol_hankel.hpp"

namespace radmul {

/// The map T = T_1 + T_2 + c Id on operators, with
/// T_1 = sum_i Phi^{(1)}_{x_i, y_i} over the factorization of h and
/// T_2 = sum_i Phi^{(2)}_{z_i, w_i} over the factorization of k.
class RadialMultiplier {
 public:
  RadialMultiplier(RadialSymbol phi, SpacePtr space, std::size_t hankel_dim);

  struct Parts {
    StructuredOperator t1;
    StructuredOperator t2;
    StructuredOperator total;
  };

  [[nodiscard]] StructuredOperator operator()(const StructuredOperator& a) const;
  [[nodiscard]] Parts apply_parts(const StructuredOperator& a) const;
  [[nodiscard]] StructuredOperator t1(const StructuredOperator& a) const { return apply_parts(a).t1; }
  [[nodiscard]] StructuredOperator t2(const StructuredOperator& a) const { return apply_parts(a).t2; }

  [[nodiscard]] const RadialSymbol& symbol() const { return phi_; }
  [[nodiscard]] const SpacePtr& space() const { return space_; }
  [[nodiscard]] std::size_t hankel_dim() const { return hankel_dim_; }
  [[nodiscard]] cplx limit() const { return phi_.limit(); }
  [[nodiscard]] const HankelFactorization& h_factors() const { return fh_; }
  [[nodiscard]] const HankelFactorization& k_factors() const { return fk_; }
  /// sum ||x_i|| ||y_i|| + sum ||z_i|| ||w_i|| + |c|: the cb bound carried by the construction.
  [[nodiscard]] double factor_bound() const;

 private:
  RadialSymbol phi_;
  SpacePtr space_;
  std::size_t hankel_dim_;
  HankelFactorization fh_;
  HankelFactorization fk_;
  // Weights indexed by (output length, input length), summed over factor pairs:
  // direct_[p][q] for the terms D a D^*, shifted_[n][p][q] for the rho^n terms.
  Mat t1_direct_, t2_direct_;
  std::vector<Mat> t1_shifted_, t2_shifted_;
};

RadialMultiplier build_T(const RadialSymbol& phi, SpacePtr space, std::size_t hankel_dim);

}  // namespace radmul
