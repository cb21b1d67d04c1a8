#pragma once

// Class-C calculus for radial symbols: Hankel matrices, trace norms,
// rank-one factorizations and the psi decomposition.

#include <cstddef>
#include <iosfwd>
#include <utility>
#include <variant>
#include <vector>

#include "radmul/types.hpp"

namespace radmul {

struct ConstantTail {
  cplx limit;
};

/// phi(n) = limit + coefficient * ratio^n beyond the head.
struct GeometricTail {
  cplx coefficient;
  cplx ratio;
  cplx limit;
};

using SymbolTail = std::variant<ConstantTail, GeometricTail>;

/// A function phi: N_0 -> C given by finitely many head values followed by a
/// structured tail. With head values phi(0..m) the tail formula applies for
/// n > m; an empty head means the tail formula holds everywhere.
class RadialSymbol {
 public:
  RadialSymbol(std::vector<cplx> head, SymbolTail tail);

  static RadialSymbol constant(cplx c);
  static RadialSymbol delta0();
  /// Indicator of {0, ..., last}.
  static RadialSymbol indicator(std::size_t last);
  static RadialSymbol geometric(cplx coefficient, cplx ratio, cplx limit = 0.0);

  [[nodiscard]] cplx operator()(std::size_t n) const;
  [[nodiscard]] cplx limit() const;

  [[nodiscard]] const std::vector<cplx>& head() const { return head_; }
  [[nodiscard]] const SymbolTail& tail() const { return tail_; }
  [[nodiscard]] bool is_geometric() const { return std::holds_alternative<GeometricTail>(tail_); }

  /// max(2 * head size, 32).
  [[nodiscard]] std::size_t default_truncation() const;

 private:
  std::vector<cplx> head_;
  SymbolTail tail_;
};

cplx evaluate(const RadialSymbol& phi, std::size_t n);

struct HankelPair {
  Mat h;  // phi(i+j) - phi(i+j+1)
  Mat k;  // phi(i+j+1) - phi(i+j+2)
  std::size_t dim = 0;
  double h_tail_error = 0.0;  // bound on the trace norm of the discarded part of h
  double k_tail_error = 0.0;

  [[nodiscard]] double tail_error() const { return h_tail_error + k_tail_error; }
};

HankelPair hankel_pair(const RadialSymbol& phi, std::size_t dim);

double trace_norm(const Mat& a);

struct NormC {
  double value = 0.0;
  double error_bound = 0.0;
  double h_trace_norm = 0.0;
  double k_trace_norm = 0.0;
  double abs_limit = 0.0;
};

/// ||h||_1 + ||k||_1 + |c| at truncation `dim`.
NormC norm_c(const RadialSymbol& phi, std::size_t dim);

class PsiDecomposition {
 public:
  explicit PsiDecomposition(RadialSymbol phi) : phi_(std::move(phi)) {}

  /// sum_{i>=0} phi(n+2i) - phi(n+2i+1), summed in closed form over the tail.
  [[nodiscard]] cplx psi1(std::size_t n) const;
  [[nodiscard]] cplx psi2(std::size_t n) const { return psi1(n + 1); }
  [[nodiscard]] cplx c() const { return phi_.limit(); }

 private:
  RadialSymbol phi_;
};

PsiDecomposition psi_decompose(const RadialSymbol& phi);

/// A pair (x, y) standing for the rank-one operator t -> <t, y> x = x y^*.
struct FactorPair {
  Vec x;
  Vec y;
};

struct HankelFactorization {
  std::vector<FactorPair> pairs;
  std::size_t dim = 0;

  [[nodiscard]] Mat reconstruct() const;
  /// sum_i ||x_i|| ||y_i||
  [[nodiscard]] double nuclear_sum() const;
};

/// Rank-one decomposition from the SVD with x_i = sqrt(s_i) u_i and
/// y_i = sqrt(s_i) v_i. Singular values below 1e-13 * s_max are dropped.
HankelFactorization factorize(const Mat& a);

/// Double sums sum_i sum_t x_i(k+t) conj(y_i(l+t)) for the h- and k-factors.
/// Throws std::out_of_range if max(k, l) is outside the truncation.
std::pair<cplx, cplx> psi_via_factors(const HankelFactorization& fh, const HankelFactorization& fk,
                                      std::size_t k, std::size_t l);

/// |phi(0)| + sum_{n>=1} 4n |phi(n)|; +inf when the limit is nonzero.
double ricard_xu_bound(const RadialSymbol& phi);

/// Columns n, Re/Im phi, Re/Im psi1, Re/Im psi2 for 0 <= n <= 2*dim.
void write_symbol_csv(std::ostream& out, const RadialSymbol& phi, std::size_t dim);

}  // namespace radmul
