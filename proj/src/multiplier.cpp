#include "radmul/multiplier.hpp"

#include <algorithm>
#include <stdexcept>

namespace radmul {

namespace {

cplx entry(const Vec& v, std::ptrdiff_t t) {
  return (t >= 0 && t < v.size()) ? v(static_cast<Eigen::Index>(t)) : cplx(0.0);
}

// Length weights of sum_i Phi_{x_i, y_i}: the direct table and one table per shift n = 1..L_max.
void weights(const HankelFactorization& f, std::size_t lmax, std::size_t terms, Mat& direct, std::vector<Mat>& shifted) {
  const auto n = static_cast<Eigen::Index>(lmax + 1);
  direct = Mat::Zero(n, n);
  shifted.assign(lmax + 1, Mat::Zero(n, n));
  for (const auto& p : f.pairs)
    for (Eigen::Index kp = 0; kp < n; ++kp)
      for (Eigen::Index kq = 0; kq < n; ++kq) {
        for (std::size_t s = 0; s <= terms; ++s)
          direct(kp, kq) += entry(p.x, kp + static_cast<std::ptrdiff_t>(s)) * std::conj(entry(p.y, kq + static_cast<std::ptrdiff_t>(s)));
        for (std::size_t s = 1; s <= lmax; ++s)
          shifted[s](kp, kq) += entry(p.x, kp - static_cast<std::ptrdiff_t>(s)) * std::conj(entry(p.y, kq - static_cast<std::ptrdiff_t>(s)));
      }
}

}  // namespace

RadialMultiplier::RadialMultiplier(RadialSymbol phi, SpacePtr space, std::size_t hankel_dim)
    : phi_(std::move(phi)), space_(std::move(space)), hankel_dim_(hankel_dim == 0 ? phi_.default_truncation() : hankel_dim) {
  if (!space_) throw std::invalid_argument("RadialMultiplier: null space");
  const auto hp = hankel_pair(phi_, hankel_dim_);
  fh_ = factorize(hp.h);
  fk_ = factorize(hp.k);
  const std::size_t lmax = space_->max_length();
  const std::size_t terms = std::max(hankel_dim_, lmax);
  weights(fh_, lmax, terms, t1_direct_, t1_shifted_);
  weights(fk_, lmax, terms, t2_direct_, t2_shifted_);
}

RadialMultiplier::Parts RadialMultiplier::apply_parts(const StructuredOperator& a) const {
  if (a.dimension() != space_->dimension()) throw std::invalid_argument("RadialMultiplier: operator on a different space");
  const std::size_t lmax = space_->max_length();

  StructuredOperator t1 = length_weighted(a, t1_direct_);
  StructuredOperator r = rho(a);
  for (std::size_t n = 1; n <= lmax && r.matrix().nonZeros() > 0; ++n) {
    t1 += length_weighted(r, t1_shifted_[n]);
    if (n < lmax) r = rho(r);
  }

  StructuredOperator t2 = length_weighted(a, t2_direct_);
  r = epsilon(a);
  for (std::size_t n = 1; n <= lmax && r.matrix().nonZeros() > 0; ++n) {
    t2 += length_weighted(r, t2_shifted_[n]);
    if (n < lmax) r = rho(r);
  }

  StructuredOperator total = t1 + t2 + phi_.limit() * a;
  return {std::move(t1), std::move(t2), std::move(total)};
}

StructuredOperator RadialMultiplier::operator()(const StructuredOperator& a) const { return apply_parts(a).total; }

double RadialMultiplier::factor_bound() const { return fh_.nuclear_sum() + fk_.nuclear_sum() + std::abs(phi_.limit()); }

RadialMultiplier build_T(const RadialSymbol& phi, SpacePtr space, std::size_t hankel_dim) {
  return RadialMultiplier(phi, std::move(space), hankel_dim);
}

}  // namespace radmul
