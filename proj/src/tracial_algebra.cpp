#include "radmul/tracial_algebra.hpp"

#include <algorithm>
#include <stdexcept>

namespace radmul {

namespace {

bool is_scalar(const Mat& m, double tol) {
  const cplx c = m(0, 0);
  return max_abs(m - c * Mat::Identity(m.rows(), m.cols())) <= tol;
}

}  // namespace

TracialAlgebra::TracialAlgebra(std::size_t matrix_size) : size_(matrix_size) {
  if (size_ == 0) throw std::invalid_argument("TracialAlgebra: matrix size must be positive");
}

Mat TracialAlgebra::basis(std::size_t index) const {
  if (index >= dimension()) throw std::out_of_range("TracialAlgebra::basis");
  Mat e = zero();
  e(static_cast<Eigen::Index>(index % size_), static_cast<Eigen::Index>(index / size_)) = 1.0;
  return e;
}

cplx TracialAlgebra::trace(const Mat& x) const { return x.trace() / static_cast<double>(size_); }

VerificationReport TracialAlgebra::verify(double tol) const {
  VerificationReport rep;
  rep.add("tau.unit", std::abs(trace(identity()) - 1.0), tol);
  const std::size_t d = dimension();
  double gram = 0.0, tracial = 0.0, invol = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    const Mat ei = basis(i);
    for (std::size_t j = 0; j < d; ++j) {
      const Mat ej = basis(j);
      const cplx expected = (i == j) ? cplx(1.0 / static_cast<double>(size_)) : cplx(0.0);
      gram = std::max(gram, std::abs(trace(ei.adjoint() * ej) - expected));
      tracial = std::max(tracial, std::abs(trace(ei * ej) - trace(ej * ei)));
      invol = std::max(invol, max_abs((ei * ej).adjoint() - ej.adjoint() * ei.adjoint()));
    }
  }
  rep.add("tau.faithful", gram, tol);
  rep.add("tau.tracial", tracial, tol);
  rep.add("involution", invol, tol);
  return rep;
}

FiniteGroup::FiniteGroup(std::vector<std::vector<std::size_t>> table) : table_(std::move(table)) {
  const std::size_t n = table_.size();
  if (n == 0) throw std::invalid_argument("FiniteGroup: empty table");
  for (const auto& row : table_) {
    if (row.size() != n) throw std::invalid_argument("FiniteGroup: table must be square");
    for (auto v : row)
      if (v >= n) throw std::invalid_argument("FiniteGroup: entry out of range");
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<bool> row_seen(n, false), col_seen(n, false);
    for (std::size_t j = 0; j < n; ++j) {
      if (row_seen[table_[i][j]] || col_seen[table_[j][i]])
        throw std::invalid_argument("FiniteGroup: table is not a latin square");
      row_seen[table_[i][j]] = true;
      col_seen[table_[j][i]] = true;
    }
  }
  bool found = false;
  for (std::size_t e = 0; e < n && !found; ++e) {
    bool ok = true;
    for (std::size_t g = 0; g < n && ok; ++g) ok = table_[e][g] == g && table_[g][e] == g;
    if (ok) {
      identity_ = e;
      found = true;
    }
  }
  if (!found) throw std::invalid_argument("FiniteGroup: no identity element");
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (table_[table_[a][b]][c] != table_[a][table_[b][c]])
          throw std::invalid_argument("FiniteGroup: multiplication is not associative");
  inverse_.assign(n, 0);
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t h = 0; h < n; ++h)
      if (table_[g][h] == identity_) inverse_[g] = h;
}

FiniteGroup FiniteGroup::cyclic(std::size_t order) {
  if (order == 0) throw std::invalid_argument("FiniteGroup::cyclic: order must be positive");
  std::vector<std::vector<std::size_t>> t(order, std::vector<std::size_t>(order));
  for (std::size_t g = 0; g < order; ++g)
    for (std::size_t h = 0; h < order; ++h) t[g][h] = (g + h) % order;
  return FiniteGroup(std::move(t));
}

CrossedFactor::CrossedFactor(TracialAlgebra base, FiniteGroup group, std::vector<Mat> implementing_unitaries)
    : base_(base), group_(std::move(group)), unitaries_(std::move(implementing_unitaries)) {
  constexpr double tol = 1e-12;
  const auto s = static_cast<Eigen::Index>(base_.matrix_size());
  if (unitaries_.size() != group_.order())
    throw std::invalid_argument("CrossedFactor: one implementing unitary per group element required");
  for (const auto& v : unitaries_) {
    if (v.rows() != s || v.cols() != s) throw std::invalid_argument("CrossedFactor: unitary has wrong size");
    if (max_abs(v.adjoint() * v - Mat::Identity(s, s)) > tol)
      throw std::invalid_argument("CrossedFactor: implementing matrix is not unitary");
  }
  if (!is_scalar(unitaries_[group_.identity()], tol))
    throw std::invalid_argument("CrossedFactor: the identity must act trivially");
  for (std::size_t g = 0; g < group_.order(); ++g)
    for (std::size_t h = 0; h < group_.order(); ++h)
      if (!is_scalar(unitaries_[g] * unitaries_[h] * unitaries_[group_.mul(g, h)].adjoint(), tol))
        throw std::invalid_argument("CrossedFactor: g -> Ad(V_g) is not a homomorphism");

  basis_order_.push_back(group_.identity());
  for (std::size_t g = 0; g < group_.order(); ++g)
    if (g != group_.identity()) basis_order_.push_back(g);
}

CrossedFactor CrossedFactor::trivial(TracialAlgebra base, FiniteGroup group) {
  std::vector<Mat> v(group.order(), base.identity());
  return CrossedFactor(base, std::move(group), std::move(v));
}

CrossedFactor CrossedFactor::inner_cyclic(TracialAlgebra base, std::size_t order, const Mat& v) {
  std::vector<Mat> us;
  Mat p = Mat::Identity(v.rows(), v.cols());
  for (std::size_t k = 0; k < order; ++k) {
    us.push_back(p);
    p = (p * v).eval();
  }
  return CrossedFactor(base, FiniteGroup::cyclic(order), std::move(us));
}

Mat CrossedFactor::act(std::size_t g, const Mat& b) const { return unitaries_[g] * b * unitaries_[g].adjoint(); }

Mat CrossedFactor::act_inverse(std::size_t g, const Mat& b) const {
  return unitaries_[g].adjoint() * b * unitaries_[g];
}

FactorElement CrossedFactor::zero() const { return {std::vector<Mat>(group_.order(), base_.zero())}; }

FactorElement CrossedFactor::from_base(const Mat& b) const { return monomial(group_.identity(), b); }

FactorElement CrossedFactor::monomial(std::size_t g, const Mat& b) const {
  auto x = zero();
  x.coeffs.at(g) = b;
  return x;
}

FactorElement CrossedFactor::unit(std::size_t g) const { return monomial(g, base_.identity()); }

FactorElement CrossedFactor::multiply(const FactorElement& x, const FactorElement& y) const {
  auto out = zero();
  for (std::size_t g = 0; g < group_.order(); ++g) {
    if (x.coeffs[g].isZero(0.0)) continue;
    for (std::size_t h = 0; h < group_.order(); ++h) {
      if (y.coeffs[h].isZero(0.0)) continue;
      out.coeffs[group_.mul(g, h)] += x.coeffs[g] * act(g, y.coeffs[h]);
    }
  }
  return out;
}

FactorElement CrossedFactor::adjoint(const FactorElement& x) const {
  auto out = zero();
  for (std::size_t g = 0; g < group_.order(); ++g) {
    const std::size_t gi = group_.inverse(g);
    out.coeffs[gi] = act(gi, x.coeffs[g].adjoint());
  }
  return out;
}

FactorElement CrossedFactor::add(const FactorElement& x, const FactorElement& y, cplx beta) const {
  auto out = x;
  for (std::size_t g = 0; g < group_.order(); ++g) out.coeffs[g] += beta * y.coeffs[g];
  return out;
}

cplx CrossedFactor::trace(const FactorElement& x) const { return base_.trace(x.coeffs[group_.identity()]); }

std::vector<FactorElement> CrossedFactor::pp_basis() const {
  std::vector<FactorElement> out;
  for (auto g : basis_order_) out.push_back(unit(g));
  return out;
}

Mat CrossedFactor::left_regular(const FactorElement& x) const {
  const std::size_t d = base_.dimension();
  const std::size_t n = group_.order();
  const auto s = base_.matrix_size();
  Mat out = Mat::Zero(static_cast<Eigen::Index>(n * d), static_cast<Eigen::Index>(n * d));
  for (std::size_t h = 0; h < n; ++h)
    for (std::size_t idx = 0; idx < d; ++idx) {
      const auto y = multiply(x, monomial(h, base_.basis(idx)));
      const auto col = static_cast<Eigen::Index>(h * d + idx);
      for (std::size_t g = 0; g < n; ++g)
        for (std::size_t j = 0; j < d; ++j)
          out(static_cast<Eigen::Index>(g * d + j), col) =
              y.coeffs[g](static_cast<Eigen::Index>(j % s), static_cast<Eigen::Index>(j / s));
    }
  return out;
}

double max_abs(const FactorElement& x) {
  double m = 0.0;
  for (const auto& c : x.coeffs) m = std::max(m, max_abs(c));
  return m;
}

Mat cond_exp(const CrossedFactor& f, const FactorElement& x) { return x.coeffs.at(f.group().identity()); }

std::vector<Mat> pp_expand(const CrossedFactor& f, const FactorElement& x) {
  std::vector<Mat> out;
  for (const auto& e : f.pp_basis()) out.push_back(cond_exp(f, f.multiply(x, e)));
  return out;
}

FactorElement pp_reconstruct(const CrossedFactor& f, std::span<const Mat> coeffs) {
  const auto basis = f.pp_basis();
  if (coeffs.size() != basis.size()) throw std::invalid_argument("pp_reconstruct: wrong number of coefficients");
  auto out = f.zero();
  for (std::size_t j = 0; j < basis.size(); ++j)
    out = f.add(out, f.multiply(f.from_base(coeffs[j]), f.adjoint(basis[j])));
  return out;
}

VerificationReport verify_pp_basis(const CrossedFactor& f, double tol) {
  const auto basis = f.pp_basis();
  return verify_pp_basis(f, basis, tol);
}

VerificationReport verify_pp_basis(const CrossedFactor& f, std::span<const FactorElement> basis, double tol) {
  VerificationReport rep;
  const auto& n = f.base();
  const auto s = static_cast<Eigen::Index>(n.matrix_size());

  const double unit_res = basis.empty() ? 1.0 : max_abs(f.add(basis[0], f.unit(f.group().identity()), -1.0));
  rep.add("pp.unit", unit_res, tol);

  double orth = 0.0;
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < basis.size(); ++j) {
      const Mat e = cond_exp(f, f.multiply(f.adjoint(basis[i]), basis[j]));
      const Mat expected = (i == j) ? Mat(Mat::Identity(s, s)) : Mat(Mat::Zero(s, s));
      orth = std::max(orth, max_abs(e - expected));
    }
  rep.add("pp.orthogonality", orth, tol, {{"basis_size", basis.size()}});

  // x = sum_j E(x e_j) e_j^* on every linear basis element b u_g of M_i.
  double recon = 0.0;
  for (std::size_t g = 0; g < f.group().order(); ++g)
    for (std::size_t idx = 0; idx < n.dimension(); ++idx) {
      const auto x = f.monomial(g, n.basis(idx));
      auto y = f.zero();
      for (const auto& e : basis)
        y = f.add(y, f.multiply(f.from_base(cond_exp(f, f.multiply(x, e))), f.adjoint(e)));
      recon = std::max(recon, max_abs(f.add(y, x, -1.0)));
    }
  rep.add("pp.reconstruction", recon, tol);

  // sum_j lambda(e_j)^* e_N lambda(e_j) = 1 on L^2(M_i).
  const auto d = static_cast<Eigen::Index>(n.dimension());
  const auto total = static_cast<Eigen::Index>(f.group().order()) * d;
  Mat en = Mat::Zero(total, total);
  const auto e_off = static_cast<Eigen::Index>(f.group().identity()) * d;
  en.block(e_off, e_off, d, d) = Mat::Identity(d, d);
  Mat sum = Mat::Zero(total, total);
  for (const auto& e : basis) {
    const Mat l = f.left_regular(e);
    sum += l.adjoint() * en * l;
  }
  rep.add("pp.partition", max_abs(sum - Mat::Identity(total, total)), tol);
  return rep;
}

VerificationReport e0_vanishing(const CrossedFactor& f, std::size_t g, const Mat& b, double tol) {
  if (g >= f.group().order() || g == f.group().identity())
    throw std::invalid_argument("e0_vanishing: g must be a non-identity group element");
  VerificationReport rep;
  const auto x = f.multiply(f.adjoint(f.unit(g)), f.from_base(b));
  const auto coeffs = pp_expand(f, x);
  rep.add("e0.coefficient", max_abs(coeffs.front()), tol);
  const auto basis = f.pp_basis();
  auto y = f.zero();
  for (std::size_t j = 1; j < basis.size(); ++j)
    y = f.add(y, f.multiply(f.from_base(coeffs[j]), f.adjoint(basis[j])));
  rep.add("e0.reconstruction", max_abs(f.add(y, x, -1.0)), tol);
  return rep;
}

}  // namespace radmul
