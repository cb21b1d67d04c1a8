#include "radmul/operator_kit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/SVD>

#include "radmul/rng.hpp"

namespace radmul {

namespace {

using Triplets = std::vector<Eigen::Triplet<cplx>>;

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// Matrix of c -> A c B on vec(c).
Mat sandwich(const Mat& a, const Mat& b) { return kron(b.transpose(), a); }

void add_block(Triplets& t, const FockSpace& space, std::size_t row_word, std::size_t col_word, const Mat& block) {
  const auto r0 = static_cast<Eigen::Index>(space.offset(row_word));
  const auto c0 = static_cast<Eigen::Index>(space.offset(col_word));
  for (Eigen::Index j = 0; j < block.cols(); ++j)
    for (Eigen::Index i = 0; i < block.rows(); ++i)
      if (block(i, j) != cplx(0.0)) t.emplace_back(static_cast<int>(r0 + i), static_cast<int>(c0 + j), block(i, j));
}

void add_identity_block(Triplets& t, const FockSpace& space, std::size_t row_word, std::size_t col_word) {
  const auto r0 = static_cast<int>(space.offset(row_word));
  const auto c0 = static_cast<int>(space.offset(col_word));
  for (std::size_t i = 0; i < space.block_size(); ++i)
    t.emplace_back(r0 + static_cast<int>(i), c0 + static_cast<int>(i), cplx(1.0));
}

SpMat from_triplets(const FockSpace& space, const Triplets& t) {
  const auto n = static_cast<Eigen::Index>(space.dimension());
  SpMat m(n, n);
  m.setFromTriplets(t.begin(), t.end());
  m.makeCompressed();
  return m;
}

// Product V_{g_1} ... V_{g_n} over the letters of w.
Mat word_unitary(const AmalgamatedSystem& sys, const Word& w) {
  const auto s = static_cast<Eigen::Index>(sys.base().matrix_size());
  Mat u = Mat::Identity(s, s);
  for (const auto& l : w.letters) u = (u * sys.factor(l.factor).unitary(l.element)).eval();
  return u;
}

}  // namespace

StructuredOperator::StructuredOperator(std::shared_ptr<const FockSpace> space, SpMat matrix)
    : space_(std::move(space)), matrix_(std::move(matrix)) {
  const auto n = static_cast<Eigen::Index>(space_->dimension());
  if (matrix_.rows() != n || matrix_.cols() != n) throw std::invalid_argument("StructuredOperator: dimension mismatch");
}

StructuredOperator StructuredOperator::zero(std::shared_ptr<const FockSpace> space) {
  const auto n = static_cast<Eigen::Index>(space->dimension());
  return {std::move(space), SpMat(n, n)};
}

StructuredOperator StructuredOperator::identity(std::shared_ptr<const FockSpace> space) {
  const auto n = static_cast<Eigen::Index>(space->dimension());
  SpMat m(n, n);
  m.setIdentity();
  return {std::move(space), std::move(m)};
}

FockVector StructuredOperator::apply(const FockVector& xi) const {
  if (xi.space().dimension() != dimension()) throw std::invalid_argument("StructuredOperator::apply: space mismatch");
  return FockVector(space_, matrix_ * xi.data());
}

StructuredOperator StructuredOperator::adjoint() const { return {space_, SpMat(matrix_.adjoint())}; }

Mat StructuredOperator::band(std::size_t max_len) const {
  const auto cols = static_cast<Eigen::Index>(space_->words_up_to(max_len) * space_->block_size());
  return Mat(matrix_).leftCols(cols);
}

StructuredOperator& StructuredOperator::operator+=(const StructuredOperator& o) {
  if (o.dimension() != dimension()) throw std::invalid_argument("StructuredOperator: space mismatch");
  matrix_ += o.matrix_;
  return *this;
}

StructuredOperator& StructuredOperator::operator-=(const StructuredOperator& o) {
  if (o.dimension() != dimension()) throw std::invalid_argument("StructuredOperator: space mismatch");
  matrix_ -= o.matrix_;
  return *this;
}

StructuredOperator& StructuredOperator::operator*=(cplx s) {
  matrix_ *= s;
  return *this;
}

StructuredOperator operator*(const StructuredOperator& a, const StructuredOperator& b) {
  if (a.dimension() != b.dimension()) throw std::invalid_argument("StructuredOperator: space mismatch");
  SpMat m = (a.matrix_ * b.matrix_).pruned();
  return {a.space_, std::move(m)};
}

StructuredOperator creation(const SpacePtr& space, const Letter& gamma) {
  Triplets t;
  const auto& words = space->words();
  for (std::size_t j = 0; j < words.size(); ++j) {
    const Word& w = words[j];
    if (!w.empty() && w.letters.front().factor == gamma.factor) continue;
    Word target;
    target.letters.reserve(w.length() + 1);
    target.letters.push_back(gamma);
    target.letters.insert(target.letters.end(), w.letters.begin(), w.letters.end());
    if (auto idx = space->index_of(target)) add_identity_block(t, *space, *idx, j);
  }
  return {space, from_triplets(*space, t)};
}

StructuredOperator annihilation(const SpacePtr& space, const Letter& gamma) {
  Triplets t;
  const auto& words = space->words();
  for (std::size_t j = 0; j < words.size(); ++j) {
    const Word& w = words[j];
    if (w.empty() || w.letters.front() != gamma) continue;
    Word target{std::vector<Letter>(w.letters.begin() + 1, w.letters.end())};
    add_identity_block(t, *space, *space->index_of(target), j);
  }
  return {space, from_triplets(*space, t)};
}

StructuredOperator right_creation(const SpacePtr& space, const Letter& gamma) {
  const auto& sys = space->system();
  const auto& f = sys.factor(gamma.factor);
  const Letter star{gamma.factor, f.group().inverse(gamma.element)};
  const Mat& v = f.unitary(gamma.element);
  const Mat block = sandwich(v, v.adjoint());  // c -> alpha_g(c)
  Triplets t;
  const auto& words = space->words();
  for (std::size_t j = 0; j < words.size(); ++j) {
    const Word& w = words[j];
    if (!w.empty() && w.letters.back().factor == gamma.factor) continue;
    Word target = w;
    target.letters.push_back(star);
    if (auto idx = space->index_of(target)) add_block(t, *space, *idx, j, block);
  }
  return {space, from_triplets(*space, t)};
}

StructuredOperator right_annihilation(const SpacePtr& space, const Letter& gamma) {
  return right_creation(space, gamma).adjoint();
}

StructuredOperator unit_creation(const SpacePtr& space, std::size_t factor) {
  Triplets t;
  const auto& words = space->words();
  for (std::size_t j = 0; j < words.size(); ++j)
    if (words[j].empty() || words[j].letters.front().factor != factor) add_identity_block(t, *space, j, j);
  return {space, from_triplets(*space, t)};
}

StructuredOperator left_multiplication(const SpacePtr& space, const Mat& b) {
  const auto& sys = space->system();
  const auto s = static_cast<Eigen::Index>(space->matrix_size());
  if (b.rows() != s || b.cols() != s) throw std::invalid_argument("left_multiplication: wrong coefficient size");
  Triplets t;
  const Mat id = Mat::Identity(s, s);
  for (std::size_t j = 0; j < space->word_count(); ++j) {
    const Mat u = word_unitary(sys, space->words()[j]);
    add_block(t, *space, j, j, sandwich(u.adjoint() * b * u, id));
  }
  return {space, from_triplets(*space, t)};
}

StructuredOperator right_multiplication(const SpacePtr& space, const Mat& b) {
  const auto s = static_cast<Eigen::Index>(space->matrix_size());
  if (b.rows() != s || b.cols() != s) throw std::invalid_argument("right_multiplication: wrong coefficient size");
  const Mat block = sandwich(Mat::Identity(s, s), b);
  Triplets t;
  for (std::size_t j = 0; j < space->word_count(); ++j) add_block(t, *space, j, j, block);
  return {space, from_triplets(*space, t)};
}

StructuredOperator projection(const SpacePtr& space, const SectorProjection& p) {
  Triplets t;
  for (std::size_t j = 0; j < space->word_count(); ++j)
    if (sector_contains(p, space->words()[j])) add_identity_block(t, *space, j, j);
  return {space, from_triplets(*space, t)};
}

cplx ShiftedVector::at(std::size_t t) const {
  std::size_t idx = 0;
  if (direction == Direction::backward) {
    idx = t + shift;
  } else {
    if (t < shift) return 0.0;
    idx = t - shift;
  }
  return idx < static_cast<std::size_t>(base.size()) ? base(static_cast<Eigen::Index>(idx)) : cplx(0.0);
}

ShiftedVector ShiftedVector::conjugate() const { return {base.conjugate(), shift, direction}; }

StructuredOperator diag(const SpacePtr& space, const ShiftedVector& x) {
  Triplets t;
  const auto n = space->dimension();
  for (std::size_t i = 0; i < n; ++i) {
    const cplx v = x.at(space->length_of(i));
    if (v != cplx(0.0)) t.emplace_back(static_cast<int>(i), static_cast<int>(i), v);
  }
  return {space, from_triplets(*space, t)};
}

StructuredOperator length_weighted(const StructuredOperator& a, const Mat& weights) {
  const auto& space = a.space();
  const auto n = static_cast<Eigen::Index>(space.max_length() + 1);
  if (weights.rows() != n || weights.cols() != n) throw std::invalid_argument("length_weighted: weight table has wrong size");
  SpMat out = a.matrix();
  for (Eigen::Index col = 0; col < out.outerSize(); ++col) {
    const auto lc = static_cast<Eigen::Index>(space.length_of(static_cast<std::size_t>(col)));
    for (SpMat::InnerIterator it(out, col); it; ++it)
      it.valueRef() *= weights(static_cast<Eigen::Index>(space.length_of(static_cast<std::size_t>(it.row()))), lc);
  }
  out.prune(cplx(0.0));
  return {a.space_ptr(), std::move(out)};
}

StructuredOperator rho(const StructuredOperator& a) {
  const auto& space = a.space_ptr();
  SpMat acc(a.matrix().rows(), a.matrix().cols());
  for (const auto& gamma : space->system().letters()) {
    const SpMat r = right_creation(space, gamma).matrix();
    acc += SpMat(r * a.matrix() * SpMat(r.adjoint()));
  }
  acc.prune(cplx(0.0));
  return {space, std::move(acc)};
}

StructuredOperator rho_power(const StructuredOperator& a, std::size_t n) {
  StructuredOperator out = a;
  for (std::size_t i = 0; i < n; ++i) {
    if (out.matrix().nonZeros() == 0) break;
    out = rho(out);
  }
  return out;
}

StructuredOperator epsilon(const StructuredOperator& a) {
  const auto& space = a.space_ptr();
  StructuredOperator acc = StructuredOperator::zero(space);
  for (std::size_t i = 0; i < space->system().factor_count(); ++i) {
    const auto q = projection(space, EndsInFactor{i});
    acc += q * a * q;
  }
  return acc;
}

StructuredOperator phi_block(PhiVariant variant, const Vec& x, const Vec& y, const StructuredOperator& a) {
  const auto& space = a.space_ptr();
  const std::size_t lmax = space->max_length();
  const std::size_t terms = std::max(static_cast<std::size_t>(std::max(x.size(), y.size())), lmax);
  auto xv = [&x](std::size_t t) { return t < static_cast<std::size_t>(x.size()) ? x(static_cast<Eigen::Index>(t)) : cplx(0.0); };
  auto yv = [&y](std::size_t t) { return t < static_cast<std::size_t>(y.size()) ? y(static_cast<Eigen::Index>(t)) : cplx(0.0); };

  const auto lm = static_cast<Eigen::Index>(lmax);
  Mat w = Mat::Zero(lm + 1, lm + 1);

  // sum_{n=0}^{terms} D_{(S^*)^n x} a D^*_{(S^*)^n y}
  for (Eigen::Index kp = 0; kp <= lm; ++kp)
    for (Eigen::Index kq = 0; kq <= lm; ++kq)
      for (std::size_t n = 0; n <= terms; ++n)
        w(kp, kq) += xv(static_cast<std::size_t>(kp) + n) * std::conj(yv(static_cast<std::size_t>(kq) + n));
  StructuredOperator out = length_weighted(a, w);

  // sum_{n=1}^{terms} D_{S^n x} r_n D^*_{S^n y}, r_n = rho^n(a) or rho^{n-1}(eps(a))
  StructuredOperator r = variant == PhiVariant::first ? rho(a) : epsilon(a);
  for (std::size_t n = 1; n <= std::min(terms, lmax); ++n) {
    if (r.matrix().nonZeros() == 0) break;
    for (std::size_t kp = 0; kp <= lmax; ++kp)
      for (std::size_t kq = 0; kq <= lmax; ++kq)
        w(static_cast<Eigen::Index>(kp), static_cast<Eigen::Index>(kq)) =
            (kp < n || kq < n) ? cplx(0.0) : xv(kp - n) * std::conj(yv(kq - n));
    out += length_weighted(r, w);
    if (n < lmax) r = rho(r);
  }
  return out;
}

double phi_cb_bound(const SpacePtr& space, PhiVariant variant, const Vec& x, const Vec& y) {
  // Phi_{x,x}(1) = sum_k u_k u_k^* and Phi_{y,y}(1) = sum_k v_k^* v_k.
  const auto id = StructuredOperator::identity(space);
  const double ux = op_norm(phi_block(variant, x, x, id)).value;
  const double vy = op_norm(phi_block(variant, y, y, id)).value;
  return std::sqrt(ux) * std::sqrt(vy);
}

CaseTag case_of(const GeneratorWord& w) {
  if (w.k() >= 1 && w.l() >= 1 && w.creations.back().factor == w.annihilations.front().factor) return CaseTag::case2;
  return CaseTag::case1;
}

std::size_t free_length(const GeneratorWord& w) {
  return case_of(w) == CaseTag::case2 ? w.k() + w.l() - 1 : w.k() + w.l();
}

StructuredOperator materialize(const SpacePtr& space, const GeneratorWord& w) {
  if (w.creation_coeffs.size() != w.k() + 1 || w.annihilation_coeffs.size() != w.l())
    throw std::invalid_argument("materialize: coefficient count does not match the letters");
  StructuredOperator out = left_multiplication(space, w.creation_coeffs[0]);
  for (std::size_t j = 0; j < w.k(); ++j)
    out = out * creation(space, w.creations[j]) * left_multiplication(space, w.creation_coeffs[j + 1]);
  for (std::size_t j = 0; j < w.l(); ++j)
    out = out * annihilation(space, w.annihilations[j]) * left_multiplication(space, w.annihilation_coeffs[j]);
  return out;
}

double spectral_norm(const Mat& a) {
  if (a.size() == 0) return 0.0;
  Eigen::BDCSVD<Mat> svd(a);
  return svd.singularValues()(0);
}

OpNorm op_norm(const SpMat& a, std::uint64_t seed, double rel_tol, std::size_t max_iter, std::size_t dense_limit) {
  OpNorm out;
  if (a.nonZeros() == 0) {
    out.exact = true;
    return out;
  }
  if (static_cast<std::size_t>(std::max(a.rows(), a.cols())) <= dense_limit) {
    out.value = spectral_norm(Mat(a));
    out.exact = true;
    return out;
  }
  Rng rng(seed);
  Vec v = rng.complex_vector(a.cols());
  v.normalize();
  const SpMat at = a.adjoint();
  double prev = 0.0;
  out.converged = false;
  for (std::size_t it = 1; it <= max_iter; ++it) {
    Vec w = at * (a * v);
    const double nw = w.norm();
    out.iterations = it;
    if (nw == 0.0) {
      out.value = 0.0;
      out.converged = true;
      break;
    }
    v = w / nw;
    const double est = std::sqrt(nw);
    out.value = est;
    if (it > 1 && std::abs(est - prev) <= rel_tol * est) {
      out.converged = true;
      break;
    }
    prev = est;
  }
  return out;
}

OpNorm op_norm(const StructuredOperator& a, std::uint64_t seed) { return op_norm(a.matrix(), seed); }

VerificationReport adjoint_check(const StructuredOperator& a, const StructuredOperator& b, const std::string& name,
                                 double tol) {
  VerificationReport rep;
  // With the trace-normalized inner product the adjoint is the conjugate transpose.
  const Mat diff = a.dense().adjoint() - b.dense();
  rep.add(name, diff.size() == 0 ? 0.0 : max_abs(diff), tol, {{"dimension", a.dimension()}});
  return rep;
}

double right_module_residual(const StructuredOperator& a) {
  const auto& space = a.space_ptr();
  const auto& base = space->system().base();
  double r = 0.0;
  for (std::size_t idx = 0; idx < base.dimension(); ++idx) {
    const SpMat rb = right_multiplication(space, base.basis(idx)).matrix();
    const SpMat c = a.matrix() * rb - rb * a.matrix();
    for (Eigen::Index k = 0; k < c.outerSize(); ++k)
      for (SpMat::InnerIterator it(c, k); it; ++it) r = std::max(r, std::abs(it.value()));
  }
  return r;
}

}  // namespace radmul
