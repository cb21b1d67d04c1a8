#include "radmul/symbol_hankel.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace radmul {

namespace {

cplx ipow(cplx z, std::size_t n) {
  cplx result = 1.0;
  while (n > 0) {
    if (n & 1U) result *= z;
    z *= z;
    n >>= 1U;
  }
  return result;
}

// sum_{s >= start} (s + 1) q^s
double weighted_geometric_tail(double q, std::size_t start) {
  if (q == 0.0) return start == 0 ? 1.0 : 0.0;
  const double s = static_cast<double>(start);
  return std::pow(q, s) * ((s + 1.0) / (1.0 - q) + q / ((1.0 - q) * (1.0 - q)));
}

// sum_{n >= start} n q^n
double linear_geometric_tail(double q, std::size_t start) {
  if (q == 0.0) return 0.0;
  const double s = static_cast<double>(start);
  return std::pow(q, s) * (s * (1.0 - q) + q) / ((1.0 - q) * (1.0 - q));
}

// Entrywise l1 bound on the part of an infinite Hankel matrix with antidiagonal
// values f(s) that falls outside the leading dim x dim block. Beyond
// `tail_start`, |f(s)| = amplitude * q^s.
template <class F>
double hankel_tail_bound(F f, std::size_t dim, std::size_t tail_start, double amplitude, double q) {
  const std::size_t closed_from = std::max({2 * dim, tail_start, dim});
  double sum = 0.0;
  for (std::size_t s = dim; s < closed_from; ++s) {
    const std::size_t inside = (2 * dim > s + 1) ? 2 * dim - 1 - s : 0;
    const std::size_t count = s + 1 - std::min(inside, s + 1);
    sum += static_cast<double>(count) * std::abs(f(s));
  }
  if (amplitude > 0.0) sum += amplitude * weighted_geometric_tail(q, closed_from);
  return sum;
}

std::string csv_number(double v) {
  if (v == 0.0) return "0";
  std::ostringstream s;
  s << std::setprecision(17) << v;
  return s.str();
}

}  // namespace

RadialSymbol::RadialSymbol(std::vector<cplx> head, SymbolTail tail) : head_(std::move(head)), tail_(tail) {
  if (const auto* g = std::get_if<GeometricTail>(&tail_)) {
    if (!(std::abs(g->ratio) < 1.0)) throw std::invalid_argument("geometric tail requires |ratio| < 1");
  }
}

RadialSymbol RadialSymbol::constant(cplx c) { return RadialSymbol({}, ConstantTail{c}); }

RadialSymbol RadialSymbol::delta0() { return RadialSymbol({1.0}, ConstantTail{0.0}); }

RadialSymbol RadialSymbol::indicator(std::size_t last) {
  return RadialSymbol(std::vector<cplx>(last + 1, 1.0), ConstantTail{0.0});
}

RadialSymbol RadialSymbol::geometric(cplx coefficient, cplx ratio, cplx limit) {
  return RadialSymbol({}, GeometricTail{coefficient, ratio, limit});
}

cplx RadialSymbol::operator()(std::size_t n) const {
  if (n < head_.size()) return head_[n];
  return std::visit(
      [n](const auto& t) -> cplx {
        using T = std::decay_t<decltype(t)>;
        if constexpr (std::is_same_v<T, ConstantTail>)
          return t.limit;
        else
          return t.limit + t.coefficient * ipow(t.ratio, n);
      },
      tail_);
}

cplx RadialSymbol::limit() const {
  return std::visit([](const auto& t) { return t.limit; }, tail_);
}

std::size_t RadialSymbol::default_truncation() const { return std::max<std::size_t>(2 * head_.size(), 32); }

cplx evaluate(const RadialSymbol& phi, std::size_t n) { return phi(n); }

HankelPair hankel_pair(const RadialSymbol& phi, std::size_t dim) {
  if (dim == 0) throw std::invalid_argument("hankel_pair: dimension must be positive");
  HankelPair out;
  out.dim = dim;
  const Eigen::Index m = static_cast<Eigen::Index>(dim);
  out.h.resize(m, m);
  out.k.resize(m, m);
  std::vector<cplx> diff(2 * dim + 1);
  for (std::size_t s = 0; s < diff.size(); ++s) diff[s] = phi(s) - phi(s + 1);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < m; ++j) {
      out.h(i, j) = diff[static_cast<std::size_t>(i + j)];
      out.k(i, j) = diff[static_cast<std::size_t>(i + j + 1)];
    }

  double amp = 0.0;
  double q = 0.0;
  if (const auto* g = std::get_if<GeometricTail>(&phi.tail())) {
    q = std::abs(g->ratio);
    amp = std::abs(g->coefficient) * std::abs(1.0 - g->ratio);
  }
  const std::size_t tail_start = phi.head().size();
  auto fh = [&phi](std::size_t s) { return phi(s) - phi(s + 1); };
  auto fk = [&phi](std::size_t s) { return phi(s + 1) - phi(s + 2); };
  out.h_tail_error = hankel_tail_bound(fh, dim, tail_start, amp, q);
  out.k_tail_error = hankel_tail_bound(fk, dim, tail_start, amp * q, q);
  return out;
}

double trace_norm(const Mat& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<Mat> svd(a);
  return svd.singularValues().sum();
}

NormC norm_c(const RadialSymbol& phi, std::size_t dim) {
  const auto hp = hankel_pair(phi, dim);
  NormC out;
  out.h_trace_norm = trace_norm(hp.h);
  out.k_trace_norm = trace_norm(hp.k);
  out.abs_limit = std::abs(phi.limit());
  out.value = out.h_trace_norm + out.k_trace_norm + out.abs_limit;
  out.error_bound = hp.tail_error();
  return out;
}

cplx PsiDecomposition::psi1(std::size_t n) const {
  const std::size_t head = phi_.head().size();
  cplx acc = 0.0;
  std::size_t s = n;
  for (; s < head; s += 2) acc += phi_(s) - phi_(s + 1);
  if (const auto* g = std::get_if<GeometricTail>(&phi_.tail()))
    acc += g->coefficient * ipow(g->ratio, s) / (1.0 + g->ratio);
  return acc;
}

PsiDecomposition psi_decompose(const RadialSymbol& phi) { return PsiDecomposition(phi); }

Mat HankelFactorization::reconstruct() const {
  const auto m = static_cast<Eigen::Index>(dim);
  Mat out = Mat::Zero(m, m);
  for (const auto& p : pairs) out += p.x * p.y.adjoint();
  return out;
}

double HankelFactorization::nuclear_sum() const {
  double s = 0.0;
  for (const auto& p : pairs) s += p.x.norm() * p.y.norm();
  return s;
}

HankelFactorization factorize(const Mat& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("factorize: square matrix required");
  HankelFactorization out;
  out.dim = static_cast<std::size_t>(a.rows());
  if (a.size() == 0) return out;
  Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double smax = sv.size() > 0 ? sv(0) : 0.0;
  if (smax == 0.0) return out;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) < 1e-13 * smax) break;
    Vec u = svd.matrixU().col(i);
    Vec v = svd.matrixV().col(i);
    // Fix the phase: largest component of u real and positive.
    Eigen::Index idx = 0;
    u.cwiseAbs().maxCoeff(&idx);
    const cplx phase = u(idx) / std::abs(u(idx));
    u *= std::conj(phase);
    v *= std::conj(phase);
    const double r = std::sqrt(sv(i));
    out.pairs.push_back({r * u, r * v});
  }
  return out;
}

std::pair<cplx, cplx> psi_via_factors(const HankelFactorization& fh, const HankelFactorization& fk, std::size_t k,
                                      std::size_t l) {
  const std::size_t dim = std::max(fh.dim, fk.dim);
  if (std::max(k, l) >= dim) throw std::out_of_range("psi_via_factors: index outside the truncation");
  auto sum = [k, l](const HankelFactorization& f) {
    cplx s = 0.0;
    for (const auto& p : f.pairs) {
      const auto n = static_cast<std::size_t>(p.x.size());
      for (std::size_t t = 0; k + t < n && l + t < n; ++t)
        s += p.x(static_cast<Eigen::Index>(k + t)) * std::conj(p.y(static_cast<Eigen::Index>(l + t)));
    }
    return s;
  };
  return {sum(fh), sum(fk)};
}

double ricard_xu_bound(const RadialSymbol& phi) {
  if (phi.limit() != cplx(0.0)) return std::numeric_limits<double>::infinity();
  const std::size_t head = phi.head().size();
  double s = std::abs(phi(0));
  for (std::size_t n = 1; n < head; ++n) s += 4.0 * static_cast<double>(n) * std::abs(phi(n));
  if (const auto* g = std::get_if<GeometricTail>(&phi.tail()))
    s += 4.0 * std::abs(g->coefficient) * linear_geometric_tail(std::abs(g->ratio), std::max<std::size_t>(head, 1));
  return s;
}

void write_symbol_csv(std::ostream& out, const RadialSymbol& phi, std::size_t dim) {
  const auto psi = psi_decompose(phi);
  out << "n,re_phi,im_phi,re_psi1,im_psi1,re_psi2,im_psi2\n";
  for (std::size_t n = 0; n <= 2 * dim; ++n) {
    const cplx p = phi(n), a = psi.psi1(n), b = psi.psi2(n);
    out << n << ',' << csv_number(p.real()) << ',' << csv_number(p.imag()) << ',' << csv_number(a.real()) << ','
        << csv_number(a.imag()) << ',' << csv_number(b.real()) << ',' << csv_number(b.imag()) << '\n';
  }
}

}  // namespace radmul
