#include "radmul/fock.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace radmul {

bool length_lex_less(const Word& a, const Word& b) {
  if (a.length() != b.length()) return a.length() < b.length();
  return a.letters < b.letters;
}

AmalgamatedSystem::AmalgamatedSystem(std::vector<CrossedFactor> factors) : factors_(std::move(factors)) {
  if (factors_.empty()) throw std::invalid_argument("AmalgamatedSystem: at least one factor required");
  for (const auto& f : factors_)
    if (!(f.base() == factors_.front().base()))
      throw std::invalid_argument("AmalgamatedSystem: factors must share the base algebra");
  for (std::size_t i = 0; i < factors_.size(); ++i)
    for (auto g : factors_[i].basis_order())
      if (g != factors_[i].group().identity()) letters_.push_back({i, g});
  std::sort(letters_.begin(), letters_.end());
}

std::vector<Letter> AmalgamatedSystem::letters_of(std::size_t factor) const {
  std::vector<Letter> out;
  for (const auto& l : letters_)
    if (l.factor == factor) out.push_back(l);
  return out;
}

Mat AmalgamatedSystem::act(const Letter& l, const Mat& b) const { return factor(l.factor).act(l.element, b); }

Mat AmalgamatedSystem::act_inverse(const Letter& l, const Mat& b) const {
  return factor(l.factor).act_inverse(l.element, b);
}

Mat AmalgamatedSystem::push_through(const Word& w, const Mat& b) const {
  Mat c = b;
  for (const auto& l : w.letters) c = act_inverse(l, c);
  return c;
}

bool AmalgamatedSystem::is_reduced(const Word& w) const {
  for (std::size_t j = 0; j < w.letters.size(); ++j) {
    const auto& l = w.letters[j];
    if (l.factor >= factors_.size()) return false;
    const auto& g = factors_[l.factor].group();
    if (l.element >= g.order() || l.element == g.identity()) return false;
    if (j > 0 && w.letters[j - 1].factor == l.factor) return false;
  }
  return true;
}

std::vector<Word> enumerate_words(const AmalgamatedSystem& system, std::size_t max_length) {
  std::vector<Word> out{Word{}};
  std::size_t level_begin = 0;
  for (std::size_t len = 1; len <= max_length; ++len) {
    const std::size_t level_end = out.size();
    for (std::size_t i = level_begin; i < level_end; ++i)
      for (const auto& l : system.letters()) {
        const Word& w = out[i];
        if (!w.empty() && w.letters.back().factor == l.factor) continue;
        Word next = w;
        next.letters.push_back(l);
        out.push_back(std::move(next));
      }
    if (out.size() == level_end) break;
    level_begin = level_end;
  }
  return out;
}

FockSpace::FockSpace(std::shared_ptr<const AmalgamatedSystem> system, std::size_t max_length)
    : system_(std::move(system)), max_length_(max_length) {
  if (!system_) throw std::invalid_argument("FockSpace: null system");
  words_ = enumerate_words(*system_, max_length_);
  prefix_counts_.assign(max_length_ + 1, 0);
  for (std::size_t i = 0; i < words_.size(); ++i) {
    index_.emplace(words_[i], i);
    for (std::size_t len = words_[i].length(); len <= max_length_; ++len) prefix_counts_[len] = i + 1;
  }
}

std::size_t FockSpace::words_up_to(std::size_t len) const {
  return len >= max_length_ ? words_.size() : prefix_counts_[len];
}

std::optional<std::size_t> FockSpace::index_of(const Word& w) const {
  auto it = index_.find(w);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

FockVector::FockVector(std::shared_ptr<const FockSpace> space)
    : space_(std::move(space)), data_(Vec::Zero(static_cast<Eigen::Index>(space_->dimension()))) {}

FockVector::FockVector(std::shared_ptr<const FockSpace> space, Vec data) : space_(std::move(space)), data_(std::move(data)) {
  if (data_.size() != static_cast<Eigen::Index>(space_->dimension()))
    throw std::invalid_argument("FockVector: data has wrong dimension");
}

FockVector FockVector::word(std::shared_ptr<const FockSpace> space, const Word& w, const Mat& c) {
  FockVector v(space);
  if (!space->system().is_reduced(w)) throw std::invalid_argument("FockVector::word: word is not reduced");
  if (auto idx = space->index_of(w)) v.set_coeff(*idx, c);
  return v;
}

FockVector FockVector::vacuum(std::shared_ptr<const FockSpace> space, const Mat& b) {
  return word(std::move(space), Word{}, b);
}

Mat FockVector::coeff(std::size_t word_index) const {
  const auto s = static_cast<Eigen::Index>(space_->matrix_size());
  const auto off = static_cast<Eigen::Index>(space_->offset(word_index));
  return Eigen::Map<const Mat>(data_.data() + off, s, s);
}

Mat FockVector::coeff(const Word& w) const {
  auto idx = space_->index_of(w);
  if (!idx) return Mat::Zero(static_cast<Eigen::Index>(space_->matrix_size()), static_cast<Eigen::Index>(space_->matrix_size()));
  return coeff(*idx);
}

void FockVector::set_coeff(std::size_t word_index, const Mat& c) {
  const auto s = static_cast<Eigen::Index>(space_->matrix_size());
  if (c.rows() != s || c.cols() != s) throw std::invalid_argument("FockVector::set_coeff: wrong coefficient size");
  const auto off = static_cast<Eigen::Index>(space_->offset(word_index));
  Eigen::Map<Mat>(data_.data() + off, s, s) = c;
}

FockVector FockVector::right_multiply(const Mat& b) const {
  FockVector out(space_);
  for (std::size_t i = 0; i < space_->word_count(); ++i) out.set_coeff(i, coeff(i) * b);
  return out;
}

FockVector FockVector::left_multiply(const Mat& b) const {
  FockVector out(space_);
  const auto& sys = space_->system();
  for (std::size_t i = 0; i < space_->word_count(); ++i)
    out.set_coeff(i, sys.push_through(space_->words()[i], b) * coeff(i));
  return out;
}

double FockVector::norm() const { return std::sqrt(std::max(0.0, inner(*this, *this).real())); }

FockVector& FockVector::operator+=(const FockVector& o) {
  data_ += o.data_;
  return *this;
}

FockVector& FockVector::operator-=(const FockVector& o) {
  data_ -= o.data_;
  return *this;
}

FockVector& FockVector::operator*=(cplx s) {
  data_ *= s;
  return *this;
}

FockVector canonicalize(std::shared_ptr<const FockSpace> space, const FormalTensor& expr) {
  const auto& sys = space->system();
  if (expr.coeffs.size() != expr.letters.size() + 1)
    throw std::invalid_argument("canonicalize: need one more coefficient than letters");
  Word w{expr.letters};
  if (!sys.is_reduced(w)) throw std::invalid_argument("canonicalize: letters violate the adjacency constraint");
  Mat c = expr.coeffs.front();
  for (std::size_t j = 0; j < expr.letters.size(); ++j) c = sys.act_inverse(expr.letters[j], c) * expr.coeffs[j + 1];
  return FockVector::word(std::move(space), w, c);
}

Mat inner_n(const FockVector& xi, const FockVector& eta) {
  const auto s = static_cast<Eigen::Index>(xi.space().matrix_size());
  Mat out = Mat::Zero(s, s);
  for (std::size_t i = 0; i < xi.space().word_count(); ++i) out += xi.coeff(i).adjoint() * eta.coeff(i);
  return out;
}

cplx inner(const FockVector& xi, const FockVector& eta) {
  return xi.data().dot(eta.data()) / static_cast<double>(xi.space().matrix_size());
}

bool sector_contains(const SectorProjection& p, const Word& w) {
  return std::visit(
      [&w](const auto& q) -> bool {
        using T = std::decay_t<decltype(q)>;
        if constexpr (std::is_same_v<T, LengthAtLeast>)
          return w.length() >= q.n;
        else if constexpr (std::is_same_v<T, LengthExactly>)
          return w.length() == q.k;
        else
          return !w.empty() && w.letters.back().factor == q.factor;
      },
      p);
}

FockVector apply_projection(const SectorProjection& p, const FockVector& xi) {
  FockVector out = xi;
  const auto& space = xi.space();
  const auto b = static_cast<Eigen::Index>(space.block_size());
  for (std::size_t i = 0; i < space.word_count(); ++i)
    if (!sector_contains(p, space.words()[i]))
      out.data().segment(static_cast<Eigen::Index>(space.offset(i)), b).setZero();
  return out;
}

std::vector<FockVector> lambda_span(std::shared_ptr<const FockSpace> space, std::size_t k) {
  if (k > space->max_length()) throw std::invalid_argument("lambda_span: k exceeds the truncation");
  std::vector<FockVector> out;
  const auto& base = space->system().base();
  for (const auto& w : space->words()) {
    if (w.length() != k) continue;
    for (std::size_t idx = 0; idx < base.dimension(); ++idx) out.push_back(FockVector::word(space, w, base.basis(idx)));
  }
  return out;
}

}  // namespace radmul
