#pragma once

// Truncated amalgamated free Fock space. A vector is stored in canonical form
// sum_w w * c_w: each reduced word w = u_{g_1} (x) ... (x) u_{g_n} carries a
// single right coefficient c_w in N. Coordinates are the entries of c_w,
// column-major, word blocks in length-lexicographic order.

#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "radmul/tracial_algebra.hpp"
#include "radmul/types.hpp"

namespace radmul {

/// u_g in factor `factor`; `element` is never the group identity.
struct Letter {
  std::size_t factor = 0;
  std::size_t element = 0;
  auto operator<=>(const Letter&) const = default;
};

struct Word {
  std::vector<Letter> letters;

  [[nodiscard]] std::size_t length() const { return letters.size(); }
  [[nodiscard]] bool empty() const { return letters.empty(); }
  auto operator<=>(const Word&) const = default;
};

/// Length first, then lexicographic.
bool length_lex_less(const Word& a, const Word& b);

/// The data common to all factors: N and the crossed products M_i over it.
class AmalgamatedSystem {
 public:
  explicit AmalgamatedSystem(std::vector<CrossedFactor> factors);

  [[nodiscard]] const TracialAlgebra& base() const { return factors_.front().base(); }
  [[nodiscard]] const std::vector<CrossedFactor>& factors() const { return factors_; }
  [[nodiscard]] const CrossedFactor& factor(std::size_t i) const { return factors_.at(i); }
  [[nodiscard]] std::size_t factor_count() const { return factors_.size(); }

  /// All letters of the punctured bases, factor by factor, elements ascending.
  [[nodiscard]] const std::vector<Letter>& letters() const { return letters_; }
  [[nodiscard]] std::vector<Letter> letters_of(std::size_t factor) const;

  [[nodiscard]] Mat act(const Letter& l, const Mat& b) const;
  [[nodiscard]] Mat act_inverse(const Letter& l, const Mat& b) const;

  /// The coefficient produced by pushing a left factor b through w:
  /// b * w = w * push_through(w, b).
  [[nodiscard]] Mat push_through(const Word& w, const Mat& b) const;

  [[nodiscard]] bool is_reduced(const Word& w) const;

 private:
  std::vector<CrossedFactor> factors_;
  std::vector<Letter> letters_;
};

/// All reduced words of length <= max_length over the system's letters.
std::vector<Word> enumerate_words(const AmalgamatedSystem& system, std::size_t max_length);

class FockSpace {
 public:
  FockSpace(std::shared_ptr<const AmalgamatedSystem> system, std::size_t max_length);

  [[nodiscard]] const AmalgamatedSystem& system() const { return *system_; }
  [[nodiscard]] std::shared_ptr<const AmalgamatedSystem> system_ptr() const { return system_; }
  [[nodiscard]] std::size_t max_length() const { return max_length_; }
  [[nodiscard]] const std::vector<Word>& words() const { return words_; }
  [[nodiscard]] std::size_t word_count() const { return words_.size(); }
  /// Number of words of length <= len (they form a prefix of words()).
  [[nodiscard]] std::size_t words_up_to(std::size_t len) const;
  [[nodiscard]] std::optional<std::size_t> index_of(const Word& w) const;

  [[nodiscard]] std::size_t block_size() const { return system_->base().dimension(); }
  [[nodiscard]] std::size_t matrix_size() const { return system_->base().matrix_size(); }
  [[nodiscard]] std::size_t dimension() const { return words_.size() * block_size(); }
  [[nodiscard]] std::size_t offset(std::size_t word_index) const { return word_index * block_size(); }
  /// Word index of a coordinate.
  [[nodiscard]] std::size_t word_of(std::size_t coordinate) const { return coordinate / block_size(); }
  [[nodiscard]] std::size_t length_of(std::size_t coordinate) const { return words_[word_of(coordinate)].length(); }

 private:
  std::shared_ptr<const AmalgamatedSystem> system_;
  std::size_t max_length_;
  std::vector<Word> words_;
  std::vector<std::size_t> prefix_counts_;
  std::map<Word, std::size_t> index_;
};

class FockVector {
 public:
  explicit FockVector(std::shared_ptr<const FockSpace> space);
  FockVector(std::shared_ptr<const FockSpace> space, Vec data);

  /// w * c
  static FockVector word(std::shared_ptr<const FockSpace> space, const Word& w, const Mat& c);
  /// The vacuum b^ in L^2(N).
  static FockVector vacuum(std::shared_ptr<const FockSpace> space, const Mat& b);

  [[nodiscard]] const FockSpace& space() const { return *space_; }
  [[nodiscard]] const std::shared_ptr<const FockSpace>& space_ptr() const { return space_; }
  [[nodiscard]] const Vec& data() const { return data_; }
  [[nodiscard]] Vec& data() { return data_; }

  [[nodiscard]] Mat coeff(std::size_t word_index) const;
  [[nodiscard]] Mat coeff(const Word& w) const;
  void set_coeff(std::size_t word_index, const Mat& c);

  /// xi * b
  [[nodiscard]] FockVector right_multiply(const Mat& b) const;
  /// b * xi
  [[nodiscard]] FockVector left_multiply(const Mat& b) const;

  /// ||xi||^2 = tau(<xi, xi>_N)
  [[nodiscard]] double norm() const;

  FockVector& operator+=(const FockVector& o);
  FockVector& operator-=(const FockVector& o);
  FockVector& operator*=(cplx s);
  friend FockVector operator+(FockVector a, const FockVector& b) { return a += b; }
  friend FockVector operator-(FockVector a, const FockVector& b) { return a -= b; }
  friend FockVector operator*(cplx s, FockVector a) { return a *= s; }

 private:
  std::shared_ptr<const FockSpace> space_;
  Vec data_;
};

/// b_0 chi_1 b_1 ... chi_k b_k with chi_j = u_{g_j} from alternating factors.
struct FormalTensor {
  std::vector<Letter> letters;
  std::vector<Mat> coeffs;  // k + 1 entries
};

/// Pushes every coefficient to the right end; throws std::invalid_argument
/// on adjacent letters from the same factor. Words longer than the
/// truncation give the zero vector.
FockVector canonicalize(std::shared_ptr<const FockSpace> space, const FormalTensor& expr);

/// <xi, eta>_N = sum_w c_w(xi)^* c_w(eta); conjugate-linear in xi.
Mat inner_n(const FockVector& xi, const FockVector& eta);
/// tau(<xi, eta>_N)
cplx inner(const FockVector& xi, const FockVector& eta);

struct LengthAtLeast {
  std::size_t n;
};
struct LengthExactly {
  std::size_t k;
};
struct EndsInFactor {
  std::size_t factor;
};
using SectorProjection = std::variant<LengthAtLeast, LengthExactly, EndsInFactor>;

bool sector_contains(const SectorProjection& p, const Word& w);
FockVector apply_projection(const SectorProjection& p, const FockVector& xi);

/// Words of length k paired with every matrix unit of N as right coefficient.
std::vector<FockVector> lambda_span(std::shared_ptr<const FockSpace> space, std::size_t k);

}  // namespace radmul
