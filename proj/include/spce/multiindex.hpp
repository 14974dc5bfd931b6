#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace spce {

/// Per-dimension polynomial degrees of one tensor-product basis function.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::size_t dimension) : degrees_(dimension, 0) {}
  explicit MultiIndex(std::vector<int> degrees);
  MultiIndex(std::initializer_list<int> degrees)
      : MultiIndex(std::vector<int>(degrees)) {}

  static MultiIndex zero(std::size_t dimension) { return MultiIndex(dimension); }
  /// Rank-1 index with `degree` in dimension `dim`.
  static MultiIndex axis(std::size_t dimension, std::size_t dim, int degree);

  std::size_t size() const noexcept { return degrees_.size(); }
  int operator[](std::size_t i) const { return degrees_[i]; }
  const std::vector<int>& degrees() const noexcept { return degrees_; }

  int total_degree() const noexcept;
  int max_degree() const noexcept;
  int rank() const noexcept;
  /// (sum alpha_i^q)^(1/q), 0 < q <= 1.
  double qnorm(double q) const;
  bool is_zero() const noexcept { return rank() == 0; }

  /// Dimensions with nonzero degree, ascending.
  std::vector<std::size_t> support() const;

  std::string to_string() const;

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;

 private:
  std::vector<int> degrees_;
};

/// Graded lexicographic order: total degree first, then lexicographic.
std::strong_ordering canonical_compare(const MultiIndex& a, const MultiIndex& b);

struct CanonicalLess {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const {
    return canonical_compare(a, b) < 0;
  }
};

struct MultiIndexHash {
  std::size_t operator()(const MultiIndex& a) const noexcept;
};

/// Degree bound p, hyperbolic exponent q and maximal rank r (nullopt: no rank
/// limit).
struct TruncationSpec {
  int p = 1;
  double q = 1.0;
  std::optional<int> r;

  void validate() const;
};

/// Relative slack on q-norm comparisons so that boundary members
/// (qnorm == p) are kept on every platform.
inline constexpr double kQNormTolerance = 1e-9;

bool within_qnorm(const MultiIndex& alpha, double q, int p);

/// All alpha in N^M with qnorm(q) <= p and rank <= r, zero index first, in
/// canonical order.
std::vector<MultiIndex> generate_candidate_set(std::size_t dimension,
                                               const TruncationSpec& spec);

/// Order-preserving subset of indices with rank exactly k.
std::vector<MultiIndex> filter_rank(const std::vector<MultiIndex>& set, int k);

}  // namespace spce
