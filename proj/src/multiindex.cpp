#include "spce/multiindex.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "spce/error.hpp"

namespace spce {

MultiIndex::MultiIndex(std::vector<int> degrees) : degrees_(std::move(degrees)) {
  for (int d : degrees_) {
    if (d < 0) throw Error(ErrorKind::InvalidInput, "negative degree in multi-index");
  }
}

MultiIndex MultiIndex::axis(std::size_t dimension, std::size_t dim, int degree) {
  if (dim >= dimension) {
    throw Error(ErrorKind::DimensionMismatch, "axis dimension out of range");
  }
  MultiIndex a(dimension);
  if (degree < 0) throw Error(ErrorKind::InvalidInput, "negative degree in multi-index");
  a.degrees_[dim] = degree;
  return a;
}

int MultiIndex::total_degree() const noexcept {
  return std::accumulate(degrees_.begin(), degrees_.end(), 0);
}

int MultiIndex::max_degree() const noexcept {
  return degrees_.empty() ? 0 : *std::max_element(degrees_.begin(), degrees_.end());
}

int MultiIndex::rank() const noexcept {
  return static_cast<int>(
      std::count_if(degrees_.begin(), degrees_.end(), [](int d) { return d > 0; }));
}

double MultiIndex::qnorm(double q) const {
  if (!(q > 0.0 && q <= 1.0)) {
    throw Error(ErrorKind::InvalidTruncation, "q must lie in (0, 1]");
  }
  if (q == 1.0) return total_degree();
  double sum = 0.0;
  for (int d : degrees_) {
    if (d > 0) sum += std::pow(static_cast<double>(d), q);
  }
  return std::pow(sum, 1.0 / q);
}

std::vector<std::size_t> MultiIndex::support() const {
  std::vector<std::size_t> dims;
  for (std::size_t i = 0; i < degrees_.size(); ++i) {
    if (degrees_[i] > 0) dims.push_back(i);
  }
  return dims;
}

std::string MultiIndex::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < degrees_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(degrees_[i]);
  }
  return s + ")";
}

std::strong_ordering canonical_compare(const MultiIndex& a, const MultiIndex& b) {
  if (auto c = a.total_degree() <=> b.total_degree(); c != 0) return c;
  return a.degrees() <=> b.degrees();
}

std::size_t MultiIndexHash::operator()(const MultiIndex& a) const noexcept {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (int d : a.degrees()) {
    h ^= static_cast<std::size_t>(d) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

void TruncationSpec::validate() const {
  if (p < 1) throw Error(ErrorKind::InvalidTruncation, "p must be >= 1");
  if (!(q > 0.0 && q <= 1.0)) throw Error(ErrorKind::InvalidTruncation, "q must lie in (0, 1]");
  if (r && *r < 1) throw Error(ErrorKind::InvalidTruncation, "r must be >= 1");
}

bool within_qnorm(const MultiIndex& alpha, double q, int p) {
  return alpha.qnorm(q) <= p * (1.0 + kQNormTolerance);
}

namespace {

struct Enumerator {
  std::size_t dimension;
  int p;
  double q;
  int max_rank;
  double budget;  // (p (1 + tol))^q, compared against partial sums of alpha_i^q
  std::vector<int> current;
  std::vector<MultiIndex> out;

  void descend(std::size_t dim, double partial, int rank) {
    if (dim == dimension) {
      out.emplace_back(current);
      return;
    }
    current[dim] = 0;
    descend(dim + 1, partial, rank);
    if (rank == max_rank) return;
    for (int k = 1; k <= p; ++k) {
      const double next = partial + (q == 1.0 ? k : std::pow(k, q));
      if (next > budget) break;
      current[dim] = k;
      descend(dim + 1, next, rank + 1);
    }
    current[dim] = 0;
  }
};

}  // namespace

std::vector<MultiIndex> generate_candidate_set(std::size_t dimension,
                                               const TruncationSpec& spec) {
  spec.validate();
  if (dimension < 1) throw Error(ErrorKind::InvalidTruncation, "dimension must be >= 1");
  const int max_rank = spec.r ? std::min<int>(*spec.r, static_cast<int>(dimension))
                              : static_cast<int>(dimension);
  Enumerator e{dimension, spec.p, spec.q, max_rank,
               std::pow(spec.p * (1.0 + kQNormTolerance), spec.q),
               std::vector<int>(dimension, 0), {}};
  e.descend(0, 0.0, 0);
  std::sort(e.out.begin(), e.out.end(), CanonicalLess{});
  return std::move(e.out);
}

std::vector<MultiIndex> filter_rank(const std::vector<MultiIndex>& set, int k) {
  std::vector<MultiIndex> out;
  std::copy_if(set.begin(), set.end(), std::back_inserter(out),
               [k](const MultiIndex& a) { return a.rank() == k; });
  return out;
}

}  // namespace spce
