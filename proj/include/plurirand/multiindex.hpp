#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace plurirand {

// An exponent tuple nu = (nu_1,...,nu_m); monomial z^nu = prod z_j^{nu_j}.
struct MultiIndex {
  std::vector<int> exponents;

  int total_degree() const {
    int d = 0;
    for (int e : exponents) d += e;
    return d;
  }
};

// dim P_n = binomial(m+n, n). Throws std::overflow_error when the count does
// not fit a 64-bit size.
std::uint64_t polynomial_space_dimension(int dimension, int max_degree);

// All multi-indices of total degree <= max_degree in graded-lexicographic
// order: degree non-decreasing, plain lexicographic within each degree block.
// The order for (m, n) is a prefix of the order for (m, n+1), which is what
// makes degree-triangular changes of basis possible downstream.
class MultiIndexOrder {
 public:
  int dimension() const { return dimension_; }
  int max_degree() const { return max_degree_; }
  std::size_t size() const { return indices_.size(); }
  const MultiIndex& operator[](std::size_t i) const { return indices_[i]; }
  std::span<const MultiIndex> indices() const { return indices_; }

  // For i > 0: indices[i] == indices[parent(i)] + e_{parent_variable(i)}.
  // Lets monomial evaluation run as a one-multiply-per-entry recurrence.
  std::size_t parent(std::size_t i) const { return parents_[i]; }
  int parent_variable(std::size_t i) const { return parent_vars_[i]; }

 private:
  friend MultiIndexOrder enumerate_multiindices(int dimension, int max_degree);

  int dimension_ = 0;
  int max_degree_ = 0;
  std::vector<MultiIndex> indices_;
  std::vector<std::size_t> parents_;
  std::vector<int> parent_vars_;
};

// Full graded-lex enumeration for degree <= max_degree in `dimension`
// variables. Requires dimension >= 1, max_degree >= 0.
MultiIndexOrder enumerate_multiindices(int dimension, int max_degree);

}  // namespace plurirand
