#include "plurirand/multiindex.hpp"

#include <limits>
#include <map>
#include <stdexcept>
#include <string>

namespace plurirand {

std::uint64_t polynomial_space_dimension(int dimension, int max_degree) {
  if (dimension < 1) throw std::invalid_argument("dimension must be >= 1");
  if (max_degree < 0) throw std::invalid_argument("max_degree must be >= 0");
  // binomial(m+n, n) = prod_{k=1..m} (n+k)/k, exact at every step.
  std::uint64_t result = 1;
  for (int k = 1; k <= dimension; ++k) {
    const std::uint64_t num = static_cast<std::uint64_t>(max_degree) + k;
    if (result > std::numeric_limits<std::uint64_t>::max() / num) {
      throw std::overflow_error(
          "polynomial_space_dimension: binomial(" +
          std::to_string(dimension + max_degree) + "," +
          std::to_string(max_degree) + ") overflows 64-bit size");
    }
    result = result * num / k;
  }
  // Guard against enumerations that could never be materialized.
  if (result > (std::uint64_t{1} << 40)) {
    throw std::overflow_error(
        "polynomial_space_dimension: " + std::to_string(result) +
        " indices exceed the supported enumeration size");
  }
  return result;
}

namespace {

// Appends all exponent tuples with the given total degree in lexicographic
// order (first coordinate varies slowest, ascending).
void append_degree_block(int dimension, int degree, std::vector<int>& scratch,
                         int position, std::vector<MultiIndex>& out) {
  if (position == dimension - 1) {
    scratch[position] = degree;
    out.push_back(MultiIndex{scratch});
    return;
  }
  for (int e = 0; e <= degree; ++e) {
    scratch[position] = e;
    append_degree_block(dimension, degree - e, scratch, position + 1, out);
  }
}

}  // namespace

MultiIndexOrder enumerate_multiindices(int dimension, int max_degree) {
  const std::uint64_t count = polynomial_space_dimension(dimension, max_degree);

  MultiIndexOrder order;
  order.dimension_ = dimension;
  order.max_degree_ = max_degree;
  order.indices_.reserve(static_cast<std::size_t>(count));

  std::vector<int> scratch(static_cast<std::size_t>(dimension), 0);
  for (int d = 0; d <= max_degree; ++d) {
    append_degree_block(dimension, d, scratch, 0, order.indices_);
  }

  // Parent links: strip the last positive exponent and look the result up.
  std::map<std::vector<int>, std::size_t> position;
  for (std::size_t i = 0; i < order.indices_.size(); ++i) {
    position.emplace(order.indices_[i].exponents, i);
  }
  order.parents_.assign(order.indices_.size(), 0);
  order.parent_vars_.assign(order.indices_.size(), -1);
  for (std::size_t i = 1; i < order.indices_.size(); ++i) {
    std::vector<int> e = order.indices_[i].exponents;
    int var = dimension - 1;
    while (e[static_cast<std::size_t>(var)] == 0) --var;
    --e[static_cast<std::size_t>(var)];
    order.parents_[i] = position.at(e);
    order.parent_vars_[i] = var;
  }
  return order;
}

}  // namespace plurirand
