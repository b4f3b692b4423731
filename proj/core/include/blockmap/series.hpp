#pragma once

#include <cstdint>
#include <vector>

#include <gmpxx.h>

namespace blockmap {

/// Number of rooted planar maps with n edges: 2(2n)! 3^n / ((n+2)! n!).
mpz_class maps_count(unsigned n);
/// Number of rooted 2-connected maps with n edges: 2(3n-3)! / (n!(2n-1)!), and 1 for n = 0.
mpz_class blocks_count(unsigned n);

/// N(n, b): rooted maps with n edges and b blocks, for 0 <= b <= n <= max_n().
class BivariateCoefficients {
 public:
  BivariateCoefficients() = default;
  explicit BivariateCoefficients(std::vector<std::vector<mpz_class>> rows) : rows_(std::move(rows)) {}

  int max_n() const { return static_cast<int>(rows_.size()) - 1; }
  /// Zero outside 0 <= b <= n; throws InvalidArgument for n beyond the truncation.
  const mpz_class& operator()(int n, int b) const;
  const std::vector<mpz_class>& row(int n) const;

  bool operator==(const BivariateCoefficients&) const = default;

 private:
  std::vector<std::vector<mpz_class>> rows_;
};

/// Coefficients of M(z,u) = u B(z M^2) + 1 - u up to z^N.
///
/// Uses Lagrange inversion on W = M - 1 = u (B(z (1+W)^2) - 1), which gives
/// N(n, b) = C(2n, b-1) [y^n] (B(y) - 1)^b / b in O(N^3) big-integer products.
BivariateCoefficients solve_bivariate(int N);

/// Same table by iterating M <- 1 + u (B(z M^2) - 1) from M = 1, N + 1 times.
/// Much slower; kept as an independent cross-check for small N.
BivariateCoefficients solve_bivariate_fixed_point(int N);

/// Discrete law with exact rational probabilities.
struct ExactLaw {
  std::vector<std::int64_t> support;
  std::vector<mpq_class> probability;

  mpq_class total() const;
  /// Probability of `value`, zero when outside the support.
  mpq_class at(std::int64_t value) const;
  std::vector<double> to_double() const;
};

/// [z^n] M(z, u) = sum_b N(n, b) u^b.
mpq_class partition_function(const BivariateCoefficients& table, int n, const mpq_class& u);

/// Law of the root block size k in {1..n} under P_{n,u}:
/// u b_k [z^{n-k}] M^{2k} / [z^n] M.
ExactLaw root_block_law(const BivariateCoefficients& table, int n, const mpq_class& u);

/// Law of the block count b in {0..n} under P_{n,u}.
ExactLaw block_number_law(const BivariateCoefficients& table, int n, const mpq_class& u);

}  // namespace blockmap
