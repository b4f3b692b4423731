#include "blockmap/series.hpp"

#include <string>

#include "blockmap/errors.hpp"

namespace blockmap {

namespace {

mpz_class factorial(unsigned n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return f;
}

mpz_class binomial(unsigned n, unsigned k) {
  mpz_class c;
  mpz_bin_uiui(c.get_mpz_t(), n, k);
  return c;
}

using Poly = std::vector<mpz_class>;

// a * b truncated to degree `deg`.
Poly multiply(const Poly& a, const Poly& b, std::size_t deg) {
  Poly c(deg + 1, 0);
  for (std::size_t i = 0; i < a.size() && i <= deg; ++i) {
    if (sgn(a[i]) == 0) continue;
    for (std::size_t j = 0; j < b.size() && i + j <= deg; ++j) {
      if (sgn(b[j]) == 0) continue;
      mpz_addmul(c[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
    }
  }
  return c;
}

void check_n(const BivariateCoefficients& table, int n) {
  if (n < 0 || n > table.max_n())
    throw InvalidArgument("n = " + std::to_string(n) + " outside the solved range [0, " + std::to_string(table.max_n()) + "]");
}

}  // namespace

mpz_class maps_count(unsigned n) {
  mpz_class pow3;
  mpz_ui_pow_ui(pow3.get_mpz_t(), 3, n);
  return 2 * factorial(2 * n) * pow3 / (factorial(n + 2) * factorial(n));
}

mpz_class blocks_count(unsigned n) {
  if (n == 0) return 1;
  return 2 * factorial(3 * n - 3) / (factorial(n) * factorial(2 * n - 1));
}

const mpz_class& BivariateCoefficients::operator()(int n, int b) const {
  static const mpz_class zero = 0;
  check_n(*this, n);
  if (b < 0 || b > n) return zero;
  return rows_[static_cast<std::size_t>(n)][static_cast<std::size_t>(b)];
}

const std::vector<mpz_class>& BivariateCoefficients::row(int n) const {
  check_n(*this, n);
  return rows_[static_cast<std::size_t>(n)];
}

BivariateCoefficients solve_bivariate(int N) {
  if (N < 0) throw InvalidArgument("truncation must be nonnegative");
  const auto n_max = static_cast<std::size_t>(N);
  std::vector<std::vector<mpz_class>> rows(n_max + 1);
  for (std::size_t n = 0; n <= n_max; ++n) rows[n].assign(n + 1, 0);
  rows[0][0] = 1;
  Poly b_minus_1(n_max + 1, 0);
  for (std::size_t j = 1; j <= n_max; ++j) b_minus_1[j] = blocks_count(static_cast<unsigned>(j));
  Poly power(n_max + 1, 0);  // (B - 1)^b, starting at b = 0
  power[0] = 1;
  for (std::size_t b = 1; b <= n_max; ++b) {
    power = multiply(power, b_minus_1, n_max);
    for (std::size_t n = b; n <= n_max; ++n) {
      if (sgn(power[n]) == 0) continue;
      mpz_class v = binomial(static_cast<unsigned>(2 * n), static_cast<unsigned>(b - 1)) * power[n];
      mpz_divexact_ui(v.get_mpz_t(), v.get_mpz_t(), b);
      rows[n][b] = std::move(v);
    }
  }
  return BivariateCoefficients(std::move(rows));
}

BivariateCoefficients solve_bivariate_fixed_point(int N) {
  if (N < 0) throw InvalidArgument("truncation must be nonnegative");
  const auto n_max = static_cast<std::size_t>(N);
  // Bivariate polynomial as m[n][b], truncated at z^N.
  using Bi = std::vector<std::vector<mpz_class>>;
  auto zero = [&] {
    Bi p(n_max + 1);
    for (auto& r : p) r.assign(n_max + 1, 0);
    return p;
  };
  auto mul = [&](const Bi& a, const Bi& c) {
    Bi out = zero();
    for (std::size_t i = 0; i <= n_max; ++i)
      for (std::size_t j = 0; i + j <= n_max; ++j)
        for (std::size_t s = 0; s <= n_max; ++s) {
          if (sgn(a[i][s]) == 0) continue;
          for (std::size_t t = 0; s + t <= n_max; ++t)
            if (sgn(c[j][t]) != 0) mpz_addmul(out[i + j][s + t].get_mpz_t(), a[i][s].get_mpz_t(), c[j][t].get_mpz_t());
        }
    return out;
  };
  Bi m = zero();
  m[0][0] = 1;
  for (std::size_t round = 0; round <= n_max; ++round) {
    const Bi x = [&] {  // z M^2
      Bi sq = mul(m, m), shifted = zero();
      for (std::size_t i = 0; i < n_max; ++i) shifted[i + 1] = sq[i];
      return shifted;
    }();
    // B(x) - 1 = sum_{j>=1} b_j x^j, by Horner.
    Bi acc = zero();
    for (std::size_t j = n_max; j >= 1; --j) {
      acc[0][0] += blocks_count(static_cast<unsigned>(j));
      acc = mul(acc, x);
    }
    Bi next = zero();
    next[0][0] = 1;
    for (std::size_t i = 0; i <= n_max; ++i)
      for (std::size_t s = 0; s < n_max; ++s) next[i][s + 1] += acc[i][s];
    m = std::move(next);
  }
  std::vector<std::vector<mpz_class>> rows(n_max + 1);
  for (std::size_t n = 0; n <= n_max; ++n) rows[n].assign(m[n].begin(), m[n].begin() + static_cast<std::ptrdiff_t>(n + 1));
  return BivariateCoefficients(std::move(rows));
}

mpq_class ExactLaw::total() const {
  mpq_class s = 0;
  for (const auto& p : probability) s += p;
  return s;
}

mpq_class ExactLaw::at(std::int64_t value) const {
  for (std::size_t i = 0; i < support.size(); ++i)
    if (support[i] == value) return probability[i];
  return 0;
}

std::vector<double> ExactLaw::to_double() const {
  std::vector<double> out;
  out.reserve(probability.size());
  for (const auto& p : probability) out.push_back(p.get_d());
  return out;
}

mpq_class partition_function(const BivariateCoefficients& table, int n, const mpq_class& u) {
  check_n(table, n);
  mpq_class total = 0, power = 1;
  for (int b = 0; b <= n; ++b) {
    total += table(n, b) * power;
    power *= u;
  }
  return total;
}

ExactLaw root_block_law(const BivariateCoefficients& table, int n, const mpq_class& u) {
  if (n < 1) throw InvalidArgument("root block law needs n >= 1");
  check_n(table, n);
  if (sgn(u) <= 0) throw InvalidArgument("u must be positive");
  const mpz_class p = u.get_num(), q = u.get_den();
  const auto nn = static_cast<std::size_t>(n);
  // Integer series A(z) = q^m [z^m] M(z, p/q), so that M(z) = A(z/q).
  Poly a(nn + 1);
  for (std::size_t m = 0; m <= nn; ++m) {
    mpz_class s = 0, pb = 1, qb;
    for (std::size_t b = 0; b <= m; ++b) {
      mpz_pow_ui(qb.get_mpz_t(), q.get_mpz_t(), m - b);
      s += table(static_cast<int>(m), static_cast<int>(b)) * pb * qb;
      pb *= p;
    }
    a[m] = s;
  }
  const Poly a2 = multiply(a, a, nn);
  ExactLaw law;
  Poly power = a2;  // A^{2k}, truncated at z^{n-k}
  mpz_class qk = 1;  // q^{k-1}
  for (std::size_t k = 1; k <= nn; ++k) {
    if (k > 1) {
      power = multiply(power, a2, nn - k);
      qk *= q;
    }
    mpq_class prob(p * qk * blocks_count(static_cast<unsigned>(k)) * power[nn - k], a[nn]);
    prob.canonicalize();
    law.support.push_back(static_cast<std::int64_t>(k));
    law.probability.push_back(std::move(prob));
  }
  return law;
}

ExactLaw block_number_law(const BivariateCoefficients& table, int n, const mpq_class& u) {
  check_n(table, n);
  if (sgn(u) <= 0) throw InvalidArgument("u must be positive");
  const mpq_class z = partition_function(table, n, u);
  ExactLaw law;
  mpq_class power = 1;
  for (int b = 0; b <= n; ++b) {
    law.support.push_back(b);
    law.probability.push_back(table(n, b) * power / z);
    power *= u;
  }
  return law;
}

}  // namespace blockmap
