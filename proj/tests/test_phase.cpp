#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "blockmap/errors.hpp"
#include "blockmap/phase.hpp"

using namespace blockmap;

namespace {

// Moments of mu^u by direct summation of the masses.
struct Moments {
  double mass = 0, mean = 0, second = 0;
};

Moments sum_moments(const PhaseParams& p, std::int64_t terms) {
  Moments m;
  for (std::int64_t j = 0; j <= terms; ++j) {
    const double x = offspring_mass(p, j);
    const double d = 2.0 * static_cast<double>(j);
    m.mass += x;
    m.mean += d * x;
    m.second += d * d * x;
  }
  return m;
}

}  // namespace

TEST_SUITE("phase") {
  TEST_CASE("subcritical means") {
    CHECK(exact_mean_subcritical(mpq_class(1)) == mpq_class(2, 3));
    CHECK(exact_mean_subcritical(mpq_class(9, 5)) == 1);
    CHECK(exact_mean_subcritical(mpq_class(8, 5)) == mpq_class(64, 69));
    for (double u : {0.3, 1.0, 1.6}) CHECK(params(u).E == doctest::Approx(8 * u / (3 * (3 + u))).epsilon(1e-12));
    CHECK(1 - params(1.6).E == doctest::Approx(0.0725).epsilon(1e-3));
    CHECK_THROWS_AS(exact_mean_subcritical(mpq_class(2)), InvalidArgument);
  }

  TEST_CASE("criticality above 9/5") {
    for (double u : {1.8, 2.0, 2.5, 5.0, 50.0}) CHECK(std::abs(params(u).E - 1) <= 1e-10);
    for (double u : {1.9, 2.5, 5.0}) CHECK(criticality_map(y_of_u(u)) == doctest::Approx(u).epsilon(1e-12));
  }

  TEST_CASE("masses summed directly") {
    for (double u : {2.0, 2.5, 5.0}) {
      const auto p = params(u);
      const auto m = sum_moments(p, 20000);
      CHECK(m.mass == doctest::Approx(1).epsilon(1e-10));
      CHECK(m.mean == doctest::Approx(1).epsilon(1e-9));
      CHECK(m.second - 1 == doctest::Approx(p.sigma2).epsilon(1e-8));
    }
    // Below 9/5 the tail is j^{-5/2}: check the mass only.
    CHECK(sum_moments(params(1.0), 200000).mass == doctest::Approx(1).epsilon(1e-6));
  }

  TEST_CASE("two variance expressions agree") {
    for (double u = 1.81; u <= 50; u += 0.173) {
      const auto p = params(u);
      CHECK(std::abs(p.sigma2 - p.sigma2_closed) <= 1e-8 * p.sigma2_closed);
    }
    CHECK(std::isinf(params(1.0).sigma2));
  }

  TEST_CASE("y and the cubic") {
    CHECK(std::abs(y_of_u(9.0 / 5.0) - 4.0 / 27.0) <= 1e-12);
    CHECK(y_of_u(1.0) == 4.0 / 27.0);
    for (double y : {0.01, 0.05, 0.1, 0.14, 4.0 / 27.0}) {
      const double B = b_values(y).B;
      CHECK(B * B * B - B * B - 18 * y * B + 27 * y * y + 16 * y == doctest::Approx(0).epsilon(1e-12));
    }
    CHECK(b_values(4.0 / 27.0).B == doctest::Approx(4.0 / 3.0));
    CHECK(std::isinf(b_values(4.0 / 27.0).Bpp));
  }

  TEST_CASE("constant c below 9/5") {
    for (double u : {0.5, 1.0, 1.7}) {
      const double expected = std::sqrt(3 / std::numbers::pi) * 2 * u / (9 * (3 + u));
      CHECK(params(u).c == doctest::Approx(expected).epsilon(1e-12));
    }
  }

  TEST_CASE("regimes and invalid weights") {
    CHECK(params(1.0).regime == Regime::Subcritical);
    CHECK(params(9.0 / 5.0).regime == Regime::Critical);
    CHECK(params(2.0).regime == Regime::Supercritical);
    CHECK(params(1.8 + 1e-8).near_critical);
    CHECK_THROWS_AS(params(0), InvalidArgument);
    CHECK_THROWS_AS(params(-1), InvalidArgument);
    CHECK_THROWS_AS(params(std::numeric_limits<double>::infinity()), InvalidArgument);
    CHECK_NOTHROW(params(1e9));
  }

  TEST_CASE("size-biased law sums to one at criticality") {
    const auto p = params(5.0);
    double s = 0;
    for (std::int64_t j = 1; j < 5000; ++j) s += size_biased_mass(p, j);
    CHECK(s == doctest::Approx(1).epsilon(1e-10));
  }

  TEST_CASE("largest block predictions") {
    const auto sub = predicted_largest_block(1.0, 3000);
    CHECK(sub.center == doctest::Approx(1000));
    CHECK(sub.regime == Regime::Subcritical);
    const auto sup = predicted_largest_block(5.0, 1e5);
    const double lw = std::log(params(5.0).w);
    CHECK(lw == doctest::Approx(0.56195).epsilon(1e-4));
    CHECK(sup.center == doctest::Approx(std::log(1e5) / (2 * lw) - 1.25 * std::log(std::log(1e5)) / lw));
    CHECK(sup.center == doctest::Approx(4.8).epsilon(0.02));
    const auto crit = predicted_largest_block(9.0 / 5.0, 1e6);
    CHECK(std::isnan(crit.center));
    CHECK(crit.scale == doctest::Approx(1e4));
  }

  TEST_CASE("schema table") {
    const auto& rows = schema_table();
    CHECK(rows.size() == 8);
    for (const auto& r : rows) CHECK(r.mean(r.u_c) == 1);
    const auto& m = schema_params("M2/M3");
    CHECK(m.u_c == mpq_class(81, 17));
    CHECK(m.mean(mpq_class(1)) == mpq_class(1, 3));
    const auto& b = schema_params("B1/B2");
    CHECK(b.u_c == mpq_class(36, 11));
    CHECK(b.mean(mpq_class(2)) == mpq_class(20, 27));
    const auto& t = schema_params("T2/T3");
    CHECK(t.u_c == mpq_class(64, 37));
    CHECK(t.mean(mpq_class(1)) == mpq_class(1, 2));
    CHECK_THROWS_AS(schema_params("nope"), InvalidArgument);
  }
}
