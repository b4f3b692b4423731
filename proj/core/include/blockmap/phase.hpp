#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace blockmap {

inline constexpr double kCriticalU = 9.0 / 5.0;
inline constexpr double kRhoB = 4.0 / 27.0;
/// Half-width of the band around 9/5 where constants are flagged as ill-conditioned.
inline constexpr double kNearCriticalBand = 1e-6;

enum class Regime { Subcritical, Critical, Supercritical };
const char* to_string(Regime r);
Regime regime_of(double u);

/// y(u) = rho(u) M(rho(u), u)^2: 4/27 for u <= 9/5, (1 - sqrt(1 - 1/u))(1 - 1/u) above.
double y_of_u(double u);

/// B(y), B'(y), B''(y) for the generating series of 2-connected maps.
struct BValues {
  double B = 0;
  double Bp = 0;
  double Bpp = 0;  // +inf at the singularity y = 4/27
};

/// Branch of the cubic B^3 - B^2 - 18yB + 27y^2 + 16y = 0 through B(0) = 1.
///
/// Evaluated through the rational parametrisation y = t(1-t)^2, B = 1 + 2t - 3t^2,
/// t in [0, 1/3], which also gives B' = 2/(1-t) and B'' = 2/((1-t)^3 (1-3t)).
BValues b_values(double y);
/// The parameter t in [0, 1/3] with t(1-t)^2 = y.
double t_of_y(double y);

/// u = 1/(2yB'(y) - B(y) + 1), the weight making mu^{y,u} critical.
double criticality_map(double y);

struct PhaseParams {
  double u = 0;
  double y = 0;
  double B = 0, Bp = 0, Bpp = 0;
  double M_rho = 0;  // 1 + u(B - 1)
  double E = 0;      // mean of mu^u
  double c = 0;      // mu^u(2j) ~ c w^{-j} j^{-5/2}
  double sigma2 = 0; // variance of mu^u, +inf for u <= 9/5
  double sigma2_closed = 0;  // (3u - 3 + 2 sqrt(u(u-1)))/(5u - 9), +inf for u <= 9/5
  double sigma = 0;
  double w = 1;      // 4/(27y)
  Regime regime = Regime::Subcritical;
  bool near_critical = false;
};

/// All constants at weight u > 0. Throws InvalidArgument for u <= 0 or
/// non-finite u, and Error if the criticality check E = 1 fails for u >= 9/5.
PhaseParams params(double u);

/// Exact mean of mu^u at rational u <= 9/5: 8u/(3(3+u)).
mpq_class exact_mean_subcritical(const mpq_class& u);

/// log b_j for j >= 0.
double log_blocks_count(std::int64_t j);
/// mu^u(2j): 1/M_rho for j = 0, b_j y^j u / M_rho otherwise.
double offspring_mass(const PhaseParams& p, std::int64_t j);
/// b_{j+1} / b_j = 3j(3j-1)(3j-2) / ((j+1) 2j (2j+1)) for j >= 1.
double blocks_ratio(std::int64_t j);
/// Size-biased law 2j mu^u(2j) / E(u).
double size_biased_mass(const PhaseParams& p, std::int64_t j);

struct LargestBlockPrediction {
  Regime regime = Regime::Subcritical;
  /// Predicted LB1: (1 - E)n below 9/5, NaN at 9/5 (no closed-form constant),
  /// ln n/(2 ln w) - (5/4) lnln n/ln w above.
  double center = 0;
  /// Fluctuation scale: (2 n c)^{2/3} below, n^{2/3} at, 1 above.
  double scale = 0;
  /// Supercritical only: the k balancing w^k k^{5/2} = c n, i.e.
  /// ln n/ln w - (5/2) lnln n/ln w to first orders. NaN otherwise.
  double tail_balance = 0;
};

LargestBlockPrediction predicted_largest_block(double u, double n);

/// A block-decomposition schema with E(u) = alpha u / (beta + gamma u) for u <= u_C.
struct SchemaParams {
  std::string id;
  std::string maps;
  std::string cores;
  mpq_class u_c;
  mpq_class alpha, beta, gamma;

  mpq_class mean(const mpq_class& u) const { return alpha * u / (beta + gamma * u); }
  mpq_class condensed_fraction() const { return 1 - mean(1); }
};

const std::vector<SchemaParams>& schema_table();
/// Looks up a row by id ("M2/M3", "M1/M4", ...). Throws InvalidArgument if unknown.
const SchemaParams& schema_params(const std::string& id);

}  // namespace blockmap
