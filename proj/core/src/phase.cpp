#include "blockmap/phase.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "blockmap/errors.hpp"

namespace blockmap {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void check_u(double u) {
  if (!(u > 0) || !std::isfinite(u)) throw InvalidArgument("u must be a positive finite number");
}

void check_y(double y) {
  if (!(y > 0) || y > kRhoB * (1 + 1e-15)) throw InvalidArgument("y must lie in (0, 4/27]");
}

// t in [0, 1/3] for u >= 9/5; written to avoid cancellation at large u.
double t_of_u(double u) { return (1 / u) / (1 + std::sqrt(1 - 1 / u)); }

}  // namespace

const char* to_string(Regime r) {
  switch (r) {
    case Regime::Subcritical: return "subcritical";
    case Regime::Critical: return "critical";
    case Regime::Supercritical: return "supercritical";
  }
  return "?";
}

Regime regime_of(double u) {
  if (u == kCriticalU) return Regime::Critical;
  return u < kCriticalU ? Regime::Subcritical : Regime::Supercritical;
}

double y_of_u(double u) {
  check_u(u);
  if (u <= kCriticalU) return kRhoB;
  const double t = t_of_u(u);
  return t * (1 - t) * (1 - t);
}

double t_of_y(double y) {
  check_y(y);
  if (y >= kRhoB) return 1.0 / 3.0;
  // t(1-t)^2 is increasing on [0, 1/3]; Newton from below converges monotonically
  // since the map is concave there.
  double t = y;
  for (int i = 0; i < 100; ++i) {
    const double f = t * (1 - t) * (1 - t) - y;
    const double fp = (1 - t) * (1 - 3 * t);
    const double step = f / fp;
    t -= step;
    if (std::abs(step) <= 1e-17 * std::max(t, 1e-300)) break;
  }
  return std::min(t, 1.0 / 3.0);
}

BValues b_values(double y) {
  const double t = t_of_y(y);
  BValues v;
  v.B = 1 + 2 * t - 3 * t * t;
  v.Bp = 2 / (1 - t);
  const double s = 1 - 3 * t;
  v.Bpp = s <= 0 ? kInf : 2 / ((1 - t) * (1 - t) * (1 - t) * s);
  return v;
}

double criticality_map(double y) {
  const double t = t_of_y(y);
  return 1 / (t * (2 - t));
}

PhaseParams params(double u) {
  check_u(u);
  PhaseParams p;
  p.u = u;
  p.regime = regime_of(u);
  p.near_critical = std::abs(u - kCriticalU) < kNearCriticalBand;
  if (u <= kCriticalU) {
    p.y = kRhoB;
    p.B = 4.0 / 3.0;
    p.Bp = 3.0;
    p.Bpp = kInf;
  } else {
    const double t = t_of_u(u);
    p.y = t * (1 - t) * (1 - t);
    p.B = 1 + 2 * t - 3 * t * t;
    p.Bp = 2 / (1 - t);
    p.Bpp = 2 / ((1 - t) * (1 - t) * (1 - t) * (1 - 3 * t));
  }
  // B - 1 = t(2 - 3t) and ut = 1/(1 + sqrt(1 - 1/u)); forming B - 1 by subtraction loses digits at large u.
  const double t = u <= kCriticalU ? 1.0 / 3.0 : t_of_u(u);
  const double ut = u <= kCriticalU ? u / 3.0 : 1 / (1 + std::sqrt(1 - 1 / u));
  p.M_rho = 1 + ut * (2 - 3 * t);
  p.E = 2 * u * p.y * p.Bp / p.M_rho;
  p.c = std::sqrt(3 / std::numbers::pi) * (2.0 / 27.0) * u / p.M_rho;
  p.w = kRhoB / p.y;
  if (u > kCriticalU) {
    p.sigma2 = 1 + 4 * u * p.y * p.y * p.Bpp / p.M_rho;
    p.sigma2_closed = (3 * u - 3 + 2 * std::sqrt(u * (u - 1))) / (5 * u - 9);
    p.sigma = std::sqrt(p.sigma2);
    if (!p.near_critical && std::abs(p.E - 1) > 1e-9) throw Error("criticality check failed: E(u) = " + std::to_string(p.E));
  } else {
    p.sigma2 = p.sigma2_closed = p.sigma = kInf;
  }
  return p;
}

mpq_class exact_mean_subcritical(const mpq_class& u) {
  if (sgn(u) <= 0 || u > mpq_class(9, 5)) throw InvalidArgument("exact mean needs 0 < u <= 9/5");
  mpq_class e = 8 * u / (3 * (3 + u));
  e.canonicalize();
  return e;
}

double log_blocks_count(std::int64_t j) {
  if (j < 0) throw InvalidArgument("negative block size");
  if (j == 0) return 0;
  const auto x = static_cast<double>(j);
  return std::log(2.0) + std::lgamma(3 * x - 2) - std::lgamma(x + 1) - std::lgamma(2 * x);
}

double blocks_ratio(std::int64_t j) {
  const auto x = static_cast<double>(j);
  return 3 * x * (3 * x - 1) * (3 * x - 2) / ((x + 1) * 2 * x * (2 * x + 1));
}

double offspring_mass(const PhaseParams& p, std::int64_t j) {
  if (j < 0) return 0;
  if (j == 0) return 1 / p.M_rho;
  return std::exp(log_blocks_count(j) + static_cast<double>(j) * std::log(p.y)) * p.u / p.M_rho;
}

double size_biased_mass(const PhaseParams& p, std::int64_t j) {
  return 2 * static_cast<double>(j) * offspring_mass(p, j) / p.E;
}

LargestBlockPrediction predicted_largest_block(double u, double n) {
  const PhaseParams p = params(u);
  LargestBlockPrediction out;
  out.regime = p.regime;
  out.tail_balance = kNaN;
  switch (p.regime) {
    case Regime::Subcritical:
      out.center = (1 - p.E) * n;
      out.scale = std::pow(2 * n * p.c, 2.0 / 3.0);
      break;
    case Regime::Critical:
      out.center = kNaN;
      out.scale = std::pow(n, 2.0 / 3.0);
      break;
    case Regime::Supercritical: {
      const double lw = std::log(p.w);
      const double ln = std::log(n), lnln = std::log(ln);
      out.center = ln / (2 * lw) - 1.25 * lnln / lw;
      out.scale = 1;
      out.tail_balance = ln / lw - 2.5 * lnln / lw;
      break;
    }
  }
  return out;
}

const std::vector<SchemaParams>& schema_table() {
  static const std::vector<SchemaParams> rows = {
      {"M2/M3", "M2", "M3", mpq_class(81, 17), 32, 81, 15},
      {"M1/M4", "M1", "M4", mpq_class(9, 5), 8, 9, 3},
      {"M4-Z/M5", "M4 - Z", "M5", mpq_class(135, 7), 32, 135, 25},
      {"B1/B2", "B1", "B2", mpq_class(36, 11), 20, 36, 9},
      {"B1/B4", "B1", "B4", mpq_class(52, 27), 40, 52, 13},
      {"B4/B5", "B4", "B5", mpq_class(68, 3), 20, 68, 17},
      {"T1/Z+ZT2", "T1", "Z + Z x T2", mpq_class(16, 7), 9, 16, 2},
      {"T2/T3", "T2", "T3", mpq_class(64, 37), 27, 64, -10},
  };
  return rows;
}

const SchemaParams& schema_params(const std::string& id) {
  for (const auto& r : schema_table())
    if (r.id == id) return r;
  throw InvalidArgument("unknown schema '" + id + "'");
}

}  // namespace blockmap
