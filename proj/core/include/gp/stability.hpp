#pragma once

#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gp/distance.hpp"
#include "gp/fe_space.hpp"
#include "gp/mesh.hpp"

namespace gp {

inline constexpr double kInfinityP = std::numeric_limits<double>::infinity();

/// Piecewise-constant positive weight on the active simplices.
struct Weight {
  std::vector<double> values; // indexed like ElementDistance::elements()
  DistanceKind kind = DistanceKind::Vertex;
  double grading = 1.0;

  /// Validates positivity and caches the grading.
  static Weight from_values(std::vector<double> values, const ElementDistance& dist);
  [[nodiscard]] Weight inverse(const ElementDistance& dist) const;
  [[nodiscard]] Weight product(const Weight& other, const ElementDistance& dist) const;
};

enum class MaxOperatorMethod { Auto, BruteForce, Propagation };

/// M_gamma(v0)|_T = max_T' gamma^{-delta(T,T')} |v0(T')|.
[[nodiscard]] std::vector<double> max_operator(const std::vector<double>& v0, double gamma, const ElementDistance& dist,
                                               MaxOperatorMethod method = MaxOperatorMethod::Auto);

struct Layers {
  std::map<int, std::vector<int>> layers; // i -> elements with gamma^{i-1} < rho <= gamma^i
  bool single = false;                    // gamma == 1: everything in layer 0
};

[[nodiscard]] Layers layer_decomposition(const Weight& w);
[[nodiscard]] Layers layer_decomposition(const std::vector<double>& values, double gamma);

// ---------------------------------------------------------------------------
// Stability range calculator

enum class NormKind { Lp, W1p };

/// Element family: Lagrange of degree K (K = 0 means the limit K -> infinity) or CR.
struct Family {
  bool cr = false;
  int K = 1;
  static Family lagrange(int K) { return {false, K}; }
  static Family lagrange_limit() { return {false, 0}; }
  static Family crouzeix_raviart() { return {true, 1}; }
  [[nodiscard]] std::string name() const;
};

/// Certified lower bound for the worst grading: 1/q_new, or
/// (d+sqrt(d+2))/(d-sqrt(d+2)) for CR (infinite when the denominator is <= 0).
[[nodiscard]] double gamma_max_bound(int d, const Family& f);

struct PInterval {
  bool empty = true;
  double lo = 1.0; // rounded inward to 4 decimals
  double hi = 1.0;
  bool lo_closed = false;
  bool hi_closed = false;
  [[nodiscard]] bool full() const { return !empty && lo == 1.0 && hi == kInfinityP && lo_closed && hi_closed; }
  /// Interval notation such as "[1.2619,4.8188]", "[1,∞]" or "∅".
  [[nodiscard]] std::string to_string(bool unicode = true) const;
  [[nodiscard]] bool contains(double p) const;
};

struct StabilityVerdict {
  int d = 0;
  Family family;
  double gamma_h = 1.0;
  double gamma_rho = 1.0;
  NormKind kind = NormKind::Lp;
  double gamma_max = 0.0;
  double threshold = 0.0; // admissible iff |1/2 - 1/p| < threshold
  PInterval interval;
  [[nodiscard]] bool admissible(double p) const;
};

/// Solves gamma_rho gamma_h^{d|1/2-1/p|} < gamma_max (Lp) or
/// gamma_rho gamma_h^{1+d|1/2-1/p|} < gamma_max (W1p) for p.
[[nodiscard]] StabilityVerdict stability_range(int d, const Family& f, double gamma_h, double gamma_rho, NormKind kind);

struct CrThresholds {
  int lp_all_p_max_d = 0;
  int w1p_all_p_max_d = 0;
  bool w12_all_d = false;
  int probe_limit = 0;
};

[[nodiscard]] CrThresholds cr_dimension_thresholds(int probe_limit = 100);

/// Published gradings of refinement strategies; "BiSecLG(a)" takes alpha
/// and d. Throws InputError for unknown names.
[[nodiscard]] double preset_grading(const std::string& name, int d = 2, int alpha = 1);
[[nodiscard]] std::vector<std::string> preset_names();

/// Smallest K with gamma_h < 1/q_new(d,K), searching up to k_limit (nullopt if none).
[[nodiscard]] std::optional<int> min_degree_w12(int d, double gamma_h, int k_limit = 1000);

/// TSV tables. q_new for K = 1..14 and the limit, d = 1..3.
[[nodiscard]] std::string table_qnew_tsv();
/// Stability tables for d = 2 or 3 using the published row layout.
[[nodiscard]] std::string table_stability_tsv(int d);
[[nodiscard]] std::string table_cr_tsv(int probe_limit = 100);

/// Four-decimal formatting of a value (ordinary rounding).
[[nodiscard]] std::string format4(double x);

// ---------------------------------------------------------------------------
// Measurements

struct VolumeDecay {
  double max_sum = 0.0; // max_T (1/|T|) sum_T' |T'| gamma^{-delta(T,T')}
  double factor = 0.0;  // log(gamma_h)/log(gamma/gamma_h^d)
  double ratio = 0.0;   // max_sum / factor (NaN if degenerate)
  bool degenerate = false;
};

/// Requires gamma > gamma_h^d.
[[nodiscard]] VolumeDecay volume_decay_constant(const Mesh& mesh, const ElementDistance& dist, double gamma, double gamma_h);

/// max_T' (1/|T'|) sum_T |T| g^{-delta(T,T')}; bounds ||M_gamma v||_p^p / ||v||_p^p with g = gamma^p.
[[nodiscard]] double volume_sum_max(const Mesh& mesh, const ElementDistance& dist, double g);

struct WeightedMeasurement {
  double measured = 0.0;
  std::optional<double> bound; // analytic bound when applicable
  bool exact = true;           // false for quadrature-based diagnostics
  [[nodiscard]] bool pass() const { return !bound || measured <= *bound * (1 + 1e-12); }
};

/// Exact sup over u in L2 of ||rho Q u||_2 / ||rho u||_2 with the bound
/// 6 gamma^3 / (1 - gamma q) when gamma q < 1.
[[nodiscard]] WeightedMeasurement weighted_l2_ratio(const FeSpace& V, const Weight& w);

/// Exact sup over u in a fine Lagrange space of ||rho grad Q u|| / ||rho grad u||
/// (broken gradient for CR). w is a weight on V's elements; the fine mesh
/// must be a refined copy of V's mesh.
[[nodiscard]] WeightedMeasurement weighted_gradient_ratio(const FeSpace& V, const Weight& w, const FeSpace& fine);

/// Quadrature diagnostics for p != 2 (p may be infinite): random samples
/// plus indicators of single elements in the extreme layers.
[[nodiscard]] WeightedMeasurement weighted_lp_ratio(const FeSpace& V, const Weight& w, double p, int samples = 16,
                                                    unsigned long long seed = 1);
/// W1p analogue with u from a fine Lagrange space (random and nodal bumps).
[[nodiscard]] WeightedMeasurement weighted_w1p_ratio(const FeSpace& V, const Weight& w, const FeSpace& fine, double p,
                                                     int samples = 16, unsigned long long seed = 1);

} // namespace gp
