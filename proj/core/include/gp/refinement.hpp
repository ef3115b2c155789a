#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "gp/mesh.hpp"
#include "gp/random.hpp"

namespace gp {

enum class MarkingKind { None, Uniform, Corner, Random };

struct MarkingPolicy {
  MarkingKind kind = MarkingKind::Uniform;
  double fraction = 0.1; // Random only
  std::size_t max_marked = 0; // Random only; 0 = no cap
  std::uint64_t seed = 1;
};

MarkingKind parse_marking(const std::string& name);
std::string to_string(MarkingKind k);

/// Corner policy: active simplices containing the lower bounding-box corner.
std::vector<int> select_marked(const Mesh& mesh, const MarkingPolicy& policy, std::mt19937_64& rng);

struct ClosureRound {
  int round = 0;
  std::size_t marked = 0;
  std::size_t elements = 0;
  std::size_t lg_rounds = 0;
  double ratio = 0.0; // (#T_n - #T_0) / sum #M, NaN when nothing was marked yet
};

struct ClosureReport {
  std::vector<ClosureRound> rounds;
  bool no_op = true;
  double envelope = 0.0;     // max ratio seen
  bool bounded = true;       // no-growth rule on the ratio series
};

/// Runs BiSecLG(alpha) `rounds` times with the given marking policy.
ClosureReport closure_benchmark(Mesh& mesh, const MarkingPolicy& policy, int rounds, int alpha);

/// No-growth rule: after the third entry, every value must be at most
/// `factor` times the running maximum of the earlier entries.
bool no_growth_trend(const std::vector<double>& series, double factor = 1.05);

/// max over new simplices T' of dist(T,T') / 2^{-level(T')/d} after
/// refine_lg of the single simplex T.
double lg_distance_ratio(Mesh& mesh, int marked, int alpha);

} // namespace gp
