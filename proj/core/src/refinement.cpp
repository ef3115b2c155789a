#include "gp/refinement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gp/distance.hpp"
#include "gp/error.hpp"

namespace gp {

MarkingKind parse_marking(const std::string& name) {
  if (name == "none") return MarkingKind::None;
  if (name == "uniform") return MarkingKind::Uniform;
  if (name == "corner") return MarkingKind::Corner;
  if (name == "random") return MarkingKind::Random;
  throw InputError("unknown marking policy '" + name + "'");
}

std::string to_string(MarkingKind k) {
  switch (k) {
    case MarkingKind::None: return "none";
    case MarkingKind::Uniform: return "uniform";
    case MarkingKind::Corner: return "corner";
    case MarkingKind::Random: return "random";
  }
  return "?";
}

double standard_normal(Rng& rng) {
  constexpr double kTwoPi = 6.283185307179586476925286766559;
  const double u1 = 1.0 - unit_double(rng);
  const double u2 = unit_double(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

std::vector<int> select_marked(const Mesh& mesh, const MarkingPolicy& policy, std::mt19937_64& rng) {
  const auto act = mesh.active();
  std::vector<int> out;
  switch (policy.kind) {
    case MarkingKind::None:
      break;
    case MarkingKind::Uniform:
      out = act;
      break;
    case MarkingKind::Corner: {
      const auto lo = mesh.bounding_box().first;
      const auto corner = mesh.find_vertex(lo);
      for (int id : act) {
        const auto& v = mesh.simplex(id).v;
        if (corner && std::find(v.begin(), v.end(), *corner) != v.end()) out.push_back(id);
      }
      break;
    }
    case MarkingKind::Random:
      for (int id : act) {
        if (unit_double(rng) < policy.fraction) out.push_back(id);
      }
      if (out.empty() && !act.empty()) out.push_back(act[uniform_index(rng, act.size())]);
      if (policy.max_marked > 0 && out.size() > policy.max_marked) {
        for (std::size_t i = 0; i < policy.max_marked; ++i) std::swap(out[i], out[i + uniform_index(rng, out.size() - i)]);
        out.resize(policy.max_marked);
        std::sort(out.begin(), out.end());
      }
      break;
  }
  return out;
}

ClosureReport closure_benchmark(Mesh& mesh, const MarkingPolicy& policy, int rounds, int alpha) {
  if (rounds < 0) throw InputError("rounds must be nonnegative");
  ClosureReport rep;
  std::mt19937_64 rng(policy.seed);
  const std::size_t n0 = mesh.num_active();
  std::size_t marked_total = 0;
  std::vector<double> series;
  for (int r = 1; r <= rounds; ++r) {
    const auto marked = select_marked(mesh, policy, rng);
    marked_total += marked.size();
    const auto st = mesh.refine_lg(marked, alpha);
    ClosureRound row;
    row.round = r;
    row.marked = marked.size();
    row.elements = mesh.num_active();
    row.lg_rounds = static_cast<std::size_t>(st.rounds);
    if (marked_total == 0) {
      row.ratio = std::numeric_limits<double>::quiet_NaN();
    } else {
      rep.no_op = false;
      row.ratio = static_cast<double>(mesh.num_active() - n0) / static_cast<double>(marked_total);
      rep.envelope = std::max(rep.envelope, row.ratio);
      series.push_back(row.ratio);
    }
    rep.rounds.push_back(row);
  }
  rep.bounded = no_growth_trend(series);
  return rep;
}

bool no_growth_trend(const std::vector<double>& series, double factor) {
  double running = 0.0;
  for (std::size_t i = 0; i < series.size(); ++i) {
    if (i >= 3 && series[i] > factor * running) return false;
    running = std::max(running, series[i]);
  }
  return true;
}

double lg_distance_ratio(Mesh& mesh, int marked, int alpha) {
  const std::size_t before = mesh.num_simplices_total();
  // Keep a copy of the marked simplex: it becomes inactive.
  Mesh probe = mesh;
  probe.refine_lg({marked}, alpha);
  double worst = 0.0;
  for (std::size_t id = before; id < probe.num_simplices_total(); ++id) {
    const int sid = static_cast<int>(id);
    if (!probe.simplex(sid).active) continue;
    const double dist = euclidean_distance(probe, marked, sid);
    worst = std::max(worst, dist / probe.h(sid));
  }
  mesh = std::move(probe);
  return worst;
}

} // namespace gp
