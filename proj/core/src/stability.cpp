#include "gp/stability.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <queue>
#include <sstream>

#include "gp/error.hpp"
#include "gp/linalg.hpp"
#include "gp/parallel.hpp"
#include "gp/projection.hpp"
#include "gp/quadrature.hpp"

namespace gp {

using Eigen::Index;

// ---------------------------------------------------------------------------
// Weights and the maximal operator

Weight Weight::from_values(std::vector<double> values, const ElementDistance& dist) {
  if (values.size() != dist.size()) throw InputError("Weight: one value per element required");
  for (double v : values) {
    if (!(v > 0.0) || !std::isfinite(v)) throw InputError("Weight: values must be positive and finite");
  }
  Weight w;
  w.kind = dist.kind();
  w.grading = grading_of(values, dist);
  w.values = std::move(values);
  return w;
}

Weight Weight::inverse(const ElementDistance& dist) const {
  std::vector<double> v(values.size());
  std::transform(values.begin(), values.end(), v.begin(), [](double x) { return 1.0 / x; });
  return from_values(std::move(v), dist);
}

Weight Weight::product(const Weight& other, const ElementDistance& dist) const {
  if (other.values.size() != values.size()) throw InputError("Weight::product: size mismatch");
  std::vector<double> v(values.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = values[i] * other.values[i];
  return from_values(std::move(v), dist);
}

std::vector<double> max_operator(const std::vector<double>& v0, double gamma, const ElementDistance& dist, MaxOperatorMethod method) {
  if (!(gamma > 1.0)) throw InputError("max_operator: gamma must exceed 1");
  if (v0.size() != dist.size()) throw InputError("max_operator: one value per element required");
  const std::size_t n = v0.size();
  std::vector<double> out(n, 0.0);
  if (method == MaxOperatorMethod::Auto) method = dist.has_matrix() ? MaxOperatorMethod::BruteForce : MaxOperatorMethod::Propagation;
  if (method == MaxOperatorMethod::BruteForce) {
    parallel_for(n, [&](std::size_t i) {
      const std::vector<int> row = dist.row(i);
      double best = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (row[j] == ElementDistance::kInfinity) continue;
        best = std::max(best, std::abs(v0[j]) * std::pow(gamma, -row[j]));
      }
      out[i] = best;
    });
    return out;
  }
  // Label = (source value, hops); value = source * gamma^-hops, as in the brute force.
  struct Label {
    double value;
    double source;
    int hops;
    std::size_t node;
    bool operator<(const Label& o) const { return value < o.value || (value == o.value && node > o.node); }
  };
  std::priority_queue<Label> heap;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = std::abs(v0[i]);
    if (a > 0.0) heap.push({a, a, 0, i});
  }
  std::vector<char> done(n, 0);
  const auto& adj = dist.neighbors();
  while (!heap.empty()) {
    const Label top = heap.top();
    heap.pop();
    if (done[top.node]) continue;
    done[top.node] = 1;
    out[top.node] = top.value;
    for (int nb : adj[top.node]) {
      const auto m = static_cast<std::size_t>(nb);
      if (done[m]) continue;
      const double v = top.source * std::pow(gamma, -(top.hops + 1));
      if (v > out[m]) {
        out[m] = v;
        heap.push({v, top.source, top.hops + 1, m});
      }
    }
  }
  return out;
}

Layers layer_decomposition(const std::vector<double>& values, double gamma) {
  Layers out;
  if (!(gamma > 1.0)) {
    out.single = true;
    std::vector<int> all(values.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
    out.layers[0] = std::move(all);
    return out;
  }
  const double lg = std::log(gamma);
  for (std::size_t t = 0; t < values.size(); ++t) {
    const double r = values[t];
    auto i = static_cast<int>(std::ceil(std::log(r) / lg));
    while (std::pow(gamma, i - 1) >= r) --i;
    while (std::pow(gamma, i) < r) ++i;
    out.layers[i].push_back(static_cast<int>(t));
  }
  return out;
}

Layers layer_decomposition(const Weight& w) { return layer_decomposition(w.values, w.grading); }

// ---------------------------------------------------------------------------
// Stability range

std::string Family::name() const {
  if (cr) return "CR";
  if (K == 0) return "inf";
  return std::to_string(K);
}

double gamma_max_bound(int d, const Family& f) {
  if (d < 1) throw InputError("gamma_max_bound: d must be positive");
  if (f.cr) {
    const double s = std::sqrt(d + 2.0);
    if (d - s <= 0.0) return kInfinityP;
    return (d + s) / (d - s);
  }
  if (f.K < 0) throw InputError("gamma_max_bound: K must be positive (0 for the limit)");
  return 1.0 / (f.K == 0 ? q_new_limit() : q_new(d, f.K));
}

std::string format4(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", x);
  return buf;
}

std::string PInterval::to_string(bool unicode) const {
  const std::string inf = unicode ? "∞" : "inf";
  if (empty) return unicode ? "∅" : "empty";
  const auto num = [&](double x) { return std::isinf(x) ? inf : (x == 1.0 ? std::string("1") : format4(x)); };
  if (full()) return "[1," + inf + "]";
  if (!lo_closed && lo == 1.0 && hi == kInfinityP) return "(1," + inf + ")";
  return "[" + num(lo) + "," + num(hi) + "]";
}

bool PInterval::contains(double p) const {
  if (empty) return false;
  const bool lo_ok = lo_closed ? p >= lo : p > lo;
  const bool hi_ok = hi_closed ? p <= hi : p < hi;
  return lo_ok && hi_ok;
}

bool StabilityVerdict::admissible(double p) const {
  if (p < 1.0) return false;
  const double s = std::abs(0.5 - (std::isinf(p) ? 0.0 : 1.0 / p));
  return s < threshold;
}

StabilityVerdict stability_range(int d, const Family& f, double gamma_h, double gamma_rho, NormKind kind) {
  if (!(gamma_h >= 1.0) || !(gamma_rho >= 1.0)) throw InputError("stability_range: gradings must be >= 1");
  StabilityVerdict v;
  v.d = d;
  v.family = f;
  v.gamma_h = gamma_h;
  v.gamma_rho = gamma_rho;
  v.kind = kind;
  v.gamma_max = gamma_max_bound(d, f);
  const double room = std::log(v.gamma_max / gamma_rho);
  if (std::isinf(v.gamma_max)) {
    v.threshold = kInfinityP;
  } else if (gamma_h == 1.0) {
    v.threshold = room > 0.0 ? kInfinityP : -kInfinityP;
  } else {
    const double lh = std::log(gamma_h);
    v.threshold = kind == NormKind::Lp ? room / (d * lh) : (room / lh - 1.0) / d;
  }
  PInterval& I = v.interval;
  const double t = v.threshold;
  if (t <= 0.0) {
    I.empty = true;
  } else if (t > 0.5) {
    I = {false, 1.0, kInfinityP, true, true};
  } else if (t == 0.5) {
    I = {false, 1.0, kInfinityP, false, false};
  } else {
    const double lo = 1.0 / (0.5 + t);
    const double hi = 1.0 / (0.5 - t);
    // Endpoints are rounded inward so the printed interval stays admissible.
    I.empty = false;
    I.lo = std::ceil(lo * 1e4 - 1e-9) / 1e4;
    I.hi = std::floor(hi * 1e4 + 1e-9) / 1e4;
    I.lo_closed = I.hi_closed = false;
    if (I.hi < I.lo) I.empty = true;
  }
  return v;
}

CrThresholds cr_dimension_thresholds(int probe_limit) {
  CrThresholds out;
  out.probe_limit = probe_limit;
  out.w12_all_d = true;
  bool lp = true;
  bool w1p = true;
  for (int d = 2; d <= probe_limit; ++d) {
    const double g = gamma_max_bound(d, Family::crouzeix_raviart());
    lp = lp && std::sqrt(2.0) < g;
    w1p = w1p && std::pow(2.0, 1.0 / d + 0.5) < g;
    if (lp) out.lp_all_p_max_d = d;
    if (w1p) out.w1p_all_p_max_d = d;
    out.w12_all_d = out.w12_all_d && std::pow(2.0, 1.0 / d) < g;
  }
  return out;
}

double preset_grading(const std::string& name, int d, int alpha) {
  if (name == "2D-RGB" || name == "2D-NVB-") return std::pow(2.0, 1.5);
  if (name == "2D-NVB+" || name == "2D-RG-GHS") return 2.0;
  if (name == "2D-RG") return 4.0;
  if (name == "BiSecLG") {
    if (d < 1 || alpha < 1) throw InputError("BiSecLG preset needs d >= 1 and alpha >= 1");
    return std::pow(2.0, static_cast<double>(alpha) / d);
  }
  throw InputError("unknown refinement preset: " + name);
}

std::vector<std::string> preset_names() { return {"2D-RGB", "2D-NVB+", "2D-NVB-", "2D-RG", "2D-RG-GHS", "BiSecLG"}; }

std::optional<int> min_degree_w12(int d, double gamma_h, int k_limit) {
  for (int K = 1; K <= k_limit; ++K) {
    if (gamma_h < 1.0 / q_new(d, K)) return K;
  }
  return std::nullopt;
}

std::string table_qnew_tsv() {
  std::ostringstream os;
  os << "K\td=1\td=2\td=3\n";
  for (int K = 1; K <= 14; ++K) {
    os << K;
    for (int d = 1; d <= 3; ++d) os << '\t' << format4(q_new(d, K));
    os << '\n';
  }
  os << "inf";
  for (int d = 1; d <= 3; ++d) os << '\t' << format4(q_new_limit());
  os << '\n';
  return os.str();
}

namespace {

struct GradingRow {
  std::string label;
  double value;
  std::vector<int> degrees; // 0 = limit
};

std::vector<GradingRow> table_rows(int d) {
  if (d == 2) {
    return {{"2^(1/2)", std::sqrt(2.0), {1}},
            {"2", 2.0, {1, 2, 3, 0}},
            {"2^(3/2)", std::pow(2.0, 1.5), {1, 2, 3, 0}},
            {"4", 4.0, {1, 2, 3, 0}}};
  }
  if (d == 3) return {{"2^(1/3)", std::cbrt(2.0), {1}}, {"2", 2.0, {1, 2, 3, 0}}};
  throw InputError("stability tables exist for d = 2 and d = 3");
}

std::string strategies_for(int d, double gamma_h) {
  std::vector<std::string> names;
  if (d == 2) {
    for (const auto& n : preset_names()) {
      if (n != "BiSecLG" && std::abs(preset_grading(n) - gamma_h) < 1e-12) names.push_back(n);
    }
  }
  const double alpha = d * std::log2(gamma_h);
  if (std::abs(alpha - std::round(alpha)) < 1e-9 && std::round(alpha) >= 1) {
    names.push_back("BiSecLG(" + std::to_string(static_cast<int>(std::round(alpha))) + ")");
  }
  std::string s;
  for (const auto& n : names) s += (s.empty() ? "" : ",") + n;
  return s.empty() ? "-" : s;
}

} // namespace

std::string table_stability_tsv(int d) {
  std::ostringstream os;
  os << "gamma_h\tgamma_h_value\tK\tLp\tW1p\tstrategies\n";
  for (const auto& row : table_rows(d)) {
    for (int K : row.degrees) {
      const Family f = K == 0 ? Family::lagrange_limit() : Family::lagrange(K);
      const auto lp = stability_range(d, f, row.value, 1.0, NormKind::Lp);
      const auto w1p = stability_range(d, f, row.value, 1.0, NormKind::W1p);
      os << row.label << '\t' << format4(row.value) << '\t' << f.name() << '\t' << lp.interval.to_string() << '\t'
         << w1p.interval.to_string() << '\t' << strategies_for(d, row.value) << '\n';
    }
  }
  return os.str();
}

std::string table_cr_tsv(int probe_limit) {
  const CrThresholds t = cr_dimension_thresholds(probe_limit);
  std::ostringstream os;
  os << "# lp_all_p_max_d=" << t.lp_all_p_max_d << '\n';
  os << "# w1p_all_p_max_d=" << t.w1p_all_p_max_d << '\n';
  os << "# w12_all_d_up_to_" << t.probe_limit << '=' << (t.w12_all_d ? "true" : "false") << '\n';
  os << "d\tgamma_max_bound\tLp_all_p\tW1p_all_p\tW12\n";
  for (int d = 2; d <= probe_limit; ++d) {
    const double g = gamma_max_bound(d, Family::crouzeix_raviart());
    os << d << '\t' << format4(g) << '\t' << (std::sqrt(2.0) < g ? 1 : 0) << '\t' << (std::pow(2.0, 1.0 / d + 0.5) < g ? 1 : 0)
       << '\t' << (std::pow(2.0, 1.0 / d) < g ? 1 : 0) << '\n';
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Volume sums

double volume_sum_max(const Mesh& mesh, const ElementDistance& dist, double g) {
  const auto& ids = dist.elements();
  const std::size_t n = ids.size();
  std::vector<double> vol(n);
  for (std::size_t i = 0; i < n; ++i) vol[i] = mesh.volume(ids[i]);
  std::vector<double> sums(n, 0.0);
  parallel_for(n, [&](std::size_t i) {
    const std::vector<int> row = dist.row(i);
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (row[j] != ElementDistance::kInfinity) s += vol[j] * std::pow(g, -row[j]);
    }
    sums[i] = s / vol[i];
  });
  return *std::max_element(sums.begin(), sums.end());
}

VolumeDecay volume_decay_constant(const Mesh& mesh, const ElementDistance& dist, double gamma, double gamma_h) {
  const int d = mesh.dim();
  if (!(gamma > std::pow(gamma_h, d))) throw InputError("volume_decay_constant: requires gamma > gamma_h^d");
  VolumeDecay out;
  out.max_sum = volume_sum_max(mesh, dist, gamma);
  out.factor = std::log(gamma_h) / std::log(gamma / std::pow(gamma_h, d));
  out.degenerate = gamma_h == 1.0;
  out.ratio = out.degenerate ? std::nan("") : out.max_sum / out.factor;
  return out;
}

// ---------------------------------------------------------------------------
// Weighted measurements

namespace {

double decay_q(const FeSpace& V) {
  return V.kind() == SpaceKind::CrouzeixRaviart ? q_from_kappa(kappa_bound(V)) : q_new(V.dim(), V.degree());
}

std::vector<double> powers(const std::vector<double>& v, double e) {
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = std::pow(v[i], e);
  return out;
}

void check_weight(const FeSpace& V, const Weight& w) {
  if (w.values.size() != V.num_elements()) throw InputError("weight must have one value per element of the space");
}

// Per fine element: position of its ancestor among the coarse elements.
std::vector<std::size_t> ancestor_positions(const FeSpace& coarse, const FeSpace& fine) {
  const Mesh& fm = fine.mesh();
  std::vector<char> is_coarse(fm.num_simplices_total(), 0);
  std::vector<int> pos(fm.num_simplices_total(), -1);
  for (std::size_t e = 0; e < coarse.num_elements(); ++e) {
    const auto id = static_cast<std::size_t>(coarse.elements()[e]);
    if (id >= is_coarse.size()) throw InputError("fine mesh is not a refinement of the coarse mesh");
    is_coarse[id] = 1;
    pos[id] = static_cast<int>(e);
  }
  std::vector<std::size_t> out(fine.num_elements());
  for (std::size_t e = 0; e < fine.num_elements(); ++e) {
    out[e] = static_cast<std::size_t>(pos[static_cast<std::size_t>(fm.ancestor_in(fine.elements()[e], is_coarse))]);
  }
  return out;
}

// || rho v ||_p for v given by local coefficients (broken layout), by quadrature.
double weighted_lp_norm(const FeSpace& V, const std::vector<double>& rho, const Eigen::VectorXd& broken, double p) {
  const auto& rule = simplex_rule(V.dim(), std::min(30, 2 * V.degree() + 4));
  const std::size_t n = V.local_size();
  double acc = 0.0;
  for (std::size_t e = 0; e < V.num_elements(); ++e) {
    const Eigen::VectorXd c = broken.segment(static_cast<Index>(e * n), static_cast<Index>(n));
    double loc = 0.0;
    for (std::size_t q = 0; q < rule.points.size(); ++q) {
      const double val = std::abs(V.local_values(e, rule.points[q]).dot(c));
      if (std::isinf(p)) loc = std::max(loc, val);
      else loc += rule.weights[q] * std::pow(val, p);
    }
    if (std::isinf(p)) {
      acc = std::max(acc, rho[e] * std::max(loc, c.cwiseAbs().maxCoeff())); // coefficients are point values
    } else {
      acc += std::pow(rho[e], p) * V.volume(e) * loc;
    }
  }
  return std::isinf(p) ? acc : std::pow(acc, 1.0 / p);
}

// || rho grad v ||_p (broken gradient), rho given per element of V.
double weighted_grad_norm(const FeSpace& V, const std::vector<double>& rho, const Eigen::VectorXd& broken, double p) {
  const auto& rule = simplex_rule(V.dim(), std::min(30, 2 * V.degree() + 2));
  const std::size_t n = V.local_size();
  double acc = 0.0;
  for (std::size_t e = 0; e < V.num_elements(); ++e) {
    const Eigen::VectorXd c = broken.segment(static_cast<Index>(e * n), static_cast<Index>(n));
    double loc = 0.0;
    for (std::size_t q = 0; q < rule.points.size(); ++q) {
      const double val = (V.local_gradients(e, rule.points[q]).transpose() * c).norm();
      if (std::isinf(p)) loc = std::max(loc, val);
      else loc += rule.weights[q] * std::pow(val, p);
    }
    if (std::isinf(p)) acc = std::max(acc, rho[e] * loc);
    else acc += std::pow(rho[e], p) * V.volume(e) * loc;
  }
  return std::isinf(p) ? acc : std::pow(acc, 1.0 / p);
}

std::vector<int> extreme_layer_elements(const Weight& w) {
  const Layers layers = layer_decomposition(w);
  std::vector<int> out;
  const auto& lo = layers.layers.begin()->second;
  const auto& hi = layers.layers.rbegin()->second;
  for (const auto* set : {&lo, &hi}) {
    for (std::size_t k = 0; k < set->size() && k < 8; ++k) out.push_back((*set)[k]);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

} // namespace

WeightedMeasurement weighted_l2_ratio(const FeSpace& V, const Weight& w) {
  check_weight(V, w);
  const auto r2 = powers(w.values, 2.0);
  const auto rm2 = powers(w.values, -2.0);
  const Eigen::MatrixXd A = to_dense(V.mass(&r2));
  const Eigen::MatrixXd M = to_dense(V.mass());
  const Eigen::MatrixXd W = to_dense(V.mass(&rm2));
  Eigen::LLT<Eigen::MatrixXd> llt(W);
  if (llt.info() != Eigen::Success) throw NumericalError("weighted_l2_ratio: weighted mass is singular");
  const Eigen::MatrixXd B = M * llt.solve(M);
  const auto ev = generalized_eigen(A, B, false);
  WeightedMeasurement out;
  out.measured = std::sqrt(std::max(0.0, ev.values(ev.values.size() - 1)));
  const double g = w.grading;
  const double q = decay_q(V);
  if (g * q < 1.0) out.bound = 6.0 * g * g * g / (1.0 - g * q);
  return out;
}

WeightedMeasurement weighted_gradient_ratio(const FeSpace& V, const Weight& w, const FeSpace& fine) {
  check_weight(V, w);
  const auto anc = ancestor_positions(V, fine);
  const auto r2 = powers(w.values, 2.0);
  std::vector<double> r2f(fine.num_elements());
  for (std::size_t e = 0; e < r2f.size(); ++e) r2f[e] = r2[anc[e]];
  const SparseMatrix X = mixed_mass(V, fine);
  const L2Projector Q(V);
  const Eigen::MatrixXd QX = Q.solver().solve(to_dense(X)); // coarse coefficients of Q b_n
  const Eigen::MatrixXd A = QX.transpose() * to_dense(V.stiffness(&r2)) * QX;
  Eigen::MatrixXd S = to_dense(fine.stiffness(&r2f));
  const Eigen::VectorXd m = fine.mass() * Eigen::VectorXd::Ones(static_cast<Index>(fine.num_dofs()));
  const double tau = S.diagonal().maxCoeff() / std::max(m.squaredNorm(), 1e-300);
  S += tau * m * m.transpose();
  const auto ev = generalized_eigen(A, S, false);
  WeightedMeasurement out;
  out.measured = std::sqrt(std::max(0.0, ev.values(ev.values.size() - 1)));
  return out;
}

WeightedMeasurement weighted_lp_ratio(const FeSpace& V, const Weight& w, double p, int samples, unsigned long long seed) {
  check_weight(V, w);
  if (!(p >= 1.0)) throw InputError("weighted_lp_ratio: p must be >= 1");
  const L2Projector Q(V);
  WeightedMeasurement out;
  out.exact = false;
  auto consider = [&](const Eigen::VectorXd& y) {
    const double den = weighted_lp_norm(V, w.values, y, p);
    if (den <= 0.0) return;
    const double num = weighted_lp_norm(V, w.values, V.to_broken(Q.project_broken(y)), p);
    out.measured = std::max(out.measured, num / den);
  };
  Rng rng(seed);
  for (int s = 0; s < samples; ++s) consider(random_broken(V, rng));
  const std::size_t n = V.local_size();
  for (int e : extreme_layer_elements(w)) {
    Eigen::VectorXd y = Eigen::VectorXd::Zero(static_cast<Index>(V.broken_size()));
    y.segment(static_cast<Index>(static_cast<std::size_t>(e) * n), static_cast<Index>(n)).setOnes();
    consider(y);
  }
  return out;
}

WeightedMeasurement weighted_w1p_ratio(const FeSpace& V, const Weight& w, const FeSpace& fine, double p, int samples,
                                       unsigned long long seed) {
  check_weight(V, w);
  if (!(p >= 1.0)) throw InputError("weighted_w1p_ratio: p must be >= 1");
  const auto anc = ancestor_positions(V, fine);
  std::vector<double> rf(fine.num_elements());
  for (std::size_t e = 0; e < rf.size(); ++e) rf[e] = w.values[anc[e]];
  const SparseMatrix X = mixed_mass(V, fine);
  const L2Projector Q(V);
  WeightedMeasurement out;
  out.exact = false;
  auto consider = [&](const Eigen::VectorXd& u) {
    const double den = weighted_grad_norm(fine, rf, fine.to_broken(u), p);
    if (den <= 0.0) return;
    const double num = weighted_grad_norm(V, w.values, V.to_broken(Q.solve(X * u)), p);
    out.measured = std::max(out.measured, num / den);
  };
  Rng rng(seed);
  for (int s = 0; s < samples; ++s) {
    Eigen::VectorXd u(static_cast<Index>(fine.num_dofs()));
    for (Index i = 0; i < u.size(); ++i) u(i) = standard_normal(rng);
    consider(u);
  }
  const auto extreme = extreme_layer_elements(w);
  std::vector<int> fine_elems;
  for (std::size_t e = 0; e < fine.num_elements(); ++e) {
    if (std::binary_search(extreme.begin(), extreme.end(), static_cast<int>(anc[e]))) fine_elems.push_back(static_cast<int>(e));
  }
  const auto dofs = fine.dofs_of_elements(fine_elems);
  for (std::size_t k = 0; k < dofs.size() && k < 32; ++k) {
    Eigen::VectorXd u = Eigen::VectorXd::Zero(static_cast<Index>(fine.num_dofs()));
    u(dofs[k]) = 1.0;
    consider(u);
  }
  return out;
}

} // namespace gp
