#include "gp/projection.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include <json.hpp>

#include "gp/error.hpp"
#include "gp/parallel.hpp"
#include "gp/quadrature.hpp"
#include "gp/reference_element.hpp"

namespace gp {

using Triplet = Eigen::Triplet<double>;
using Eigen::Index;

double q_new(int d, int K) {
  if (d < 1 || K < 1) throw InputError("q_new: d and K must be positive");
  const double a = std::sqrt(2.0 * K + d);
  const double b = std::sqrt(static_cast<double>(K));
  return (a - b) / (a + b);
}

double q_new_limit() { return (std::sqrt(2.0) - 1.0) / (std::sqrt(2.0) + 1.0); }

double q_from_kappa(double kappa) {
  const double s = std::sqrt(kappa);
  return (s - 1.0) / (s + 1.0);
}

double kappa_bound(const FeSpace& V) {
  const double d = V.dim();
  if (V.kind() == SpaceKind::CrouzeixRaviart) return d * d / (d + 2.0);
  return (2.0 * V.degree() + d) / V.degree();
}

std::pair<double, double> spectral_interval(const FeSpace& V) {
  const double d = V.dim();
  if (V.kind() == SpaceKind::CrouzeixRaviart) {
    const double n = d * d - d + 2.0;
    return {std::min(d + 2.0, d * d) / n, std::max(d + 2.0, d * d) / n};
  }
  return {V.degree() / (2.0 * V.degree() + d), 1.0};
}

double mass_norm(const SparseMatrix& M, const Eigen::VectorXd& x) { return std::sqrt(std::max(0.0, x.dot(M * x))); }

Eigen::VectorXd random_broken(const FeSpace& V, Rng& rng, const std::vector<int>& elems) {
  Eigen::VectorXd y = Eigen::VectorXd::Zero(static_cast<Index>(V.broken_size()));
  const std::size_t n = V.local_size();
  auto fill = [&](std::size_t e) {
    for (std::size_t a = 0; a < n; ++a) y(static_cast<Index>(e * n + a)) = standard_normal(rng);
  };
  if (elems.empty()) {
    for (std::size_t e = 0; e < V.num_elements(); ++e) fill(e);
  } else {
    for (int e : elems) fill(static_cast<std::size_t>(e));
  }
  return y;
}

// ---------------------------------------------------------------------------
// L2Projector

L2Projector::L2Projector(const FeSpace& V) : V_(&V), M_(V.mass()), L_(V.broken_rhs()) {
  if (V.num_dofs() == 0) throw InputError("L2Projector: the space has no degrees of freedom");
  solver_ = std::make_unique<SpdSolver>(M_);
}

Eigen::VectorXd L2Projector::solve(const Eigen::VectorXd& rhs) const { return solver_->solve(rhs); }

Eigen::VectorXd L2Projector::project_broken(const Eigen::VectorXd& y) const { return solve(L_ * y); }

Eigen::VectorXd L2Projector::project_polynomials(const std::vector<BarycentricPoly>& u) const {
  if (u.size() != V_->num_elements()) throw InputError("project_polynomials: one polynomial per element required");
  const auto& basis = V_->local_basis();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(static_cast<Index>(V_->num_dofs()));
  for (std::size_t e = 0; e < u.size(); ++e) {
    for (std::size_t a = 0; a < V_->local_size(); ++a) {
      const int g = V_->local_dof(e, a);
      if (g >= 0) rhs(g) += V_->volume(e) * to_double(mean_product(basis[a], u[e]));
    }
  }
  return solve(rhs);
}

Eigen::VectorXd L2Projector::project_function(const std::function<double(const std::vector<double>&)>& f) const {
  const Mesh& mesh = V_->mesh();
  const int d = mesh.dim();
  const auto& rule = simplex_rule(d, 2 * V_->degree() + 2);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(static_cast<Index>(V_->num_dofs()));
  for (std::size_t e = 0; e < V_->num_elements(); ++e) {
    const auto& verts = mesh.simplex(V_->elements()[e]).v;
    std::vector<std::vector<double>> xv;
    for (int v : verts) xv.push_back(mesh.vertex_double(v));
    for (std::size_t q = 0; q < rule.points.size(); ++q) {
      const auto& lam = rule.points[q];
      std::vector<double> x(static_cast<std::size_t>(d), 0.0);
      for (int j = 0; j <= d; ++j) {
        for (int k = 0; k < d; ++k) x[static_cast<std::size_t>(k)] += lam[static_cast<std::size_t>(j)] * xv[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
      }
      const double w = rule.weights[q] * V_->volume(e) * f(x);
      const Eigen::VectorXd phi = V_->local_values(e, lam);
      for (std::size_t a = 0; a < V_->local_size(); ++a) {
        const int g = V_->local_dof(e, a);
        if (g >= 0) rhs(g) += w * phi(static_cast<Index>(a));
      }
    }
  }
  return solve(rhs);
}

Eigen::VectorXd L2Projector::project_fine(const FeSpace& fine, const Eigen::VectorXd& u) const {
  return solve(mixed_mass(*V_, fine) * u);
}

// ---------------------------------------------------------------------------
// ApproxOperator

namespace {

struct PatchBlocks {
  std::vector<Triplet> c;
  std::vector<Triplet> b;
  std::vector<Triplet> cb;
};

void assemble_patch(const FeSpace& V, int vertex, const std::vector<std::pair<std::size_t, int>>& patch,
                    const std::set<std::vector<int>>& gsub, PatchBlocks& out) {
  const Mesh& mesh = V.mesh();
  const int d = V.dim();
  const int K = V.degree();
  const auto& re = reference_element(d, K);
  const std::size_t nloc = re.size();

  // Patch (K-1)-nodes, excluding those whose weighted function would violate the trace constraint.
  std::map<NodeKey, int> pidx;
  std::vector<std::vector<int>> lower_map(patch.size());
  for (std::size_t p = 0; p < patch.size(); ++p) {
    const auto& verts = mesh.simplex(V.elements()[patch[p].first]).v;
    for (const auto& b : re.lower_nodes) {
      const NodeKey key = node_key(verts, b);
      if (V.zero_trace()) {
        std::vector<int> s{vertex};
        for (const auto& kv : key) s.push_back(kv.first);
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        if (gsub.count(s) != 0) {
          lower_map[p].push_back(-1);
          continue;
        }
      }
      auto it = pidx.emplace(key, static_cast<int>(pidx.size())).first;
      lower_map[p].push_back(it->second);
    }
  }
  const auto np = static_cast<Index>(pidx.size());
  if (np == 0) return;

  // Global dofs touched by the patch.
  std::map<int, int> gidx;
  for (const auto& [e, j] : patch) {
    for (std::size_t a = 0; a < nloc; ++a) {
      const int g = V.local_dof(e, a);
      if (g >= 0) gidx.emplace(g, static_cast<int>(gidx.size()));
    }
  }
  const auto ng = static_cast<Index>(gidx.size());

  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(np, np);
  Eigen::MatrixXd Rt = Eigen::MatrixXd::Zero(np, static_cast<Index>(patch.size() * nloc));
  Eigen::MatrixXd R = Eigen::MatrixXd::Zero(np, ng);
  Eigen::MatrixXd E = Eigen::MatrixXd::Zero(ng, np);
  for (std::size_t p = 0; p < patch.size(); ++p) {
    const auto [e, j] = patch[p];
    const double vol = V.volume(e);
    const auto& W = re.weighted_lower[static_cast<std::size_t>(j)];
    const auto& X = re.cross[static_cast<std::size_t>(j)];
    const auto& Lf = re.lift[static_cast<std::size_t>(j)];
    const auto& lm = lower_map[p];
    for (std::size_t b = 0; b < lm.size(); ++b) {
      if (lm[b] < 0) continue;
      for (std::size_t c = 0; c < lm.size(); ++c) {
        if (lm[c] >= 0) A(lm[b], lm[c]) += vol * W(static_cast<Index>(b), static_cast<Index>(c));
      }
      for (std::size_t a = 0; a < nloc; ++a) {
        const double x = vol * X(static_cast<Index>(b), static_cast<Index>(a));
        Rt(lm[b], static_cast<Index>(p * nloc + a)) = x;
        const int g = V.local_dof(e, a);
        if (g < 0) continue;
        const int gl = gidx.at(g);
        R(lm[b], gl) += x;
        E(gl, lm[b]) = Lf(static_cast<Index>(a), static_cast<Index>(b));
      }
    }
  }
  Eigen::LLT<Eigen::MatrixXd> llt(A);
  if (llt.info() != Eigen::Success) throw NumericalError("operator C: singular local system at vertex " + std::to_string(vertex));
  const Eigen::MatrixXd AiR = llt.solve(R);
  const Eigen::MatrixXd AiRt = llt.solve(Rt);
  const Eigen::MatrixXd C = E * AiR;
  const Eigen::MatrixXd B = R.transpose() * AiR;
  const Eigen::MatrixXd Cb = E * AiRt;
  std::vector<int> gl(static_cast<std::size_t>(ng));
  for (const auto& [g, l] : gidx) gl[static_cast<std::size_t>(l)] = g;
  for (Index r = 0; r < ng; ++r) {
    for (Index s = 0; s < ng; ++s) {
      if (C(r, s) != 0.0) out.c.emplace_back(gl[static_cast<std::size_t>(r)], gl[static_cast<std::size_t>(s)], C(r, s));
      if (B(r, s) != 0.0) out.b.emplace_back(gl[static_cast<std::size_t>(r)], gl[static_cast<std::size_t>(s)], B(r, s));
    }
    for (std::size_t p = 0; p < patch.size(); ++p) {
      for (std::size_t a = 0; a < nloc; ++a) {
        const double v = Cb(r, static_cast<Index>(p * nloc + a));
        if (v != 0.0) out.cb.emplace_back(gl[static_cast<std::size_t>(r)], static_cast<int>(patch[p].first * nloc + a), v);
      }
    }
  }
}

} // namespace

ApproxOperator::ApproxOperator(const FeSpace& V) : V_(&V), M_(V.mass()) {
  const auto n = static_cast<Index>(V.num_dofs());
  if (n == 0) throw InputError("ApproxOperator: the space has no degrees of freedom");
  if (V.kind() == SpaceKind::CrouzeixRaviart) {
    const Eigen::VectorXd dinv = M_.diagonal().cwiseInverse();
    C_ = dinv.asDiagonal() * M_;
    B_ = M_ * C_;
    Cb_ = dinv.asDiagonal() * V.broken_rhs();
    patches_ = V.num_dofs();
    return;
  }
  const Mesh& mesh = V.mesh();
  std::map<int, std::vector<std::pair<std::size_t, int>>> by_vertex;
  for (std::size_t e = 0; e < V.num_elements(); ++e) {
    const auto& verts = mesh.simplex(V.elements()[e]).v;
    for (std::size_t j = 0; j < verts.size(); ++j) by_vertex[verts[j]].emplace_back(e, static_cast<int>(j));
  }
  std::vector<std::pair<int, std::vector<std::pair<std::size_t, int>>>> patches(by_vertex.begin(), by_vertex.end());
  patches_ = patches.size();
  const auto gsub = V.zero_trace() ? gamma_subsets(mesh) : std::set<std::vector<int>>{};
  std::vector<PatchBlocks> blocks(patches.size());
  parallel_for(patches.size(), [&](std::size_t k) { assemble_patch(V, patches[k].first, patches[k].second, gsub, blocks[k]); });
  std::vector<Triplet> c;
  std::vector<Triplet> b;
  std::vector<Triplet> cb;
  for (const auto& blk : blocks) {
    c.insert(c.end(), blk.c.begin(), blk.c.end());
    b.insert(b.end(), blk.b.begin(), blk.b.end());
    cb.insert(cb.end(), blk.cb.begin(), blk.cb.end());
  }
  C_.resize(n, n);
  C_.setFromTriplets(c.begin(), c.end());
  B_.resize(n, n);
  B_.setFromTriplets(b.begin(), b.end());
  Cb_.resize(n, static_cast<Index>(V.broken_size()));
  Cb_.setFromTriplets(cb.begin(), cb.end());
}

SparseMatrix ApproxOperator::form_via_mass() const { return M_ * C_; }

// ---------------------------------------------------------------------------
// Certification

SpectralCertificate certify_condition(const FeSpace& V, const std::string& mesh_id, std::size_t dense_limit) {
  const ApproxOperator C(V);
  const SparseMatrix M = V.mass();
  SpectralCertificate cert;
  cert.d = V.dim();
  if (V.kind() == SpaceKind::CrouzeixRaviart) {
    cert.element = "CR";
  } else {
    cert.element = "K=" + std::to_string(V.degree()) + (V.zero_trace() ? ",Gamma" : "");
  }
  cert.mesh = mesh_id;
  cert.dofs = V.num_dofs();
  cert.bound_kappa = kappa_bound(V);
  if (V.num_dofs() <= dense_limit) {
    const auto ev = generalized_eigen(to_dense(C.form()), to_dense(M), true);
    cert.lambda_min = ev.values(0);
    cert.lambda_max = ev.values(ev.values.size() - 1);
    cert.residual = ev.residual;
    cert.method = "dense";
  } else {
    const auto ex = lanczos_extremes([&](const Eigen::VectorXd& x) { return Eigen::VectorXd(C.matrix() * x); },
                                     [&](const Eigen::VectorXd& x) { return Eigen::VectorXd(M * x); }, V.num_dofs());
    cert.lambda_min = ex.min;
    cert.lambda_max = ex.max;
    cert.residual = ex.residual;
    cert.method = ex.method;
  }
  if (!(cert.lambda_min > 0.0)) throw NumericalError("certify_condition: operator is not positive definite");
  cert.kappa = cert.lambda_max / cert.lambda_min;
  cert.q = q_from_kappa(cert.kappa);
  return cert;
}

std::string to_json(const SpectralCertificate& c, int indent) {
  nlohmann::ordered_json j;
  j["d"] = c.d;
  if (c.element == "CR") {
    j["K"] = "CR";
  } else {
    j["K"] = c.element;
  }
  j["mesh"] = c.mesh;
  j["dofs"] = c.dofs;
  j["lambda_min"] = c.lambda_min;
  j["lambda_max"] = c.lambda_max;
  j["kappa"] = c.kappa;
  j["q"] = c.q;
  j["bound_kappa"] = c.bound_kappa;
  j["residual"] = c.residual;
  j["method"] = c.method;
  j["within_bound"] = c.within_bound();
  return j.dump(indent);
}

IdentityCheck check_two_sided_identity(const ApproxOperator& C, const L2Projector& Q, int samples, unsigned long long seed) {
  IdentityCheck out;
  const FeSpace& V = C.space();
  const SparseMatrix& M = Q.mass();
  Rng rng(seed);
  for (int s = 0; s < samples; ++s) {
    const Eigen::VectorXd y = random_broken(V, rng);
    const Eigen::VectorXd cu = C.apply_broken(y);
    const Eigen::VectorXd cqu = C.apply(Q.project_broken(y));
    const Eigen::VectorXd qcu = Q.solve(M * cu);
    const double n = mass_norm(M, cu);
    if (n == 0.0) continue;
    out.cq_defect = std::max(out.cq_defect, mass_norm(M, cu - cqu) / n);
    out.qc_defect = std::max(out.qc_defect, mass_norm(M, qcu - cu) / n);
  }
  out.symmetry = symmetry_defect(C.form());
  const SparseMatrix diff = C.form() - C.form_via_mass();
  out.form_defect = diff.norm() / C.form().norm();
  return out;
}

// ---------------------------------------------------------------------------
// Accelerated iteration

std::vector<Eigen::VectorXd> accelerated_iterates(const ApproxOperator& C, const Eigen::VectorXd& u_broken, int nu_max,
                                                  IterationKind kind, std::pair<double, double> interval) {
  if (nu_max < 0) throw InputError("accelerated_iterates: nu must be nonnegative");
  const auto [a, b] = interval;
  if (!(a > 0.0) || b < a) throw InputError("accelerated_iterates: invalid spectral interval");
  const Eigen::VectorXd f = C.apply_broken(u_broken);
  std::vector<Eigen::VectorXd> out;
  Eigen::VectorXd x = Eigen::VectorXd::Zero(f.size());
  out.push_back(x);
  if (nu_max == 0) return out;
  if (kind == IterationKind::Richardson) {
    for (int k = 0; k < nu_max; ++k) {
      x += f - C.apply(x);
      out.push_back(x);
    }
    return out;
  }
  const double theta = 0.5 * (b + a);
  const double delta = 0.5 * (b - a);
  Eigen::VectorXd r = f;
  Eigen::VectorXd dir = r / theta;
  if (delta == 0.0) {
    for (int k = 0; k < nu_max; ++k) {
      x += dir;
      r -= C.apply(dir);
      dir = r / theta;
      out.push_back(x);
    }
    return out;
  }
  const double sigma = theta / delta;
  double rho = 1.0 / sigma;
  for (int k = 0; k < nu_max; ++k) {
    x += dir;
    r -= C.apply(dir);
    out.push_back(x);
    const double rho_next = 1.0 / (2.0 * sigma - rho);
    dir = (rho_next * rho) * dir + (2.0 * rho_next / delta) * r;
    rho = rho_next;
  }
  return out;
}

std::vector<Eigen::VectorXd> accelerated_iterates(const ApproxOperator& C, const Eigen::VectorXd& u_broken, int nu_max,
                                                  IterationKind kind) {
  return accelerated_iterates(C, u_broken, nu_max, kind, spectral_interval(C.space()));
}

double chebyshev_bound(double q, int nu) {
  const double qn = std::pow(q, nu);
  return 2.0 * qn / (1.0 + qn * qn);
}

double decay_bound(double q, int delta) {
  if (delta <= 1) return 1.0;
  return std::min(chebyshev_bound(q, delta - 1), 1.0);
}

// ---------------------------------------------------------------------------
// Decay

namespace {

Eigen::MatrixXd sub_block(const SparseMatrix& m, const std::vector<int>& rows, const std::vector<int>& cols) {
  Eigen::MatrixXd out(static_cast<Index>(rows.size()), static_cast<Index>(cols.size()));
  std::vector<int> cpos(static_cast<std::size_t>(m.cols()), -1);
  for (std::size_t c = 0; c < cols.size(); ++c) cpos[static_cast<std::size_t>(cols[c])] = static_cast<int>(c);
  std::vector<int> rpos(static_cast<std::size_t>(m.rows()), -1);
  for (std::size_t r = 0; r < rows.size(); ++r) rpos[static_cast<std::size_t>(rows[r])] = static_cast<int>(r);
  out.setZero();
  for (int k = 0; k < m.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(m, k); it; ++it) {
      const int r = rpos[static_cast<std::size_t>(it.row())];
      const int c = cpos[static_cast<std::size_t>(it.col())];
      if (r >= 0 && c >= 0) out(r, c) = it.value();
    }
  }
  return out;
}

} // namespace

DecayMeasurement measure_decay(const L2Projector& Q, const ElementDistance& dist, const std::vector<int>& L, const std::vector<int>& Lp,
                               int trials, unsigned long long seed) {
  if (L.empty() || Lp.empty()) throw InputError("measure_decay: element sets must be nonempty");
  const FeSpace& V = Q.space();
  DecayMeasurement out;
  out.delta = dist.set_distance(L, Lp);
  const double q = V.kind() == SpaceKind::CrouzeixRaviart ? q_from_kappa(kappa_bound(V)) : q_new(V.dim(), V.degree());
  out.bound = out.delta == ElementDistance::kInfinity ? 0.0 : decay_bound(q, out.delta);

  const std::vector<int> dl = V.dofs_of_elements(L);
  const std::vector<int> dlp = V.dofs_of_elements(Lp);
  if (dl.empty() || dlp.empty()) return out;
  const SparseMatrix ML = V.mass_on(L);
  const SparseMatrix MLp = V.mass_on(Lp);
  const Eigen::MatrixXd mlp = sub_block(MLp, dlp, dlp);
  Eigen::LLT<Eigen::MatrixXd> llt(mlp);
  if (llt.info() != Eigen::Success) throw NumericalError("measure_decay: restricted mass is singular");
  const Eigen::MatrixXd P = llt.matrixL();
  Eigen::MatrixXd unit = Eigen::MatrixXd::Zero(static_cast<Index>(V.num_dofs()), static_cast<Index>(dlp.size()));
  for (std::size_t c = 0; c < dlp.size(); ++c) unit(dlp[c], static_cast<Index>(c)) = 1.0;
  const Eigen::MatrixXd Finv = Q.solver().solve(unit);
  Eigen::MatrixXd F(static_cast<Index>(dl.size()), static_cast<Index>(dlp.size()));
  for (std::size_t r = 0; r < dl.size(); ++r) F.row(static_cast<Index>(r)) = Finv.row(dl[r]);
  const Eigen::MatrixXd ml = sub_block(ML, dl, dl);
  const Eigen::MatrixXd FP = F * P;
  const Eigen::MatrixXd G = FP.transpose() * ml * FP;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (G + G.transpose()), Eigen::EigenvaluesOnly);
  out.exact = std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));

  const SparseMatrix BM = V.broken_mass();
  Rng rng(seed);
  for (int t = 0; t < trials; ++t) {
    const Eigen::VectorXd y = random_broken(V, rng, Lp);
    const Eigen::VectorXd x = Q.project_broken(y);
    const double den = mass_norm(BM, y);
    if (den > 0.0) out.sampled = std::max(out.sampled, mass_norm(ML, x) / den);
  }
  return out;
}

} // namespace gp
