#include "gp/fe_space.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "gp/error.hpp"
#include "gp/reference_element.hpp"

namespace gp {

namespace {

using Triplet = Eigen::Triplet<double>;

std::vector<int> key_vertices(const NodeKey& key) {
  std::vector<int> v;
  for (const auto& [vert, m] : key) v.push_back(vert);
  return v;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

} // namespace

NodeKey node_key(const std::vector<int>& verts, const MultiIndex& mult) {
  NodeKey key;
  for (std::size_t j = 0; j < verts.size(); ++j) {
    if (mult[j] > 0) key.emplace_back(verts[j], mult[j]);
  }
  std::sort(key.begin(), key.end());
  return key;
}

std::set<std::vector<int>> gamma_subsets(const Mesh& mesh) {
  std::set<std::vector<int>> subs;
  for (const auto& f : mesh.gamma()) {
    const unsigned n = 1u << f.size();
    for (unsigned m = 1; m < n; ++m) {
      std::vector<int> s;
      for (std::size_t i = 0; i < f.size(); ++i) {
        if (m & (1u << i)) s.push_back(f[i]);
      }
      subs.insert(std::move(s));
    }
  }
  return subs;
}

bool on_gamma(const Mesh& mesh, std::vector<int> verts) {
  if (verts.empty()) return false;
  std::sort(verts.begin(), verts.end());
  for (const auto& f : mesh.gamma()) {
    if (std::includes(f.begin(), f.end(), verts.begin(), verts.end())) return true;
  }
  return false;
}

FeSpace FeSpace::lagrange(const Mesh& mesh, int K, bool zero_trace) {
  const auto& re = reference_element(mesh.dim(), K);
  FeSpace V;
  V.mesh_ = &mesh;
  V.kind_ = SpaceKind::Lagrange;
  V.K_ = K;
  V.zero_trace_ = zero_trace;
  V.elements_ = mesh.active();
  V.nloc_ = re.size();
  V.l2g_.assign(V.elements_.size() * V.nloc_, -1);
  const auto gsub = zero_trace ? gamma_subsets(mesh) : std::set<std::vector<int>>{};
  std::map<NodeKey, int> index;
  for (std::size_t e = 0; e < V.elements_.size(); ++e) {
    const auto& verts = mesh.simplex(V.elements_[e]).v;
    for (std::size_t a = 0; a < V.nloc_; ++a) {
      NodeKey key = node_key(verts, re.nodes[a]);
      if (zero_trace && gsub.count(key_vertices(key)) != 0) continue;
      auto [it, inserted] = index.emplace(key, static_cast<int>(V.keys_.size()));
      if (inserted) V.keys_.push_back(key);
      V.l2g_[e * V.nloc_ + a] = it->second;
    }
  }
  V.ndofs_ = V.keys_.size();
  for (int id : V.elements_) V.grads_.push_back(mesh.barycentric_gradients(id));
  return V;
}

FeSpace FeSpace::crouzeix_raviart(const Mesh& mesh) {
  FeSpace V;
  V.mesh_ = &mesh;
  V.kind_ = SpaceKind::CrouzeixRaviart;
  V.K_ = 1;
  V.elements_ = mesh.active();
  const int d = mesh.dim();
  V.nloc_ = static_cast<std::size_t>(d) + 1;
  V.l2g_.assign(V.elements_.size() * V.nloc_, -1);
  std::map<Face, int> index;
  for (std::size_t e = 0; e < V.elements_.size(); ++e) {
    const auto& verts = mesh.simplex(V.elements_[e]).v;
    for (std::size_t j = 0; j < V.nloc_; ++j) {
      Face f;
      for (std::size_t r = 0; r < verts.size(); ++r) {
        if (r != j) f.push_back(verts[r]);
      }
      std::sort(f.begin(), f.end());
      auto [it, inserted] = index.emplace(f, static_cast<int>(V.ndofs_));
      if (inserted) ++V.ndofs_;
      V.l2g_[e * V.nloc_ + j] = it->second;
    }
  }
  for (int id : V.elements_) V.grads_.push_back(mesh.barycentric_gradients(id));
  V.cr_basis_ = cr_basis(d);
  return V;
}

std::string FeSpace::describe() const {
  std::ostringstream os;
  if (kind_ == SpaceKind::CrouzeixRaviart) {
    os << "CR";
  } else {
    os << "P" << K_ << (zero_trace_ ? "_Gamma" : "");
  }
  os << " d=" << dim() << " elements=" << elements_.size() << " dofs=" << ndofs_;
  return os.str();
}

double FeSpace::volume(std::size_t e) const { return mesh_->volume(elements_[e]); }

const std::vector<BarycentricPoly>& FeSpace::local_basis() const {
  if (kind_ == SpaceKind::CrouzeixRaviart) return cr_basis_;
  return reference_element(dim(), K_).basis;
}

Eigen::MatrixXd FeSpace::local_mass(std::size_t e) const {
  const double vol = volume(e);
  if (kind_ == SpaceKind::CrouzeixRaviart) {
    const int d = dim();
    Eigen::MatrixXd m(d + 1, d + 1);
    for (int i = 0; i <= d; ++i) {
      for (int j = 0; j <= d; ++j) m(i, j) = vol * (2.0 - d + (i == j ? d * d : 0)) / ((d + 2.0) * (d + 1.0));
    }
    return m;
  }
  return vol * reference_element(dim(), K_).mass;
}

Eigen::MatrixXd FeSpace::local_stiffness(std::size_t e) const {
  const double vol = volume(e);
  const int d = dim();
  const auto& g = grads_[e];
  if (kind_ == SpaceKind::CrouzeixRaviart) {
    Eigen::MatrixXd s(d + 1, d + 1);
    for (int i = 0; i <= d; ++i) {
      for (int j = 0; j <= d; ++j) s(i, j) = vol * d * d * dot(g[static_cast<std::size_t>(i)], g[static_cast<std::size_t>(j)]);
    }
    return s;
  }
  const auto& re = reference_element(d, K_);
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(nloc_), static_cast<Eigen::Index>(nloc_));
  for (int j = 0; j <= d; ++j) {
    for (int l = 0; l <= d; ++l) {
      s += dot(g[static_cast<std::size_t>(j)], g[static_cast<std::size_t>(l)]) * re.grad_products[static_cast<std::size_t>(j * (d + 1) + l)];
    }
  }
  return vol * s;
}

Eigen::VectorXd FeSpace::local_values(std::size_t /*e*/, const std::vector<double>& lambda) const {
  const auto& basis = local_basis();
  Eigen::VectorXd v(static_cast<Eigen::Index>(basis.size()));
  for (std::size_t a = 0; a < basis.size(); ++a) v(static_cast<Eigen::Index>(a)) = basis[a].evaluate(lambda);
  return v;
}

Eigen::MatrixXd FeSpace::local_gradients(std::size_t e, const std::vector<double>& lambda) const {
  const int d = dim();
  const auto& g = grads_[e];
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(nloc_), d);
  for (std::size_t a = 0; a < nloc_; ++a) {
    for (int j = 0; j <= d; ++j) {
      double dj;
      if (kind_ == SpaceKind::CrouzeixRaviart) {
        dj = (static_cast<int>(a) == j) ? -static_cast<double>(d) : 0.0;
      } else {
        dj = reference_element(d, K_).derivatives[static_cast<std::size_t>(j)][a].evaluate(lambda);
      }
      for (int k = 0; k < d; ++k) out(static_cast<Eigen::Index>(a), k) += dj * g[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
    }
  }
  return out;
}

SparseMatrix FeSpace::mass(const std::vector<double>* weights) const {
  std::vector<Triplet> trip;
  trip.reserve(elements_.size() * nloc_ * nloc_);
  for (std::size_t e = 0; e < elements_.size(); ++e) {
    const Eigen::MatrixXd m = local_mass(e) * (weights ? (*weights)[e] : 1.0);
    for (std::size_t a = 0; a < nloc_; ++a) {
      const int ga = local_dof(e, a);
      if (ga < 0) continue;
      for (std::size_t b = 0; b < nloc_; ++b) {
        const int gb = local_dof(e, b);
        if (gb >= 0) trip.emplace_back(ga, gb, m(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)));
      }
    }
  }
  SparseMatrix M(static_cast<Eigen::Index>(ndofs_), static_cast<Eigen::Index>(ndofs_));
  M.setFromTriplets(trip.begin(), trip.end());
  return M;
}

SparseMatrix FeSpace::mass_on(const std::vector<int>& elems) const {
  std::vector<double> w(elements_.size(), 0.0);
  for (int e : elems) w[static_cast<std::size_t>(e)] = 1.0;
  SparseMatrix M = mass(&w);
  M.prune(0.0);
  return M;
}

SparseMatrix FeSpace::stiffness(const std::vector<double>* weights) const {
  std::vector<Triplet> trip;
  for (std::size_t e = 0; e < elements_.size(); ++e) {
    const Eigen::MatrixXd s = local_stiffness(e) * (weights ? (*weights)[e] : 1.0);
    for (std::size_t a = 0; a < nloc_; ++a) {
      const int ga = local_dof(e, a);
      if (ga < 0) continue;
      for (std::size_t b = 0; b < nloc_; ++b) {
        const int gb = local_dof(e, b);
        if (gb >= 0) trip.emplace_back(ga, gb, s(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)));
      }
    }
  }
  SparseMatrix S(static_cast<Eigen::Index>(ndofs_), static_cast<Eigen::Index>(ndofs_));
  S.setFromTriplets(trip.begin(), trip.end());
  return S;
}

SparseMatrix FeSpace::broken_rhs() const {
  std::vector<Triplet> trip;
  for (std::size_t e = 0; e < elements_.size(); ++e) {
    const Eigen::MatrixXd m = local_mass(e);
    for (std::size_t b = 0; b < nloc_; ++b) {
      const int gb = local_dof(e, b);
      if (gb < 0) continue;
      for (std::size_t a = 0; a < nloc_; ++a) trip.emplace_back(gb, static_cast<int>(e * nloc_ + a), m(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(a)));
    }
  }
  SparseMatrix L(static_cast<Eigen::Index>(ndofs_), static_cast<Eigen::Index>(broken_size()));
  L.setFromTriplets(trip.begin(), trip.end());
  return L;
}

SparseMatrix FeSpace::broken_mass(const std::vector<double>* weights) const {
  std::vector<Triplet> trip;
  for (std::size_t e = 0; e < elements_.size(); ++e) {
    const Eigen::MatrixXd m = local_mass(e) * (weights ? (*weights)[e] : 1.0);
    for (std::size_t a = 0; a < nloc_; ++a) {
      for (std::size_t b = 0; b < nloc_; ++b) {
        trip.emplace_back(static_cast<int>(e * nloc_ + a), static_cast<int>(e * nloc_ + b), m(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)));
      }
    }
  }
  SparseMatrix B(static_cast<Eigen::Index>(broken_size()), static_cast<Eigen::Index>(broken_size()));
  B.setFromTriplets(trip.begin(), trip.end());
  return B;
}

Eigen::VectorXd FeSpace::to_broken(const Eigen::VectorXd& x) const {
  Eigen::VectorXd y = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(broken_size()));
  for (std::size_t i = 0; i < l2g_.size(); ++i) {
    if (l2g_[i] >= 0) y(static_cast<Eigen::Index>(i)) = x(l2g_[i]);
  }
  return y;
}

std::vector<int> FeSpace::support(const Eigen::VectorXd& x) const {
  std::vector<int> out;
  for (std::size_t e = 0; e < elements_.size(); ++e) {
    for (std::size_t a = 0; a < nloc_; ++a) {
      const int g = local_dof(e, a);
      if (g >= 0 && x(g) != 0.0) {
        out.push_back(static_cast<int>(e));
        break;
      }
    }
  }
  return out;
}

std::vector<int> FeSpace::dofs_of_elements(const std::vector<int>& elems) const {
  std::vector<int> out;
  for (int e : elems) {
    for (std::size_t a = 0; a < nloc_; ++a) {
      const int g = local_dof(static_cast<std::size_t>(e), a);
      if (g >= 0) out.push_back(g);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<double> node_coordinates(const FeSpace& V, std::size_t e, std::size_t a) {
  const Mesh& m = V.mesh();
  const auto& verts = m.simplex(V.elements()[e]).v;
  const int d = m.dim();
  std::vector<double> lam(static_cast<std::size_t>(d) + 1, 0.0);
  if (V.kind() == SpaceKind::CrouzeixRaviart) {
    for (int j = 0; j <= d; ++j) lam[static_cast<std::size_t>(j)] = (static_cast<std::size_t>(j) == a) ? 0.0 : 1.0 / d;
  } else {
    const auto& node = reference_element(d, V.degree()).nodes[a];
    for (int j = 0; j <= d; ++j) lam[static_cast<std::size_t>(j)] = static_cast<double>(node[static_cast<std::size_t>(j)]) / V.degree();
  }
  std::vector<double> x(static_cast<std::size_t>(d), 0.0);
  for (int j = 0; j <= d; ++j) {
    const auto p = m.vertex_double(verts[static_cast<std::size_t>(j)]);
    for (int k = 0; k < d; ++k) x[static_cast<std::size_t>(k)] += lam[static_cast<std::size_t>(j)] * p[static_cast<std::size_t>(k)];
  }
  return x;
}

Eigen::VectorXd FeSpace::interpolate(const std::function<double(const std::vector<double>&)>& f) const {
  Eigen::VectorXd x = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(ndofs_));
  std::vector<char> done(ndofs_, 0);
  for (std::size_t e = 0; e < elements_.size(); ++e) {
    for (std::size_t a = 0; a < nloc_; ++a) {
      const int g = local_dof(e, a);
      if (g < 0 || done[static_cast<std::size_t>(g)]) continue;
      x(g) = f(node_coordinates(*this, e, a));
      done[static_cast<std::size_t>(g)] = 1;
    }
  }
  return x;
}

std::vector<double> barycentric_of(const Mesh& mesh, int id, const std::vector<double>& x) {
  const auto g = mesh.barycentric_gradients(id);
  const auto& v = mesh.simplex(id).v;
  const int d = mesh.dim();
  std::vector<double> lam(static_cast<std::size_t>(d) + 1);
  // lambda_j is affine and equals 1 at vertex j.
  for (int j = 0; j <= d; ++j) {
    const auto xj = mesh.vertex_double(v[static_cast<std::size_t>(j)]);
    double s = 1.0;
    for (int k = 0; k < d; ++k) s += g[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] * (x[static_cast<std::size_t>(k)] - xj[static_cast<std::size_t>(k)]);
    lam[static_cast<std::size_t>(j)] = s;
  }
  return lam;
}

namespace {

// For fine element ef: coarse element index and the matrix P with
// P(a,m) = value of coarse local basis m at fine local node a.
struct FineToCoarse {
  std::size_t coarse_element;
  Eigen::MatrixXd P;
};

FineToCoarse fine_to_coarse(const FeSpace& coarse, const FeSpace& fine, std::size_t ef, const std::vector<char>& is_coarse,
                            const std::vector<int>& coarse_index) {
  const Mesh& fm = fine.mesh();
  const int anc = fm.ancestor_in(fine.elements()[ef], is_coarse);
  FineToCoarse out;
  out.coarse_element = static_cast<std::size_t>(coarse_index[static_cast<std::size_t>(anc)]);
  out.P.resize(static_cast<Eigen::Index>(fine.local_size()), static_cast<Eigen::Index>(coarse.local_size()));
  for (std::size_t a = 0; a < fine.local_size(); ++a) {
    const auto x = node_coordinates(fine, ef, a);
    const auto lam = barycentric_of(fm, anc, x);
    out.P.row(static_cast<Eigen::Index>(a)) = coarse.local_values(out.coarse_element, lam).transpose();
  }
  return out;
}

void check_pair(const FeSpace& coarse, const FeSpace& fine) {
  if (fine.kind() != SpaceKind::Lagrange) throw InputError("two-mesh transfer: the fine space must be a Lagrange space");
  if (fine.degree() < coarse.degree()) throw InputError("two-mesh transfer: fine degree must not be lower than coarse degree");
  if (coarse.dim() != fine.dim()) throw InputError("two-mesh transfer: dimension mismatch");
}

std::pair<std::vector<char>, std::vector<int>> coarse_lookup(const FeSpace& coarse, const FeSpace& fine) {
  std::vector<char> is_coarse(fine.mesh().num_simplices_total(), 0);
  std::vector<int> index(fine.mesh().num_simplices_total(), -1);
  for (std::size_t e = 0; e < coarse.elements().size(); ++e) {
    const auto id = static_cast<std::size_t>(coarse.elements()[e]);
    if (id >= is_coarse.size()) throw InputError("two-mesh transfer: fine mesh is not a refinement of the coarse mesh");
    is_coarse[id] = 1;
    index[id] = static_cast<int>(e);
  }
  return {is_coarse, index};
}

} // namespace

SparseMatrix mixed_mass(const FeSpace& coarse, const FeSpace& fine) {
  check_pair(coarse, fine);
  const auto [is_coarse, index] = coarse_lookup(coarse, fine);
  std::vector<Triplet> trip;
  for (std::size_t ef = 0; ef < fine.num_elements(); ++ef) {
    const auto fc = fine_to_coarse(coarse, fine, ef, is_coarse, index);
    const Eigen::MatrixXd G = fc.P.transpose() * fine.local_mass(ef); // coarse local x fine local
    for (std::size_t m = 0; m < coarse.local_size(); ++m) {
      const int gm = coarse.local_dof(fc.coarse_element, m);
      if (gm < 0) continue;
      for (std::size_t n = 0; n < fine.local_size(); ++n) {
        const int gn = fine.local_dof(ef, n);
        if (gn >= 0) trip.emplace_back(gm, gn, G(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n)));
      }
    }
  }
  SparseMatrix X(static_cast<Eigen::Index>(coarse.num_dofs()), static_cast<Eigen::Index>(fine.num_dofs()));
  X.setFromTriplets(trip.begin(), trip.end());
  return X;
}

SparseMatrix mixed_stiffness(const FeSpace& coarse, const FeSpace& fine) {
  check_pair(coarse, fine);
  const auto [is_coarse, index] = coarse_lookup(coarse, fine);
  std::vector<Triplet> trip;
  for (std::size_t ef = 0; ef < fine.num_elements(); ++ef) {
    const auto fc = fine_to_coarse(coarse, fine, ef, is_coarse, index);
    const Eigen::MatrixXd G = fc.P.transpose() * fine.local_stiffness(ef);
    for (std::size_t m = 0; m < coarse.local_size(); ++m) {
      const int gm = coarse.local_dof(fc.coarse_element, m);
      if (gm < 0) continue;
      for (std::size_t n = 0; n < fine.local_size(); ++n) {
        const int gn = fine.local_dof(ef, n);
        if (gn >= 0) trip.emplace_back(gm, gn, G(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n)));
      }
    }
  }
  SparseMatrix X(static_cast<Eigen::Index>(coarse.num_dofs()), static_cast<Eigen::Index>(fine.num_dofs()));
  X.setFromTriplets(trip.begin(), trip.end());
  return X;
}

SparseMatrix prolongation(const FeSpace& coarse, const FeSpace& fine) {
  check_pair(coarse, fine);
  if (coarse.kind() != SpaceKind::Lagrange) throw InputError("prolongation: coarse space must be conforming");
  const auto [is_coarse, index] = coarse_lookup(coarse, fine);
  std::vector<Triplet> trip;
  std::vector<char> done(fine.num_dofs(), 0);
  for (std::size_t ef = 0; ef < fine.num_elements(); ++ef) {
    const auto fc = fine_to_coarse(coarse, fine, ef, is_coarse, index);
    for (std::size_t a = 0; a < fine.local_size(); ++a) {
      const int gn = fine.local_dof(ef, a);
      if (gn < 0 || done[static_cast<std::size_t>(gn)]) continue;
      done[static_cast<std::size_t>(gn)] = 1;
      for (std::size_t m = 0; m < coarse.local_size(); ++m) {
        const int gm = coarse.local_dof(fc.coarse_element, m);
        const double v = fc.P(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(m));
        if (gm >= 0 && std::abs(v) > 1e-14) trip.emplace_back(gn, gm, v);
      }
    }
  }
  SparseMatrix P(static_cast<Eigen::Index>(fine.num_dofs()), static_cast<Eigen::Index>(coarse.num_dofs()));
  P.setFromTriplets(trip.begin(), trip.end());
  return P;
}

DecompositionCheck check_global_decomposition(const FeSpace& V, const std::vector<Rational>& coeffs) {
  if (V.kind() != SpaceKind::Lagrange) throw InputError("global decomposition requires a Lagrange space");
  if (coeffs.size() != V.num_dofs()) throw InputError("coefficient vector has wrong length");
  const int d = V.dim();
  const int K = V.degree();
  const auto& re = reference_element(d, K);
  const Mesh& mesh = V.mesh();
  DecompositionCheck rep;
  std::map<std::pair<int, NodeKey>, Rational> patch_values;
  std::set<int> patches;
  for (std::size_t e = 0; e < V.num_elements(); ++e) {
    const auto& verts = mesh.simplex(V.elements()[e]).v;
    BarycentricPoly v(d);
    for (std::size_t a = 0; a < re.size(); ++a) {
      const int g = V.local_dof(e, a);
      if (g >= 0) v += re.basis[a] * coeffs[static_cast<std::size_t>(g)];
    }
    BarycentricPoly sum(d);
    for (int j = 0; j <= d; ++j) {
      const int i = verts[static_cast<std::size_t>(j)];
      patches.insert(i);
      const BarycentricPoly dj = decomposition_apply(j, v, K);
      MultiIndex ej(static_cast<std::size_t>(d) + 1, 0);
      ej[static_cast<std::size_t>(j)] = 1;
      const BarycentricPoly term = BarycentricPoly::monomial(ej) * dj;
      sum += term;
      for (const auto& b : re.lower_nodes) {
        std::vector<Rational> lam;
        for (int x : b) lam.push_back(K == 1 ? Rational(1, d + 1) : Rational(x, K - 1));
        const Rational val = dj.evaluate(lam);
        auto [it, inserted] = patch_values.emplace(std::make_pair(i, node_key(verts, b)), val);
        if (!inserted && it->second != val) rep.continuous = false;
      }
      if (V.zero_trace()) {
        for (std::size_t a = 0; a < re.size(); ++a) {
          if (V.local_dof(e, a) >= 0) continue; // node not on Gamma
          std::vector<Rational> lam;
          for (int x : re.nodes[a]) lam.emplace_back(x, K);
          if (term.evaluate(lam) != 0) rep.preserves_zero_trace = false;
        }
      }
    }
    if (!(sum.homogenize(K) - v).is_zero()) rep.reproduces = false;
  }
  rep.patches = patches.size();
  return rep;
}

} // namespace gp
