#include "gp/reference_element.hpp"

#include <map>
#include <memory>
#include <mutex>

#include "gp/error.hpp"

namespace gp {

namespace {

std::vector<BarycentricPoly> nodal_basis(int d, int K, const std::vector<MultiIndex>& nodes) {
  if (K == 0) return {BarycentricPoly::constant(d, 1)};
  const std::size_t n = nodes.size();
  RationalMatrix V(n, std::vector<Rational>(n));
  for (std::size_t g = 0; g < n; ++g) {
    for (std::size_t a = 0; a < n; ++a) {
      Rational v = 1;
      for (std::size_t j = 0; j < nodes[a].size(); ++j) {
        for (int e = 0; e < nodes[a][j]; ++e) v *= Rational(nodes[g][j], K);
      }
      V[g][a] = v;
    }
  }
  const RationalMatrix C = rational_inverse(V);
  std::vector<BarycentricPoly> basis;
  for (std::size_t b = 0; b < n; ++b) {
    BarycentricPoly p(d);
    for (std::size_t a = 0; a < n; ++a) p.add_term(nodes[a], C[a][b]);
    basis.push_back(std::move(p));
  }
  return basis;
}

Eigen::MatrixXd to_eigen(const RationalMatrix& m) {
  Eigen::MatrixXd r(static_cast<Eigen::Index>(m.size()), m.empty() ? 0 : static_cast<Eigen::Index>(m[0].size()));
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m[i].size(); ++j) r(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = to_double(m[i][j]);
  }
  return r;
}

BarycentricPoly lambda(int d, int j) {
  MultiIndex e(static_cast<std::size_t>(d) + 1, 0);
  e[static_cast<std::size_t>(j)] = 1;
  return BarycentricPoly::monomial(e);
}

std::unique_ptr<ReferenceElement> build(int d, int K) {
  auto re = std::make_unique<ReferenceElement>();
  re->d = d;
  re->K = K;
  re->nodes = multi_indices(d, K);
  re->basis = nodal_basis(d, K, re->nodes);
  const std::size_t n = re->nodes.size();
  re->mass_exact.assign(n, std::vector<Rational>(n));
  re->basis_mean.resize(static_cast<Eigen::Index>(n));
  for (std::size_t a = 0; a < n; ++a) {
    re->basis_mean(static_cast<Eigen::Index>(a)) = to_double(re->basis[a].mean());
    for (std::size_t b = a; b < n; ++b) {
      re->mass_exact[a][b] = re->mass_exact[b][a] = mean_product(re->basis[a], re->basis[b]);
    }
  }
  re->mass = to_eigen(re->mass_exact);

  std::vector<std::vector<BarycentricPoly>> deriv(static_cast<std::size_t>(d) + 1);
  for (int j = 0; j <= d; ++j) {
    for (const auto& p : re->basis) deriv[static_cast<std::size_t>(j)].push_back(p.derivative(j));
  }
  re->derivatives = deriv;
  for (int j = 0; j <= d; ++j) {
    for (int l = 0; l <= d; ++l) {
      Eigen::MatrixXd g(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
      for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
          g(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) =
              to_double(mean_product(deriv[static_cast<std::size_t>(j)][a], deriv[static_cast<std::size_t>(l)][b]));
        }
      }
      re->grad_products.push_back(std::move(g));
    }
  }

  re->lower_nodes = multi_indices(d, K - 1);
  re->lower_basis = nodal_basis(d, K - 1, re->lower_nodes);
  const std::size_t m = re->lower_nodes.size();
  for (int j = 0; j <= d; ++j) {
    const BarycentricPoly lj = lambda(d, j);
    Eigen::MatrixXd w(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
    Eigen::MatrixXd x(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n));
    Eigen::MatrixXd lift(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(m));
    for (std::size_t b = 0; b < m; ++b) {
      const BarycentricPoly ljb = lj * re->lower_basis[b];
      for (std::size_t c = 0; c < m; ++c) w(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(c)) = to_double(mean_product(ljb, re->lower_basis[c]));
      for (std::size_t a = 0; a < n; ++a) {
        x(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(a)) = to_double(mean_product(ljb, re->basis[a]));
        std::vector<Rational> lam;
        for (int v : re->nodes[a]) lam.emplace_back(v, K);
        lift(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = to_double(ljb.evaluate(lam));
      }
    }
    re->weighted_lower.push_back(std::move(w));
    re->cross.push_back(std::move(x));
    re->lift.push_back(std::move(lift));
  }
  return re;
}

} // namespace

Eigen::VectorXd ReferenceElement::evaluate(const std::vector<double>& lam) const {
  Eigen::VectorXd v(static_cast<Eigen::Index>(basis.size()));
  for (std::size_t a = 0; a < basis.size(); ++a) v(static_cast<Eigen::Index>(a)) = basis[a].evaluate(lam);
  return v;
}

const ReferenceElement& reference_element(int d, int K) {
  if (d < 1 || d > 3) throw InputError("reference_element: dimension must be 1..3");
  if (K < 1 || K > 6) throw InputError("reference_element: degree must be 1..6");
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::unique_ptr<ReferenceElement>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[{d, K}];
  if (!slot) slot = build(d, K);
  return *slot;
}

std::vector<BarycentricPoly> cr_basis(int d) {
  std::vector<BarycentricPoly> out;
  for (int j = 0; j <= d; ++j) {
    BarycentricPoly p = BarycentricPoly::constant(d, 1);
    p -= lambda(d, j) * Rational(d);
    out.push_back(std::move(p));
  }
  return out;
}

RationalMatrix cr_mass_exact(int d) {
  const auto b = cr_basis(d);
  RationalMatrix m(b.size(), std::vector<Rational>(b.size()));
  for (std::size_t i = 0; i < b.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) m[i][j] = mean_product(b[i], b[j]);
  }
  return m;
}

RationalMatrix cr_mass_formula(int d) {
  RationalMatrix m(static_cast<std::size_t>(d) + 1, std::vector<Rational>(static_cast<std::size_t>(d) + 1));
  for (int i = 0; i <= d; ++i) {
    for (int j = 0; j <= d; ++j) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = Rational(2 - d + (i == j ? d * d : 0), (d + 2) * (d + 1));
  }
  return m;
}

} // namespace gp
