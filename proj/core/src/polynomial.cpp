#include "gp/polynomial.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include <Eigen/Dense>

#include "gp/error.hpp"
#include "gp/random.hpp"

namespace gp {

int total_degree(const MultiIndex& s) { return std::accumulate(s.begin(), s.end(), 0); }

Rational factorial(int n) {
  Rational r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

long long binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::vector<MultiIndex> multi_indices(int d, int K) {
  std::vector<MultiIndex> out;
  MultiIndex cur(static_cast<std::size_t>(d) + 1, 0);
  // Recursive fill, first component largest first.
  auto rec = [&](auto&& self, int pos, int remaining) -> void {
    if (pos == d) {
      cur[static_cast<std::size_t>(pos)] = remaining;
      out.push_back(cur);
      return;
    }
    for (int a = remaining; a >= 0; --a) {
      cur[static_cast<std::size_t>(pos)] = a;
      self(self, pos + 1, remaining - a);
    }
  };
  rec(rec, 0, K);
  return out;
}

Rational monomial_mean(const MultiIndex& s) {
  const int d = static_cast<int>(s.size()) - 1;
  Rational num = factorial(d);
  for (int x : s) num *= factorial(x);
  return num / factorial(total_degree(s) + d);
}

Rational integrate_monomial(const MultiIndex& s, const Rational& volume) { return volume * monomial_mean(s); }

double to_double(const Rational& r) { return static_cast<double>(r); }

BarycentricPoly BarycentricPoly::monomial(const MultiIndex& s, const Rational& c) {
  BarycentricPoly p(static_cast<int>(s.size()) - 1);
  p.add_term(s, c);
  return p;
}

BarycentricPoly BarycentricPoly::constant(int d, const Rational& c) {
  return monomial(MultiIndex(static_cast<std::size_t>(d) + 1, 0), c);
}

int BarycentricPoly::degree() const {
  int deg = -1;
  for (const auto& [s, c] : c_) deg = std::max(deg, total_degree(s));
  return deg;
}

Rational BarycentricPoly::coefficient(const MultiIndex& s) const {
  auto it = c_.find(s);
  return it == c_.end() ? Rational(0) : it->second;
}

void BarycentricPoly::add_term(const MultiIndex& s, const Rational& c) {
  if (static_cast<int>(s.size()) != d_ + 1) throw InputError("multi-index length does not match dimension");
  if (std::any_of(s.begin(), s.end(), [](int x) { return x < 0; })) throw InputError("negative multi-index entry");
  if (c == 0) return;
  auto [it, inserted] = c_.emplace(s, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) c_.erase(it);
  }
}

BarycentricPoly& BarycentricPoly::operator+=(const BarycentricPoly& o) {
  for (const auto& [s, c] : o.c_) add_term(s, c);
  return *this;
}

BarycentricPoly& BarycentricPoly::operator-=(const BarycentricPoly& o) {
  for (const auto& [s, c] : o.c_) add_term(s, -c);
  return *this;
}

BarycentricPoly& BarycentricPoly::operator*=(const Rational& a) {
  if (a == 0) {
    c_.clear();
    return *this;
  }
  for (auto& [s, c] : c_) c *= a;
  return *this;
}

BarycentricPoly operator*(const BarycentricPoly& a, const BarycentricPoly& b) {
  BarycentricPoly r(a.d_);
  for (const auto& [sa, ca] : a.c_) {
    for (const auto& [sb, cb] : b.c_) {
      MultiIndex s(sa.size());
      for (std::size_t i = 0; i < s.size(); ++i) s[i] = sa[i] + sb[i];
      r.add_term(s, ca * cb);
    }
  }
  return r;
}

BarycentricPoly BarycentricPoly::homogenize(int K) const {
  BarycentricPoly sum_lambda(d_);
  for (int j = 0; j <= d_; ++j) {
    MultiIndex e(static_cast<std::size_t>(d_) + 1, 0);
    e[static_cast<std::size_t>(j)] = 1;
    sum_lambda.add_term(e, 1);
  }
  BarycentricPoly r(d_);
  for (const auto& [s, c] : c_) {
    const int deg = total_degree(s);
    if (deg > K) throw InputError("homogenize: degree exceeds target");
    BarycentricPoly t = monomial(s, c);
    for (int i = deg; i < K; ++i) t = t * sum_lambda;
    r += t;
  }
  return r;
}

Rational BarycentricPoly::mean() const {
  Rational m = 0;
  for (const auto& [s, c] : c_) m += c * monomial_mean(s);
  return m;
}

Rational BarycentricPoly::evaluate(const std::vector<Rational>& lambda) const {
  Rational v = 0;
  for (const auto& [s, c] : c_) {
    Rational t = c;
    for (std::size_t j = 0; j < s.size(); ++j) {
      for (int e = 0; e < s[j]; ++e) t *= lambda[j];
    }
    v += t;
  }
  return v;
}

double BarycentricPoly::evaluate(const std::vector<double>& lambda) const {
  double v = 0.0;
  for (const auto& [s, c] : c_) {
    double t = to_double(c);
    for (std::size_t j = 0; j < s.size(); ++j) {
      for (int e = 0; e < s[j]; ++e) t *= lambda[j];
    }
    v += t;
  }
  return v;
}

BarycentricPoly BarycentricPoly::derivative(int j) const {
  BarycentricPoly r(d_);
  for (const auto& [s, c] : c_) {
    if (s[static_cast<std::size_t>(j)] == 0) continue;
    MultiIndex t = s;
    --t[static_cast<std::size_t>(j)];
    r.add_term(t, c * s[static_cast<std::size_t>(j)]);
  }
  return r;
}

std::string BarycentricPoly::to_string() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [s, c] : c_) {
    if (!first) os << " + ";
    first = false;
    os << c << "*l^(";
    for (std::size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i];
    os << ")";
  }
  return os.str();
}

Rational mean_product(const BarycentricPoly& p, const BarycentricPoly& q) { return (p * q).mean(); }

BarycentricPoly decomposition_apply(int j, const BarycentricPoly& v, int K) {
  const int d = v.dim();
  if (j < 0 || j > d) throw InputError("decomposition_apply: vertex index out of range");
  if (K < 1) throw InputError("decomposition_apply: K must be positive");
  if (v.degree() > K) throw InputError("decomposition_apply: polynomial degree exceeds K");
  BarycentricPoly r(d);
  for (const auto& [s, c] : v.terms()) {
    const int deg = total_degree(s);
    const int sj = s[static_cast<std::size_t>(j)];
    if (sj > 0) {
      MultiIndex t = s;
      --t[static_cast<std::size_t>(j)];
      r.add_term(t, c * Rational(sj, K));
    }
    if (deg < K) r.add_term(s, c * Rational(K - deg, K));
  }
  return r;
}

Rational decomposition_form(const BarycentricPoly& v, const BarycentricPoly& w, int K) {
  const int d = v.dim();
  Rational sum = 0;
  for (int j = 0; j <= d; ++j) {
    MultiIndex e(static_cast<std::size_t>(d) + 1, 0);
    e[static_cast<std::size_t>(j)] = 1;
    const BarycentricPoly lj = BarycentricPoly::monomial(e);
    sum += (lj * decomposition_apply(j, v, K) * decomposition_apply(j, w, K)).mean();
  }
  return sum;
}

BarycentricPoly operator_S_apply(const MultiIndex& s, int K) {
  const int d = static_cast<int>(s.size()) - 1;
  const int n = total_degree(s);
  if (n > K) throw InputError("operator_S_apply: degree exceeds K");
  BarycentricPoly r(d);
  r.add_term(s, Rational(K * K + n * (n + d), K * K));
  for (int j = 0; j <= d; ++j) {
    const int sj = s[static_cast<std::size_t>(j)];
    if (sj == 0) continue;
    MultiIndex t = s;
    --t[static_cast<std::size_t>(j)];
    r.add_term(t, -Rational(sj * sj, K * K));
  }
  return r;
}

RationalMatrix operator_S_matrix(int K, int d) {
  if (K < 1 || d < 1) throw InputError("operator_S_matrix: K and d must be positive");
  const auto basis = multi_indices(d, K);
  std::map<MultiIndex, std::size_t> pos;
  for (std::size_t i = 0; i < basis.size(); ++i) pos[basis[i]] = i;
  RationalMatrix S(basis.size(), std::vector<Rational>(basis.size(), Rational(0)));
  for (std::size_t a = 0; a < basis.size(); ++a) {
    const auto img = operator_S_apply(basis[a], K).homogenize(K);
    for (const auto& [s, c] : img.terms()) S[pos.at(s)][a] = c;
  }
  return S;
}

RationalMatrix monomial_gram(int K, int d) {
  const auto basis = multi_indices(d, K);
  RationalMatrix G(basis.size(), std::vector<Rational>(basis.size()));
  for (std::size_t a = 0; a < basis.size(); ++a) {
    for (std::size_t b = 0; b < basis.size(); ++b) {
      MultiIndex s(basis[a].size());
      for (std::size_t i = 0; i < s.size(); ++i) s[i] = basis[a][i] + basis[b][i];
      G[a][b] = monomial_mean(s);
    }
  }
  return G;
}

long long dim_Z(int k, int d) { return binomial(k + d, d) - binomial(k - 1 + d, d); }

std::vector<std::pair<Rational, long long>> expected_S_spectrum(int K, int d) {
  std::vector<std::pair<Rational, long long>> out;
  for (int k = 0; k <= K; ++k) out.emplace_back(Rational(K * K + k * (k + d), K * K), dim_Z(k, d));
  return out;
}

std::vector<double> computed_S_spectrum(int K, int d) {
  const auto S = operator_S_matrix(K, d);
  const auto G = monomial_gram(K, d);
  const auto n = static_cast<Eigen::Index>(S.size());
  Eigen::MatrixXd A(n, n), B(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      Rational gs = 0;
      for (Eigen::Index k = 0; k < n; ++k) gs += G[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] * S[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
      A(i, j) = to_double(gs);
      B(i, j) = to_double(G[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
    }
  }
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(A, B, Eigen::EigenvaluesOnly | Eigen::Ax_lBx);
  if (es.info() != Eigen::Success) throw NumericalError("S spectrum: eigen solver failed");
  std::vector<double> ev(es.eigenvalues().data(), es.eigenvalues().data() + n);
  std::sort(ev.begin(), ev.end());
  return ev;
}

SConsistencyReport verify_S_consistency(int K, int d, int trials, std::uint64_t seed) {
  SConsistencyReport rep;
  Rng rng(seed);
  const auto basis = multi_indices(d, K);
  const auto S = operator_S_matrix(K, d);
  const auto G = monomial_gram(K, d);
  const std::size_t n = basis.size();
  auto random_vec = [&] {
    std::vector<Rational> c(n);
    for (auto& x : c) x = Rational(static_cast<long long>(uniform_index(rng, 9)) - 4, 1 + static_cast<long long>(uniform_index(rng, 3)));
    return c;
  };
  auto poly = [&](const std::vector<Rational>& c) {
    BarycentricPoly p(d);
    for (std::size_t i = 0; i < n; ++i) p.add_term(basis[i], c[i]);
    return p;
  };
  auto matrix_form = [&](const std::vector<Rational>& v, const std::vector<Rational>& w) {
    std::vector<Rational> sv(n, Rational(0));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) sv[i] += S[i][j] * v[j];
    }
    Rational f = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) f += w[i] * G[i][j] * sv[j];
    }
    return f;
  };
  for (int t = 0; t < trials; ++t) {
    const auto v = random_vec();
    const auto w = random_vec();
    const Rational lhs = matrix_form(v, w);
    const Rational rhs = decomposition_form(poly(v), poly(w), K);
    const Rational swapped = decomposition_form(poly(w), poly(v), K);
    ++rep.checked;
    if (lhs != rhs) {
      ++rep.mismatches;
      if (rep.first_mismatch.empty()) {
        std::ostringstream os;
        os << "trial " << t << ": matrix form " << lhs << " vs decomposition form " << rhs << " for v=" << poly(v).to_string()
           << ", w=" << poly(w).to_string();
        rep.first_mismatch = os.str();
      }
    }
    if (rhs != swapped) ++rep.asymmetric;
  }
  return rep;
}

RationalMatrix rational_inverse(const RationalMatrix& a) {
  const std::size_t n = a.size();
  RationalMatrix m = a;
  RationalMatrix inv(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m[piv][c] == 0) ++piv;
    if (piv == n) throw NumericalError("rational_inverse: singular matrix");
    std::swap(m[piv], m[c]);
    std::swap(inv[piv], inv[c]);
    const Rational p = m[c][c];
    for (std::size_t k = 0; k < n; ++k) {
      m[c][k] /= p;
      inv[c][k] /= p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || m[r][c] == 0) continue;
      const Rational f = m[r][c];
      for (std::size_t k = 0; k < n; ++k) {
        m[r][k] -= f * m[c][k];
        inv[r][k] -= f * inv[c][k];
      }
    }
  }
  return inv;
}

} // namespace gp
