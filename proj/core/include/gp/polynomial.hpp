#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace gp {

using Rational = boost::multiprecision::cpp_rational;
using MultiIndex = std::vector<int>; // length d+1
using RationalMatrix = std::vector<std::vector<Rational>>;

[[nodiscard]] int total_degree(const MultiIndex& s);
[[nodiscard]] Rational factorial(int n);
[[nodiscard]] long long binomial(int n, int k);

/// All multi-indices of length d+1 with |s| == K, in lexicographically
/// decreasing order (so (K,0,..,0) comes first).
[[nodiscard]] std::vector<MultiIndex> multi_indices(int d, int K);

/// Mean value of lambda^s over any simplex: s! d! / (|s|+d)!.
[[nodiscard]] Rational monomial_mean(const MultiIndex& s);
/// Integral of lambda^s over a simplex of volume `volume`.
[[nodiscard]] Rational integrate_monomial(const MultiIndex& s, const Rational& volume);

/// Polynomial on a d-simplex in barycentric monomials with exact rational
/// coefficients. Zero coefficients are never stored.
class BarycentricPoly {
public:
  explicit BarycentricPoly(int d) : d_(d) {}
  static BarycentricPoly monomial(const MultiIndex& s, const Rational& c = 1);
  static BarycentricPoly constant(int d, const Rational& c);

  [[nodiscard]] int dim() const { return d_; }
  [[nodiscard]] int degree() const; // -1 for the zero polynomial
  [[nodiscard]] bool is_zero() const { return c_.empty(); }
  [[nodiscard]] const std::map<MultiIndex, Rational>& terms() const { return c_; }
  [[nodiscard]] Rational coefficient(const MultiIndex& s) const;

  void add_term(const MultiIndex& s, const Rational& c);

  BarycentricPoly& operator+=(const BarycentricPoly& o);
  BarycentricPoly& operator-=(const BarycentricPoly& o);
  BarycentricPoly& operator*=(const Rational& a);
  friend BarycentricPoly operator+(BarycentricPoly a, const BarycentricPoly& b) { return a += b; }
  friend BarycentricPoly operator-(BarycentricPoly a, const BarycentricPoly& b) { return a -= b; }
  friend BarycentricPoly operator*(BarycentricPoly a, const Rational& s) { return a *= s; }
  friend BarycentricPoly operator*(const BarycentricPoly& a, const BarycentricPoly& b);
  friend bool operator==(const BarycentricPoly& a, const BarycentricPoly& b) { return a.d_ == b.d_ && a.c_ == b.c_; }

  /// Multiplies lower-degree terms by (sum lambda_j)^(K-|s|), giving the same
  /// function written in the basis {lambda^a : |a| = K}.
  [[nodiscard]] BarycentricPoly homogenize(int K) const;
  /// Mean value over the simplex.
  [[nodiscard]] Rational mean() const;
  [[nodiscard]] Rational evaluate(const std::vector<Rational>& lambda) const;
  [[nodiscard]] double evaluate(const std::vector<double>& lambda) const;
  /// Partial derivative with respect to lambda_j (lambda treated as independent).
  [[nodiscard]] BarycentricPoly derivative(int j) const;
  [[nodiscard]] std::string to_string() const;

private:
  int d_;
  std::map<MultiIndex, Rational> c_;
};

/// Mean of p*q over the simplex.
[[nodiscard]] Rational mean_product(const BarycentricPoly& p, const BarycentricPoly& q);

/// Local decomposition operator D_j^T on polynomials of degree <= K; result
/// has degree <= K-1. Throws InputError when deg v > K.
[[nodiscard]] BarycentricPoly decomposition_apply(int j, const BarycentricPoly& v, int K);

/// sum_j mean(lambda_j D_j v D_j w).
[[nodiscard]] Rational decomposition_form(const BarycentricPoly& v, const BarycentricPoly& w, int K);

/// Image of lambda^s (|s| <= K) under the spectral operator S, not homogenized.
[[nodiscard]] BarycentricPoly operator_S_apply(const MultiIndex& s, int K);

/// Matrix of S in the basis multi_indices(d,K): column a holds the
/// coefficients of S lambda^a.
[[nodiscard]] RationalMatrix operator_S_matrix(int K, int d);
/// Mean-normalized Gram matrix of {lambda^a : |a| = K}.
[[nodiscard]] RationalMatrix monomial_gram(int K, int d);

/// dim Z_k = C(k+d,d) - C(k-1+d,d).
[[nodiscard]] long long dim_Z(int k, int d);
/// mu_k = (K^2 + k(k+d))/K^2 for k = 0..K, paired with multiplicities.
[[nodiscard]] std::vector<std::pair<Rational, long long>> expected_S_spectrum(int K, int d);

/// Sorted eigenvalues of S (self-adjoint in the Gram inner product).
[[nodiscard]] std::vector<double> computed_S_spectrum(int K, int d);

struct SConsistencyReport {
  int checked = 0;
  int mismatches = 0;
  int asymmetric = 0;
  std::string first_mismatch;
};

/// Compares <S v, w> from operator_S_matrix with the decomposition form on
/// random exact pairs, and checks symmetry.
[[nodiscard]] SConsistencyReport verify_S_consistency(int K, int d, int trials, std::uint64_t seed);

[[nodiscard]] double to_double(const Rational& r);
[[nodiscard]] RationalMatrix rational_inverse(const RationalMatrix& a);

} // namespace gp
