#include "gp/quadrature.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>

#include "gp/error.hpp"
#include "gp/polynomial.hpp"

namespace gp {

namespace {

std::unique_ptr<QuadratureRule> grundmann_moeller(int d, int degree) {
  const int s = std::max(0, (degree - 1 + 1) / 2);
  auto rule = std::make_unique<QuadratureRule>();
  rule->degree = 2 * s + 1;
  double total = 0.0;
  for (int i = 0; i <= s; ++i) {
    const int denom = 2 * s + d + 1 - 2 * i;
    double w = std::pow(-1.0, i) * std::pow(static_cast<double>(denom), 2 * s + 1);
    w /= std::tgamma(i + 1.0) * std::tgamma(2.0 * s + d + 2.0 - i);
    for (const auto& beta : multi_indices(d, s - i)) {
      std::vector<double> lam;
      for (int b : beta) lam.push_back((2.0 * b + 1.0) / denom);
      rule->points.push_back(std::move(lam));
      rule->weights.push_back(w);
      total += w;
    }
  }
  for (double& w : rule->weights) w /= total;
  return rule;
}

} // namespace

const QuadratureRule& simplex_rule(int d, int degree) {
  if (d < 1 || d > 8) throw InputError("simplex_rule: dimension must be 1..8");
  if (degree < 0 || degree > 30) throw InputError("simplex_rule: degree must be 0..30");
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::unique_ptr<QuadratureRule>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[{d, degree}];
  if (!slot) slot = grundmann_moeller(d, degree);
  return *slot;
}

} // namespace gp
