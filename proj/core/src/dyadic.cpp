#include "gp/dyadic.hpp"

#include <cmath>
#include <limits>

#include "gp/error.hpp"

namespace gp {

namespace {

constexpr int kMaxExp = 120;

std::int64_t narrow(Int128 v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min()) {
    throw NumericalError("dyadic coordinate overflow (refinement too deep for 64-bit numerators)");
  }
  return static_cast<std::int64_t>(v);
}

} // namespace

Dyadic::Dyadic(std::int64_t num, int exp) : num_(num), exp_(exp) {
  if (exp < 0) {
    throw InputError("dyadic exponent must be nonnegative");
  }
  if (num_ == 0) {
    exp_ = 0;
    return;
  }
  while (exp_ > 0 && (num_ % 2) == 0) {
    num_ /= 2;
    --exp_;
  }
}

double Dyadic::to_double() const { return std::ldexp(static_cast<double>(num_), -exp_); }

Int128 Dyadic::scaled_num(int target_exp) const {
  const int shift = target_exp - exp_;
  if (shift < 0 || target_exp > kMaxExp) {
    throw NumericalError("invalid dyadic rescale");
  }
  return static_cast<Int128>(num_) << shift;
}

Dyadic midpoint(const Dyadic& a, const Dyadic& b) {
  const int e = std::max(a.exp_, b.exp_);
  if (e + 1 > kMaxExp) {
    throw NumericalError("dyadic exponent overflow");
  }
  const Int128 s = a.scaled_num(e) + b.scaled_num(e);
  return Dyadic(narrow(s), e + 1);
}

std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
  const int e = std::max(a.exp_, b.exp_);
  const Int128 x = a.scaled_num(e);
  const Int128 y = b.scaled_num(e);
  if (x < y) return std::strong_ordering::less;
  if (x > y) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string Dyadic::to_string() const {
  if (exp_ == 0) return std::to_string(num_);
  return std::to_string(num_) + "/2^" + std::to_string(exp_);
}

} // namespace gp
