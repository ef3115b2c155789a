#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>

namespace gp {

__extension__ using Int128 = __int128;

/// Exact binary fraction num / 2^exp.
///
/// Vertex coordinates produced by midpoint bisection of integer grids are
/// always dyadic, so storing them this way keeps vertex identity and
/// volumes exact. The representation is normalized: either num is odd or
/// exp == 0, hence equal values compare equal field-wise.
class Dyadic {
public:
  constexpr Dyadic() = default;
  Dyadic(std::int64_t num, int exp);
  static Dyadic integer(std::int64_t v) { return Dyadic(v, 0); }

  [[nodiscard]] std::int64_t num() const { return num_; }
  [[nodiscard]] int exp() const { return exp_; }
  [[nodiscard]] double to_double() const;

  /// Midpoint (a + b) / 2, exact.
  friend Dyadic midpoint(const Dyadic& a, const Dyadic& b);

  friend bool operator==(const Dyadic&, const Dyadic&) = default;
  friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b);

  /// Numerator after scaling to the common exponent `target_exp` (>= exp()).
  [[nodiscard]] Int128 scaled_num(int target_exp) const;

  [[nodiscard]] std::string to_string() const;

private:
  std::int64_t num_ = 0;
  int exp_ = 0;
};

} // namespace gp

template <>
struct std::hash<gp::Dyadic> {
  std::size_t operator()(const gp::Dyadic& d) const noexcept {
    return std::hash<std::int64_t>{}(d.num()) * 1000003u ^ std::hash<int>{}(d.exp());
  }
};
