#pragma once

#include <vector>

#include "corevote/rational.hpp"

namespace corevote::proof {

/// Deviation T relative to a committee W, up to relabeling: |T| and |T ∩ W|.
struct DeviationShape {
  int size = 0;
  int overlap = 0;

  int outside() const { return size - overlap; }
  friend bool operator==(const DeviationShape&, const DeviationShape&) = default;
  friend auto operator<=>(const DeviationShape&, const DeviationShape&) = default;
};

/// Shapes with 1 <= size <= k and at least one member outside W.
std::vector<DeviationShape> deviation_shapes(int k);

/// Summed swap delta of one ballot over all x ∈ W \ T, y ∈ T \ W, where the
/// ballot meets W \ T in a, W ∩ T in b and T \ W in c candidates. The loss
/// term is zero when a = 0. Throws std::invalid_argument on an out-of-range
/// triple.
Rational delta_formula(DeviationShape shape, int k, int a, int b, int c);

/// (k / |T| - 1) * |T \ W|, the lower bound a supporting ballot must beat.
Rational supporter_bound(DeviationShape shape, int k);

struct ShapeViolation {
  DeviationShape shape;
  int a = 0;
  int b = 0;
  int c = 0;
  Rational delta;
  Rational bound;
};

/// All supporting triples (c > a) whose delta fails to exceed the bound
/// strictly. Empty exactly when every local PAV committee of size k is in
/// the core by the summed-swap argument.
std::vector<ShapeViolation> inequality_scan(int k);

}  // namespace corevote::proof
