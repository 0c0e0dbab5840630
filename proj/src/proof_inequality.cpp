#include "corevote/proof/shapes.hpp"

#include <stdexcept>
#include <string>

namespace corevote::proof {

std::vector<DeviationShape> deviation_shapes(int k) {
  std::vector<DeviationShape> shapes;
  for (int size = 1; size <= k; ++size) {
    for (int overlap = 0; overlap < size; ++overlap) shapes.push_back({size, overlap});
  }
  return shapes;
}

Rational delta_formula(DeviationShape shape, int k, int a, int b, int c) {
  const int committee_only = k - shape.overlap;  // |W \ T|
  const int deviation_only = shape.outside();    // |T \ W|
  if (shape.size < 1 || shape.size > k || shape.overlap < 0 || shape.overlap > shape.size || a < 0 ||
      a > committee_only || b < 0 || b > shape.overlap || c < 0 || c > deviation_only) {
    throw std::invalid_argument("triple (" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) +
                                ") out of range for shape (" + std::to_string(shape.size) + "," +
                                std::to_string(shape.overlap) + ")");
  }
  Rational gain(mpz_class((committee_only - a) * c), mpz_class(a + b + 1));
  if (a == 0) return gain;
  return gain - Rational(mpz_class(a * (deviation_only - c)), mpz_class(a + b));
}

Rational supporter_bound(DeviationShape shape, int k) {
  return (Rational(mpz_class(k), mpz_class(shape.size)) - 1) * Rational(shape.outside());
}

std::vector<ShapeViolation> inequality_scan(int k) {
  if (k < 1) throw std::invalid_argument("committee size must be positive");
  std::vector<ShapeViolation> out;
  for (const DeviationShape shape : deviation_shapes(k)) {
    const Rational bound = supporter_bound(shape, k);
    for (int a = 0; a <= k - shape.overlap; ++a) {
      for (int b = 0; b <= shape.overlap; ++b) {
        for (int c = a + 1; c <= shape.outside(); ++c) {
          Rational delta = delta_formula(shape, k, a, b, c);
          if (delta <= bound) out.push_back({shape, a, b, c, std::move(delta), bound});
        }
      }
    }
  }
  return out;
}

}  // namespace corevote::proof
