// Gauss-Legendre quadrature with nodes computed by Newton iteration on the
// Legendre recurrence. Nodes/weights for a given order are computed once.

#ifndef HHSIM_QUADRATURE_HPP
#define HHSIM_QUADRATURE_HPP

#include <cmath>
#include <vector>

namespace hhsim {

struct QuadratureRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;  // sum to 2
};

// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
QuadratureRule gauss_legendre(int n);

// Cached reference to the rule used throughout the well-being integrals.
const QuadratureRule& savings_quadrature();

inline constexpr int kSavingsQuadratureOrder = 32;

// Integral of f over [a, b] with the given rule.
template <typename F>
double integrate(const QuadratureRule& rule, double a, double b, F&& f) {
  if (b <= a) return 0.0;
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double acc = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i)
    acc += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return acc * half;
}

}  // namespace hhsim

#endif
