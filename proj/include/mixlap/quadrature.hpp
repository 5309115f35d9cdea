#pragma once

#include <functional>
#include <vector>

namespace mixlap::quad {

struct GaussRule {
    std::vector<double> nodes;    // on [-1, 1]
    std::vector<double> weights;
};

/// Gauss–Legendre rule of order n (Newton iteration on P_n; machine precision).
const GaussRule& gauss_legendre(int n);

/// ∫_a^b f via an n-point Gauss–Legendre rule.
double gauss(const std::function<double(double)>& f, double a, double b, int n = 32);

/// Adaptive Simpson with absolute tolerance; recursion capped at `max_depth`.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-12, int max_depth = 48);

}  // namespace mixlap::quad
