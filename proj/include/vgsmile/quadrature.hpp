#ifndef VGSMILE_QUADRATURE_HPP
#define VGSMILE_QUADRATURE_HPP

#include <functional>

#include "vgsmile/accuracy.hpp"

namespace vgsmile {

struct QuadResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int panels = 0;
};

// Globally adaptive Gauss-Kronrod (G7, K15) on a finite interval. Splits the
// worst panel until the summed error estimate meets
// max(abs_tol, rel_tol * |value|). Throws ConvergenceError (carrying the
// partial estimate) if the panel budget is exhausted.
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     const Accuracy& acc = {});

} // namespace vgsmile

#endif
