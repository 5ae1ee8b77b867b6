#ifndef FSDIFF_QUADRATURE_HPP
#define FSDIFF_QUADRATURE_HPP

#include <functional>
#include <vector>

namespace fsdiff::quad {

// Gauss-Legendre nodes/weights on [-1, 1], computed once per order by
// Newton iteration on the Legendre polynomial and cached.
struct GaussLegendre {
    explicit GaussLegendre(int n);
    std::vector<double> x, w;
};

const GaussLegendre& gauss_legendre(int n);

// deterministic pairwise-reduction sum (bit-stable for a fixed length)
double pairwise_sum(const std::vector<double>& v);

// adaptive Gauss-Legendre bisection on [a, b]; error gauged by comparing
// two orders on each panel. Throws QuadratureNotConverged past max_depth.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-10, int max_depth = 48);

// integral over (0, inf): [0,1] directly plus [1, inf) mapped by x -> 1/u.
// Suitable for integrands with algebraic decay faster than 1/x.
double integrate_0_inf(const std::function<double(double)>& f,
                       double rel_tol = 1e-10);

} // namespace fsdiff::quad

#endif
