#pragma once

#include <vector>

#include "mvop/types.hpp"

namespace mvop {

// Real symmetric tridiagonal operator. offdiag[k-1] couples k-1 and k.
struct JacobiOperator {
    std::vector<double> diag;
    std::vector<double> offdiag;

    int dim() const { return static_cast<int>(diag.size()); }

    // Coupling a_k between k-1 and k; zero outside 1..dim-1.
    double a(int k) const;
    double b(int k) const;

    RMatrix dense() const;
    JacobiOperator negated() const;
    // Leading dim x dim section.
    JacobiOperator truncated(int dim) const;
};

// Orthonormal p_k(x) from x p_k = a_{k+1} p_{k+1} + b_k p_k + a_k p_{k-1}, p_0 = h0^{-1/2}.
double jacobi_recurrence_eval(const JacobiOperator& J, int k, double x, double h0 = 1.0);

// p_0(x) .. p_kmax(x) in one sweep.
std::vector<double> jacobi_recurrence_values(const JacobiOperator& J, int kmax, double x,
                                             double h0 = 1.0);

struct TridiagEigen {
    std::vector<double> values;  // ascending
    RMatrix vectors;             // column i belongs to values[i]
    int iterations = 0;
};

// Implicit QL with Wilkinson shifts; iteration cap 50*dim.
TridiagEigen tridiag_eigensolve(const JacobiOperator& J);

}  // namespace mvop
