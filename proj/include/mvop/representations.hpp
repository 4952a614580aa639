#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mvop/jacobi.hpp"
#include "mvop/scalar_families.hpp"
#include "mvop/types.hpp"

namespace mvop {

enum class Algebra { SU2, SU11, SOq3 };

std::string to_string(Algebra algebra);

struct Representation {
    ScalarFamilySpec spec;
    Algebra algebra = Algebra::SU2;
    int dim = 0;

    std::vector<double> lambda;  // H eigenvalue on |k>
    JacobiOperator jacobiP;      // P on the stored basis, couplings positive

    // Eigenvalue of P on the analytic column j.
    std::vector<double> mu;
    // The closed-form spectrum formula as displayed for the family; it can differ
    // from mu by sign (su(2)). Used for display matrices only.
    std::vector<double> mu_printed;

    // H acting on |phi_j> in the analytic eigenbasis.
    JacobiOperator jacobiH_dual;

    // Stored |k> = basis_sign[k] * |k> of the signed operator.
    std::vector<int> basis_sign;
    // Signed off-diagonal factor of P: sin a, -sinh(a)/2 or 1.
    double coupling = 1.0;

    // Number of analytic eigen-indices that are exact to tail tolerance.
    int support = 0;
    // Rows k < exact_rows are certified against the truncation (all rows when finite).
    int exact_rows = 0;
    double tail_tol = 0.0;

    // Sign relating the analytic vectors to stored rows.
    std::vector<int> analytic_sign;
    std::vector<double> norms;    // h_k, k < dim
    std::vector<double> weights;  // w_j, j < max(dim, support)

    // Orthonormal p_k(mu_j) in the stored frame (includes analytic_sign[k]).
    double poly(int k, int j) const;
    double weight(int j) const;
    double norm(int k) const;
    // Stored-frame entry <k|phi_j>.
    double transition(int k, int j) const;
};

Representation build_su2(int m, double a);

// Discrete series truncated so that every row k < n(max_degree+1) has eigenvector
// mass below tail_tol outside the retained support.
Representation build_su11(double beta, double a, double tail_tol, int n, int max_degree = 6,
                          int guard = 4);

Representation build_soq3(int N, int d, double b);

// Rows x support matrix of <k|phi_j>. Defaults to the full row range.
RMatrix analytic_transition_matrix(const Representation& rep,
                                   std::optional<int> rows = std::nullopt);

struct SoQ3Generators {
    CMatrix K0;
    CMatrix K1;
    CMatrix K2;  // [K0, K1]_w
    double omega = 0.0;
};

// e^{iw/2} AB - e^{-iw/2} BA.
CMatrix q_commutator(const CMatrix& A, const CMatrix& B, double omega);

SoQ3Generators soq3_generators(const Representation& rep);

}  // namespace mvop
