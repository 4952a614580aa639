#pragma once

#include <optional>

#include "mvop/mvop_engine.hpp"
#include "mvop/types.hpp"

namespace mvop {

// Explicit 2x2 block expressions in the signed-operator frame.

// Interleaved Krawtchouk, m = 2N+1: lambda_k = 2k-2N-1, rho_k = sqrt(k(2N+2-k)).
CMatrix krawtchouk_A_display(int N, double a, int k);
CMatrix krawtchouk_B_display(int N, double a, int k);
// Middle factor X of theta_j = diag(1, h_1^{-1/2}) X diag(1, h_1^{1/2}).
CMatrix krawtchouk_theta_display(double p, int N, int j);

// Interleaved Meixner: lambda_k = beta/2 + k, rho_k = sqrt(k(beta+k-1)).
CMatrix meixner_A_display(double beta, double a, int k);
CMatrix meixner_B_display(double beta, double a, int k);

// so_q(3), general beta, with the representation's rho_k.
CMatrix chebyshev_A_display(int N, int d, double b, int k);
CMatrix chebyshev_B_display(int N, int d, double b, int k);
// The k-independent finite Chebyshev blocks.
CMatrix chebyshev_A_constant(double b);
CMatrix chebyshev_B_constant(double b);

// Split Krawtchouk, m = 2N+1: diag(rho_k, rho_{k+N+1}) and diag(lambda_k, lambda_{k+N+1}).
CMatrix split_A_display(int N, int k);
CMatrix split_B_display(int N, int k);
// Rows (1, 1) and h_{N+1}^{-1/2}(K_{N+1}(j), K_{N+1}(j+N+1)).
CMatrix split_alternant_display(double p, int N, int j);

// L(j) diag(mu_printed over Phi_j) L(j)^{-1}.
CMatrix theta_printed(const MVOPFamily& fam, int j);
// diag(1, h_1^{1/2}) M diag(1, h_1^{-1/2}).
CMatrix to_display_frame(const CMatrix& M, double h1);

// Alternant with row i scaled by h_i^{1/2}, so the first row is all ones.
CMatrix alternant_unit_row(const MVOPFamily& fam, int j);

struct SplitRoot {
    double p = 0.0;
    int j = 0;
};

// First p in (p_lo, p_hi) where K_{N+1}(j+N+1) - K_{N+1}(j) changes sign for some j,
// refined by bisection.
std::optional<SplitRoot> split_singular_scan(int N, double p_lo = 0.01, double p_hi = 0.99,
                                             int samples = 2000);

}  // namespace mvop
