#pragma once

#include <optional>
#include <string>

namespace mvop {

enum class FamilyKind { Krawtchouk, Meixner, QUltraspherical };

std::string to_string(FamilyKind kind);

// Parameters of one scalar family. Only the fields of `kind` are meaningful.
struct ScalarFamilySpec {
    FamilyKind kind = FamilyKind::Krawtchouk;

    // Krawtchouk: p = (1 + cos a)/2, support 0..m.
    double p = 0.5;
    int m = 0;

    // Meixner: c = ((cosh a - 1)/sinh a)^2, support j >= 0.
    double beta = 1.0;
    double c = 0.5;

    // q-ultraspherical at q = exp(2iw), w = pi/N, beta = (N - d)/2, support 0..d.
    int N = 0;
    int d = 0;
    double b = 0.0;
    double omega = 0.0;

    // Angle the p or c value was derived from, when one was supplied.
    std::optional<double> a;

    static ScalarFamilySpec krawtchouk(double p, int m);
    static ScalarFamilySpec krawtchouk_from_angle(double a, int m);
    static ScalarFamilySpec meixner(double beta, double c);
    static ScalarFamilySpec meixner_from_angle(double beta, double a);
    static ScalarFamilySpec q_ultraspherical(int N, int d, double b = 0.0);

    // Throws ParameterError when an invariant fails.
    void validate() const;

    // Number of support points; nullopt for the infinite Meixner support.
    std::optional<int> support_size() const;
};

// Terminating 2F1(-j,-k;-m;1/p).
double krawtchouk_eval(int k, int j, double p, int m);

// Terminating 2F1(-j,-k;beta;1-1/c).
double meixner_eval(int k, int j, double beta, double c);

// sin(w(k+1)(j+1))/sin(w(j+1)) with w = pi/N, for 0 <= k, j <= N-2.
double chebyshev_finite_eval(int k, int j, int N);

// Coupling rho_k of the so_q(3) representation (rho_0 = rho_{d+1} = 0).
double q_ultraspherical_rho(int N, int d, int k);

// Monic P_k(x_j), x_j = 2 cos w(j + beta).
double q_ultraspherical_eval(int k, int j, int N, int d);

// Family polynomial p_k at the j-th support point, in the family's own normalization.
double scalar_poly(const ScalarFamilySpec& spec, int k, int j);

double scalar_weight(const ScalarFamilySpec& spec, int j);

// Squared norm h_k = sum_j p_k(x_j)^2 w_j.
double scalar_norm(const ScalarFamilySpec& spec, int k);

// Total mass sum_j w_j.
double weight_total(const ScalarFamilySpec& spec);

// p_k(x_j) h_k^{-1/2}.
double orthonormal_poly(const ScalarFamilySpec& spec, int k, int j);

}  // namespace mvop
