#include "mvop/representations.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mvop/errors.hpp"

namespace mvop {

namespace {

std::vector<int> alternating(int n, bool flip) {
    std::vector<int> s(static_cast<std::size_t>(n), 1);
    if (flip)
        for (int k = 1; k < n; k += 2) s[k] = -1;
    return s;
}

void fill_tables(Representation& r, int weight_count) {
    r.norms.resize(static_cast<std::size_t>(r.dim));
    for (int k = 0; k < r.dim; ++k) r.norms[k] = scalar_norm(r.spec, k);
    r.weights.resize(static_cast<std::size_t>(weight_count));
    for (int j = 0; j < weight_count; ++j) r.weights[j] = scalar_weight(r.spec, j);
}

}  // namespace

std::string to_string(Algebra algebra) {
    switch (algebra) {
        case Algebra::SU2: return "su(2)";
        case Algebra::SU11: return "su(1,1)";
        case Algebra::SOq3: return "so_q(3)";
    }
    return "unknown";
}

double Representation::norm(int k) const {
    if (k < 0 || k >= static_cast<int>(norms.size())) {
        std::ostringstream os;
        os << "norm index " << k << " outside 0.." << norms.size() - 1;
        throw DomainError(os.str());
    }
    return norms[k];
}

double Representation::weight(int j) const {
    if (j < 0 || j >= static_cast<int>(weights.size())) {
        std::ostringstream os;
        os << "weight index " << j << " outside 0.." << weights.size() - 1;
        throw DomainError(os.str());
    }
    return weights[j];
}

double Representation::poly(int k, int j) const {
    return analytic_sign.at(static_cast<std::size_t>(k)) * scalar_poly(spec, k, j) /
           std::sqrt(norm(k));
}

double Representation::transition(int k, int j) const {
    return poly(k, j) * std::sqrt(weight(j));
}

Representation build_su2(int m, double a) {
    if (m < 1) throw ParameterError("su(2) representation needs m >= 1");
    const double s = std::sin(a);
    const double co = std::cos(a);
    if (std::abs(s) < 1e-15) throw DegenerateOperatorError("sin(a) = 0 makes P diagonal");

    Representation r;
    r.spec = ScalarFamilySpec::krawtchouk_from_angle(a, m);
    r.algebra = Algebra::SU2;
    r.dim = m + 1;
    r.coupling = s;
    r.support = r.dim;
    r.exact_rows = r.dim;
    for (int k = 0; k <= m; ++k) {
        r.lambda.push_back(2.0 * k - m);
        r.mu.push_back(double(m) - 2.0 * k);
        r.mu_printed.push_back(2.0 * k - m);
        r.jacobiP.diag.push_back(co * (2.0 * k - m));
        r.jacobiH_dual.diag.push_back(-co * (2.0 * k - m));
    }
    for (int k = 1; k <= m; ++k) {
        const double rho = std::sqrt(double(k) * (m + 1 - k));
        r.jacobiP.offdiag.push_back(std::abs(s) * rho);
        r.jacobiH_dual.offdiag.push_back(-std::abs(s) * rho);
    }
    r.basis_sign = alternating(r.dim, s < 0);
    r.analytic_sign = alternating(r.dim, false);
    fill_tables(r, r.dim);
    return r;
}

Representation build_su11(double beta, double a, double tail_tol, int n, int max_degree,
                          int guard) {
    if (a == 0.0) throw DegenerateOperatorError("a = 0 makes P diagonal");
    if (!(tail_tol > 0.0)) throw ParameterError("tail_tol must be positive");
    if (n < 1) throw ParameterError("block size n must be positive");
    if (max_degree < 0) throw ParameterError("max degree must be non-negative");
    if (guard < 1) throw ParameterError("guard must be at least one block row");

    Representation r;
    r.spec = ScalarFamilySpec::meixner_from_angle(beta, a);
    r.algebra = Algebra::SU11;
    r.tail_tol = tail_tol;
    const double sh = 0.5 * std::sinh(a);
    const double ch = std::cosh(a);
    r.coupling = -sh;

    // Row-mass tails of the analytic eigenvectors over the rows the engine reads.
    const int rows = n * (max_degree + 1);
    const double c = r.spec.c;
    std::vector<double> hk(static_cast<std::size_t>(rows));
    for (int k = 0; k < rows; ++k) hk[k] = scalar_norm(r.spec, k);
    std::vector<std::vector<double>> mass;  // mass[j][k]
    const int jcap = 20000;
    for (int j = 0; j < jcap; ++j) {
        const double w = scalar_weight(r.spec, j);
        std::vector<double> col(static_cast<std::size_t>(rows));
        double top = 0.0;
        for (int k = 0; k < rows; ++k) {
            const double v = meixner_eval(k, j, beta, c);
            col[k] = v * v * w / hk[k];
            top = std::max(top, col[k]);
        }
        mass.push_back(std::move(col));
        if (j > rows && top < 1e-6 * tail_tol * (1.0 - c)) break;
        if (j + 1 == jcap) throw NumericError("meixner support search did not terminate");
    }
    int J = static_cast<int>(mass.size()) - 1;
    std::vector<double> tail(static_cast<std::size_t>(rows), 0.0);
    for (; J > 0; --J) {
        bool ok = true;
        for (int k = 0; k < rows; ++k) {
            if (tail[k] + mass[J][k] >= tail_tol) ok = false;
        }
        if (!ok) break;
        for (int k = 0; k < rows; ++k) tail[k] += mass[J][k];
    }
    const int support_blocks = (J + 1 + n - 1) / n;
    r.support = n * support_blocks;
    r.exact_rows = rows;
    r.dim = n * std::max(support_blocks, max_degree + 2) + n * guard;

    for (int k = 0; k < r.dim; ++k) {
        const double lam = 0.5 * beta + k;
        r.lambda.push_back(lam);
        r.mu.push_back(lam);
        r.mu_printed.push_back(lam);
        r.jacobiP.diag.push_back(ch * lam);
        r.jacobiH_dual.diag.push_back(ch * lam);
    }
    for (int k = 1; k < r.dim; ++k) {
        const double rho = std::sqrt(double(k) * (beta + k - 1));
        r.jacobiP.offdiag.push_back(std::abs(sh) * rho);
        r.jacobiH_dual.offdiag.push_back(-std::abs(sh) * rho);
    }
    r.basis_sign = alternating(r.dim, sh > 0);
    r.analytic_sign = alternating(r.dim, true);
    fill_tables(r, std::max(r.dim, r.support));
    return r;
}

Representation build_soq3(int N, int d, double b) {
    Representation r;
    r.spec = ScalarFamilySpec::q_ultraspherical(N, d, b);
    r.algebra = Algebra::SOq3;
    r.dim = d + 1;
    r.support = r.dim;
    r.exact_rows = r.dim;
    r.coupling = 1.0;
    const double w = r.spec.omega;
    const double beta = r.spec.beta;
    for (int k = 0; k <= d; ++k) {
        const double lam = std::cos(w * (k + beta)) / std::sin(w);
        r.lambda.push_back(lam);
        r.mu.push_back(lam + b);
        r.mu_printed.push_back(lam + b);
        r.jacobiP.diag.push_back(b);
        r.jacobiH_dual.diag.push_back(0.0);
    }
    for (int k = 1; k <= d; ++k) {
        const double rho = q_ultraspherical_rho(N, d, k);
        r.jacobiP.offdiag.push_back(rho);
        r.jacobiH_dual.offdiag.push_back(rho);
    }
    r.basis_sign = alternating(r.dim, false);
    r.analytic_sign = alternating(r.dim, false);
    fill_tables(r, r.dim);
    return r;
}

RMatrix analytic_transition_matrix(const Representation& rep, std::optional<int> rows) {
    const int nr = rows.value_or(rep.dim);
    if (nr < 1 || nr > rep.dim) throw ShapeError("row count outside representation dimension");
    RMatrix U(nr, rep.support);
    for (int k = 0; k < nr; ++k)
        for (int j = 0; j < rep.support; ++j) U(k, j) = rep.transition(k, j);
    return U;
}

CMatrix q_commutator(const CMatrix& A, const CMatrix& B, double omega) {
    if (A.rows() != A.cols() || B.rows() != B.cols() || A.rows() != B.rows())
        throw ShapeError("q-commutator needs square matrices of equal size");
    const Complex e = std::polar(1.0, 0.5 * omega);
    return e * (A * B) - std::conj(e) * (B * A);
}

SoQ3Generators soq3_generators(const Representation& rep) {
    if (rep.algebra != Algebra::SOq3) throw ParameterError("generators need an so_q(3) representation");
    SoQ3Generators g;
    g.omega = rep.spec.omega;
    const int n = rep.dim;
    g.K0 = CMatrix::Zero(n, n);
    g.K1 = CMatrix::Zero(n, n);
    for (int k = 0; k < n; ++k) g.K0(k, k) = rep.lambda[k];
    for (int k = 1; k < n; ++k) {
        g.K1(k - 1, k) = rep.jacobiP.offdiag[k - 1];
        g.K1(k, k - 1) = rep.jacobiP.offdiag[k - 1];
    }
    g.K2 = q_commutator(g.K0, g.K1, g.omega);
    return g;
}

}  // namespace mvop
