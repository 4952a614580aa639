#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "mvop/errors.hpp"
#include "mvop/jacobi.hpp"
#include "mvop/representations.hpp"

using namespace mvop;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

// Flip each column so its first entry above 1e-8 in size is positive.
RMatrix align_columns(RMatrix V) {
    for (Eigen::Index c = 0; c < V.cols(); ++c)
        for (Eigen::Index r = 0; r < V.rows(); ++r)
            if (std::abs(V(r, c)) > 1e-8) {
                if (V(r, c) < 0) V.col(c) *= -1.0;
                break;
            }
    return V;
}

double spectrum_gap(const Representation& rep) {
    const auto eig = tridiag_eigensolve(rep.jacobiP);
    std::vector<double> mu = rep.mu;
    std::sort(mu.begin(), mu.end());
    double err = 0.0;
    for (std::size_t i = 0; i < mu.size(); ++i) err = std::max(err, std::abs(eig.values[i] - mu[i]));
    return err;
}

double eigenvector_gap(const Representation& rep) {
    const auto eig = tridiag_eigensolve(rep.jacobiP);
    const RMatrix num = align_columns(eig.vectors);
    const RMatrix U = align_columns(analytic_transition_matrix(rep));
    double err = 0.0;
    for (int c = 0; c < rep.dim; ++c) {
        int best = 0;
        for (int j = 1; j < rep.dim; ++j)
            if (std::abs(rep.mu[j] - eig.values[c]) < std::abs(rep.mu[best] - eig.values[c])) best = j;
        err = std::max(err, (num.col(c) - U.col(best)).cwiseAbs().maxCoeff());
    }
    return err;
}

}  // namespace

TEST_CASE("su(2) data") {
    const auto r = build_su2(3, kPi / 2);
    CHECK(r.dim == 4);
    CHECK(r.lambda == std::vector<double>{-3, -1, 1, 3});
    for (double d : r.jacobiP.diag) CHECK(std::abs(d) < 1e-15);
    CHECK(r.jacobiP.offdiag[0] == Approx(std::sqrt(3.0)).epsilon(1e-15));

    const auto r7 = build_su2(7, kPi / 3);
    std::vector<double> mu = r7.mu;
    std::sort(mu.begin(), mu.end());
    for (int j = 0; j <= 7; ++j) CHECK(mu[j] == Approx(2.0 * j - 7));
    for (int j = 0; j <= 7; ++j) CHECK(r7.mu_printed[j] == Approx(2.0 * j - 7));

    CHECK_THROWS_AS(build_su2(0, 1.0), ParameterError);
    CHECK_THROWS_AS(build_su2(3, 0.0), DegenerateOperatorError);
}

TEST_CASE("su(1,1) data") {
    const auto r = build_su11(2.0, 1.0, 1e-14, 2);
    CHECK(r.lambda[0] == 1.0);
    CHECK(r.lambda[1] == 2.0);
    CHECK(r.dim % 2 == 0);
    CHECK(r.support % 2 == 0);
    for (int j = 0; j < r.dim; ++j) CHECK(r.mu[j] - r.lambda[j] == 0.0);
    CHECK(r.jacobiP.offdiag[0] == Approx(0.5 * std::sinh(1.0) * std::sqrt(2.0)).epsilon(1e-15));
    CHECK_THROWS_AS(build_su11(2.0, 0.0, 1e-14, 2), DegenerateOperatorError);
    CHECK_THROWS_AS(build_su11(-1.0, 1.0, 1e-14, 2), ParameterError);
    CHECK_THROWS_AS(build_su11(2.0, 1.0, 0.0, 2), ParameterError);
}

TEST_CASE("so_q(3) data") {
    const auto r = build_soq3(8, 6, 0.3);
    CHECK(r.dim == 7);
    for (double d : r.jacobiP.diag) CHECK(d == 0.3);
    // beta = 1 makes every coupling 1/(2 sin w).
    for (double o : r.jacobiP.offdiag) CHECK(o == Approx(0.5 / std::sin(kPi / 8)).epsilon(1e-14));
    CHECK(build_soq3(4, 2, 0.0).mu[0] == Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(build_soq3(8, 0, 0.0), ParameterError);
    CHECK_THROWS_AS(build_soq3(8, 8, 0.0), ParameterError);
}

TEST_CASE("rho consistency") {
    const auto s = build_su2(7, 2.5);
    for (int k = 1; k <= 7; ++k)
        CHECK(s.jacobiP.offdiag[k - 1] ==
              Approx(std::abs(std::sin(2.5)) * std::sqrt(k * (8.0 - k))).epsilon(1e-13));
    const auto m = build_su11(1.5, 1.0, 1e-14, 2);
    for (int k = 1; k < m.dim; ++k)
        CHECK(m.jacobiP.offdiag[k - 1] ==
              Approx(0.5 * std::sinh(1.0) * std::sqrt(k * (1.5 + k - 1))).epsilon(1e-13));
    const auto q = build_soq3(9, 5, 0.0);
    for (int k = 1; k <= 5; ++k) CHECK(q.jacobiP.offdiag[k - 1] == q_ultraspherical_rho(9, 5, k));
}

TEST_CASE("eigensolver basics") {
    const auto one = tridiag_eigensolve(JacobiOperator{{2.5}, {}});
    CHECK(one.values == std::vector<double>{2.5});
    CHECK(one.vectors(0, 0) == 1.0);

    const auto r = build_su2(7, kPi / 3);
    const auto eig = tridiag_eigensolve(r.jacobiP);
    for (int j = 0; j <= 7; ++j) CHECK(eig.values[j] == Approx(2.0 * j - 7).epsilon(1e-10));
    const RMatrix J = r.jacobiP.dense();
    for (int c = 0; c < r.dim; ++c)
        CHECK((J * eig.vectors.col(c) - eig.values[c] * eig.vectors.col(c)).norm() < 1e-10 * J.norm());
    CHECK((eig.vectors.transpose() * eig.vectors - RMatrix::Identity(8, 8)).cwiseAbs().maxCoeff() < 1e-13);

    const auto q = tridiag_eigensolve(build_soq3(8, 6, 0.0).jacobiP);
    for (int j = 0; j <= 6; ++j)
        CHECK(q.values[6 - j] == Approx(std::cos(kPi / 8 * (j + 1)) / std::sin(kPi / 8)).epsilon(1e-10));
}

TEST_CASE("eigensolver oracle on finite presets") {
    for (const auto& rep : {build_su2(7, kPi / 3), build_su2(7, -1.0), build_su2(11, 2.0),
                            build_soq3(8, 6, 0.3), build_soq3(9, 7, 0.3), build_soq3(11, 4, -0.2)}) {
        CHECK(spectrum_gap(rep) < 1e-9);
        CHECK(eigenvector_gap(rep) < 1e-8);
    }
}

TEST_CASE("eigensolver oracle on the retained meixner block") {
    const auto rep = build_su11(1.5, 1.0, 1e-14, 2);
    const auto eig = tridiag_eigensolve(rep.jacobiP);
    // Low eigenvalues of the truncation converge to the analytic spectrum.
    for (int j = 0; j < 14; ++j) CHECK(eig.values[j] == Approx(rep.mu[j]).epsilon(1e-9));
}

TEST_CASE("analytic transition matrix") {
    const auto rep = build_su2(7, kPi / 3);
    const RMatrix U = analytic_transition_matrix(rep);
    CHECK((U.transpose() * U - RMatrix::Identity(8, 8)).cwiseAbs().maxCoeff() < 1e-10);
    RMatrix mu = RMatrix::Zero(8, 8);
    for (int j = 0; j < 8; ++j) mu(j, j) = rep.mu[j];
    CHECK((U.transpose() * rep.jacobiP.dense() * U - mu).cwiseAbs().maxCoeff() < 1e-10);

    const RMatrix U1 = align_columns(analytic_transition_matrix(build_su2(1, kPi / 2)));
    const double h = std::sqrt(0.5);
    CHECK(std::abs(U1(0, 0) - h) < 1e-15);
    CHECK(std::abs(U1(1, 0) - h) + std::abs(U1(1, 1) + h) < 1e-15);

    const auto m = build_su11(1.5, 1.0, 1e-14, 2);
    const RMatrix Um = analytic_transition_matrix(m, m.exact_rows);
    CHECK((Um * Um.transpose() - RMatrix::Identity(m.exact_rows, m.exact_rows)).cwiseAbs().maxCoeff() < 1e-13);
    CHECK_THROWS_AS(analytic_transition_matrix(rep, 9), ShapeError);
}

TEST_CASE("dual actions") {
    // The H action on the eigenbasis, U^T diag(lambda) U.
    auto check_dual = [](const Representation& rep, int rows, int cols) {
        const RMatrix U = analytic_transition_matrix(rep, rows);
        RMatrix H = RMatrix::Zero(rows, rows);
        for (int k = 0; k < rows; ++k) H(k, k) = rep.lambda[k];
        const RMatrix dual = U.transpose() * H * U;
        return (dual - rep.jacobiH_dual.dense()).topLeftCorner(cols, cols).cwiseAbs().maxCoeff();
    };
    const auto s = build_su2(7, kPi / 3);
    CHECK(check_dual(s, s.dim, s.dim) < 1e-12);
    const RMatrix neg = s.jacobiP.negated().dense();
    CHECK((s.jacobiH_dual.dense() - neg).cwiseAbs().maxCoeff() < 1e-15);
    CHECK(check_dual(build_soq3(9, 7, 0.3), 8, 8) < 1e-12);
    const auto m = build_su11(1.5, 1.0, 1e-14, 2);
    CHECK(check_dual(m, m.dim, 14) < 1e-9);
}

TEST_CASE("so_q(3) commutators") {
    for (auto [N, d] : {std::pair{8, 6}, std::pair{9, 7}, std::pair{7, 3}}) {
        const auto g = soq3_generators(build_soq3(N, d, 0.0));
        CHECK(max_abs(q_commutator(g.K1, g.K2, g.omega) + g.K0) < 1e-11);
        CHECK(max_abs(q_commutator(g.K2, g.K0, g.omega) + g.K1) < 1e-11);
    }
    CHECK_THROWS_AS(soq3_generators(build_su2(3, 1.0)), ParameterError);
    CHECK_THROWS_AS(q_commutator(CMatrix::Zero(2, 2), CMatrix::Zero(3, 3), 0.1), ShapeError);
}
