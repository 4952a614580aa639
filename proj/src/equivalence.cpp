#include "mvop/equivalence.hpp"

#include <cmath>
#include <limits>
#include <random>

#include "mvop/errors.hpp"

namespace mvop {

namespace {

double norm_sq_total(const std::vector<CMatrix>& W) {
    double s = 0.0;
    for (const auto& w : W) s += w.squaredNorm();
    return s;
}

// One ALS sweep: with the right factor fixed to N, the best left factor solves a
// linear least-squares problem in closed form.
CMatrix als_step(const std::vector<CMatrix>& W1, const std::vector<CMatrix>& W2, const CMatrix& N) {
    const auto n = N.rows();
    CMatrix G = CMatrix::Zero(n, n);
    CMatrix H = CMatrix::Zero(n, n);
    for (std::size_t j = 0; j < W1.size(); ++j) {
        const CMatrix X = W1[j] * N.adjoint();
        G += W2[j] * X.adjoint();
        H += X * X.adjoint();
    }
    return H.completeOrthogonalDecomposition().solve(G.adjoint()).adjoint();
}

Eigen::VectorXd residual_vector(const std::vector<CMatrix>& W1, const std::vector<CMatrix>& W2,
                                const CMatrix& M) {
    const auto n = M.rows();
    Eigen::VectorXd r(static_cast<Eigen::Index>(W1.size()) * n * n * 2);
    Eigen::Index p = 0;
    for (std::size_t j = 0; j < W1.size(); ++j) {
        const CMatrix d = W2[j] - M * W1[j] * M.adjoint();
        for (Eigen::Index a = 0; a < n; ++a)
            for (Eigen::Index b = 0; b < n; ++b) {
                r(p++) = d(a, b).real();
                r(p++) = d(a, b).imag();
            }
    }
    return r;
}

// Levenberg-Marquardt on the real and imaginary parts of M.
CMatrix lm_polish(const std::vector<CMatrix>& W1, const std::vector<CMatrix>& W2, CMatrix M,
                  int iterations, double stagnation) {
    const auto n = M.rows();
    const Eigen::Index np = 2 * n * n;
    double mu = 1e-3;
    Eigen::VectorXd r = residual_vector(W1, W2, M);
    double f = r.squaredNorm();
    for (int it = 0; it < iterations && f > 0.0; ++it) {
        Eigen::MatrixXd Jm(r.size(), np);
        for (Eigen::Index q = 0; q < np; ++q) {
            CMatrix dM = CMatrix::Zero(n, n);
            const Eigen::Index e = q / 2;
            dM(e / n, e % n) = (q % 2 == 0) ? Complex(1.0, 0.0) : Complex(0.0, 1.0);
            Eigen::Index p = 0;
            for (std::size_t j = 0; j < W1.size(); ++j) {
                const CMatrix d = -(dM * W1[j] * M.adjoint() + M * W1[j] * dM.adjoint());
                for (Eigen::Index a = 0; a < n; ++a)
                    for (Eigen::Index b = 0; b < n; ++b) {
                        Jm(p++, q) = d(a, b).real();
                        Jm(p++, q) = d(a, b).imag();
                    }
            }
        }
        const Eigen::MatrixXd JtJ = Jm.transpose() * Jm;
        const Eigen::VectorXd g = Jm.transpose() * r;
        bool improved = false;
        for (int tries = 0; tries < 20; ++tries) {
            Eigen::MatrixXd Aug = JtJ;
            Aug.diagonal().array() += mu * (1.0 + JtJ.diagonal().array());
            const Eigen::VectorXd step = Aug.ldlt().solve(-g);
            CMatrix trial = M;
            for (Eigen::Index q = 0; q < np; ++q) {
                const Eigen::Index e = q / 2;
                trial(e / n, e % n) += (q % 2 == 0) ? Complex(step(q), 0.0) : Complex(0.0, step(q));
            }
            const Eigen::VectorXd rt = residual_vector(W1, W2, trial);
            const double ft = rt.squaredNorm();
            if (ft < f) {
                const double gain = f - ft;
                M = trial;
                r = rt;
                f = ft;
                mu = std::max(mu * 0.3, 1e-12);
                improved = true;
                if (gain <= stagnation * std::max(f, 1e-300)) it = iterations;
                break;
            }
            mu *= 10.0;
        }
        if (!improved) break;
    }
    return M;
}

}  // namespace

double equivalence_objective(const std::vector<CMatrix>& W1, const std::vector<CMatrix>& W2,
                             const CMatrix& M) {
    const double den = norm_sq_total(W2);
    double num = 0.0;
    for (std::size_t j = 0; j < W1.size(); ++j)
        num += (W2[j] - M * W1[j] * M.adjoint()).squaredNorm();
    return std::sqrt(num / std::max(den, 1e-300));
}

CMatrix align_phase(const CMatrix& M, const CMatrix& ref) {
    const Complex t = (ref.adjoint() * M).trace();
    if (std::abs(t) == 0.0) return M;
    return M * std::polar(1.0, -std::arg(t));
}

EquivalenceResult equivalence_probe(const std::vector<CMatrix>& W1, const std::vector<CMatrix>& W2,
                                    const EquivalenceOptions& opts) {
    if (W1.empty() || W1.size() != W2.size())
        throw ShapeError("equivalence probe needs weight sequences of equal nonzero length");
    const auto n = W1.front().rows();
    for (std::size_t j = 0; j < W1.size(); ++j) {
        if (W1[j].rows() != n || W1[j].cols() != n || W2[j].rows() != n || W2[j].cols() != n)
            throw ShapeError("equivalence probe needs square weights of one size");
    }

    std::mt19937_64 rng(opts.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<CMatrix> starts{CMatrix::Identity(n, n)};
    for (int s = 0; s < opts.random_starts; ++s) {
        CMatrix M(n, n);
        for (Eigen::Index a = 0; a < n; ++a)
            for (Eigen::Index b = 0; b < n; ++b) M(a, b) = Complex(gauss(rng), gauss(rng));
        starts.push_back(M);
    }

    EquivalenceResult out;
    out.residual = std::numeric_limits<double>::infinity();
    for (const CMatrix& start : starts) {
        CMatrix M = start;
        double f = equivalence_objective(W1, W2, M);
        for (int it = 0; it < opts.max_iterations && f > 0.0; ++it) {
            const CMatrix next = als_step(W1, W2, M);
            // symmetric average of the left and right factors
            const CMatrix mid = 0.5 * (next + M);
            const double f_next = equivalence_objective(W1, W2, next);
            const double f_mid = equivalence_objective(W1, W2, mid);
            const double fn = std::min(f_next, f_mid);
            if (fn < f) M = f_next <= f_mid ? next : mid;
            if (f - fn < opts.stagnation) break;
            f = fn;
        }
        M = lm_polish(W1, W2, M, opts.max_iterations, opts.stagnation);
        f = equivalence_objective(W1, W2, M);
        if (f < out.residual) {
            out.residual = f;
            out.best = M;
        }
    }
    if (out.residual < opts.equiv_tol) {
        const double dn = std::abs(out.best.determinant());
        const double scale = std::pow(std::max(out.best.norm(), 1e-300), static_cast<double>(n));
        if (dn > 1e-12 * scale) out.candidate = out.best;
    }
    return out;
}

EquivalenceResult equivalence_probe(const MVOPFamily& famA, const MVOPFamily& famB,
                                    const EquivalenceOptions& opts) {
    if (famA.n != famB.n || famA.S != famB.S)
        throw ShapeError("families differ in block size or support");
    return equivalence_probe(famA.W, famB.W, opts);
}

}  // namespace mvop
