#include "mvop/mvop_engine.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mvop/errors.hpp"

namespace mvop {

namespace {

CMatrix matrix_power(const RMatrix& M, int power) {
    RMatrix out = RMatrix::Identity(M.rows(), M.cols());
    for (int i = 0; i < power; ++i) out = out * M;
    return out.cast<Complex>();
}

CMatrix diag_of(const std::vector<double>& v) {
    CMatrix m = CMatrix::Zero(static_cast<Eigen::Index>(v.size()),
                              static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) m(i, i) = v[i];
    return m;
}

CMatrix sign_block(const Representation& rep, const BlockBasis& basis, int k) {
    std::vector<double> s;
    for (int r : basis.tuple(k)) s.push_back(rep.basis_sign.at(static_cast<std::size_t>(r)));
    return diag_of(s);
}

CMatrix inverse_of(const CMatrix& M) { return M.partialPivLu().inverse(); }

void check_k(const MVOPFamily& fam, int k) {
    if (k < 0 || k >= fam.K) {
        std::ostringstream os;
        os << "degree block " << k << " outside 0.." << fam.K - 1;
        throw DomainError(os.str());
    }
}

void check_j(const MVOPFamily& fam, int j) {
    if (j < 0 || j >= fam.S) {
        std::ostringstream os;
        os << "support block " << j << " outside 0.." << fam.S - 1;
        throw DomainError(os.str());
    }
}

}  // namespace

RecurrenceBlocks recurrence_blocks(const Representation& rep, const BlockBasis& layoutE,
                                   int power, int count) {
    if (power < 1) throw ParameterError("operator power must be positive");
    if (layoutE.dim() != rep.dim) throw ShapeError("block basis does not cover the representation");
    if (count < 1 || count > layoutE.count) throw ShapeError("block count outside basis range");

    const CMatrix Pn = matrix_power(rep.jacobiP.dense(), power);
    const double scale = std::max(max_abs(Pn), 1e-300);
    std::vector<CMatrix> e;
    for (int k = 0; k < count; ++k) e.push_back(basis_element(layoutE, k));

    RecurrenceBlocks out;
    const int n = layoutE.n;
    for (int k = 0; k < count; ++k) {
        const CMatrix Pe = Pn * e[k];
        out.A.push_back(k == 0 ? CMatrix::Zero(n, n) : gram_block(Pe, e[k - 1]));
        out.B.push_back(gram_block(Pe, e[k]));
        for (int l = 0; l < count; ++l) {
            if (std::abs(k - l) < 2) continue;
            out.band_defect = std::max(out.band_defect, max_abs(gram_block(Pe, e[l])) / scale);
        }
    }
    return out;
}

CMatrix alternant(const Representation& rep, const BlockBasis& layoutE,
                  const BlockBasis& layoutPhi, int j) {
    const auto& rows = layoutE.tuple(0);
    const auto& cols = layoutPhi.tuple(j);
    CMatrix L(layoutE.n, layoutPhi.n);
    for (int i = 0; i < layoutE.n; ++i)
        for (int l = 0; l < layoutPhi.n; ++l) L(i, l) = rep.poly(rows[i], cols[l]);
    return L;
}

CMatrix MVOPFamily::transition(int k, int j) const {
    check_k(*this, k);
    check_j(*this, j);
    const auto& r = layoutE.tuple(k);
    const auto& c = layoutPhi.tuple(j);
    CMatrix b(n, n);
    for (int i = 0; i < n; ++i)
        for (int l = 0; l < n; ++l) b(i, l) = U(r[i], c[l]);
    return b;
}

CMatrix MVOPFamily::R(int k, int j) const {
    check_k(*this, k);
    check_j(*this, j);
    const auto& r = layoutE.tuple(k);
    const auto& c = layoutPhi.tuple(j);
    CMatrix b(n, n);
    for (int i = 0; i < n; ++i)
        for (int l = 0; l < n; ++l) b(i, l) = rep.poly(r[i], c[l]);
    return b;
}

CMatrix MVOPFamily::pi_by_alternant(int k, int j) const {
    return R(k, j) * inverse_of(L[static_cast<std::size_t>(j)]);
}

std::vector<CMatrix> MVOPFamily::pi_sequence(int j) const {
    check_j(*this, j);
    const CMatrix& th = theta[static_cast<std::size_t>(j)];
    std::vector<CMatrix> pi;
    pi.push_back(CMatrix::Identity(n, n));
    CMatrix prev = CMatrix::Zero(n, n);
    for (int k = 0; k + 1 < K; ++k) {
        const CMatrix rhs = pi[k] * th - B[k] * pi[k] - A[k] * prev;
        pi.push_back(A[k + 1].adjoint().partialPivLu().solve(rhs));
        prev = pi[k];
    }
    return pi;
}

CMatrix MVOPFamily::pi_by_recurrence(int k, int j) const {
    if (k == -1) return CMatrix::Zero(n, n);
    check_k(*this, k);
    return pi_sequence(j)[static_cast<std::size_t>(k)];
}

MVOPFamily build_family(const Representation& rep, Layout layout, int n, int power,
                        const FamilyOptions& opts) {
    if (n < 1) throw ParameterError("block size n must be positive");
    MVOPFamily fam;
    fam.rep = rep;
    fam.n = n;
    fam.power = power;
    fam.truncated = rep.algebra == Algebra::SU11;
    if (fam.truncated && layout == Layout::Split)
        throw UnsupportedLayoutError("split layout needs a finite representation");

    fam.layoutE = make_block_basis(layout, rep.dim, n);
    fam.layoutPhi = make_block_basis(layout, rep.support, n);
    fam.S = fam.layoutPhi.count;
    const int max_k = rep.exact_rows / n;
    fam.K = opts.degree_blocks.value_or(max_k);
    if (fam.K < 1 || fam.K > max_k) {
        std::ostringstream os;
        os << "degree blocks " << fam.K << " outside 1.." << max_k;
        throw ParameterError(os.str());
    }

    const int band_count = fam.truncated ? std::min(fam.layoutE.count, fam.K + 1) : fam.K;
    RecurrenceBlocks rb = recurrence_blocks(rep, fam.layoutE, power, band_count);
    fam.band_defect = rb.band_defect;
    if (fam.band_defect > opts.band_tol && !opts.allow_band_defect) {
        std::ostringstream os;
        os << "P^" << power << " is not block tridiagonal in the " << to_string(layout)
           << " layout (off-band " << fam.band_defect << ")";
        throw ConsistencyError(os.str());
    }
    fam.A.assign(rb.A.begin(), rb.A.begin() + fam.K);
    fam.B.assign(rb.B.begin(), rb.B.begin() + fam.K);
    for (int k = 0; k < fam.K; ++k) {
        std::vector<double> d;
        for (int r : fam.layoutE.tuple(k)) d.push_back(std::pow(rep.lambda[r], power));
        fam.Lambda.push_back(diag_of(d));
    }

    const int rows = layout == Layout::Interleaved ? n * fam.K : rep.dim;
    fam.U = analytic_transition_matrix(rep, rows);

    std::vector<int> singular;
    for (int j = 0; j < fam.S; ++j) {
        const auto& cols = fam.layoutPhi.tuple(j);
        std::vector<double> a, w;
        for (int c : cols) {
            a.push_back(std::pow(rep.mu[c], power));
            w.push_back(rep.weight(c));
        }
        CMatrix Lj = alternant(rep, fam.layoutE, fam.layoutPhi, j);
        double hadamard = 1.0;
        for (int i = 0; i < n; ++i) hadamard *= Lj.row(i).norm();
        if (!(std::abs(Lj.determinant()) >= opts.singular_tol * hadamard)) singular.push_back(j);
        fam.alpha.push_back(diag_of(a));
        fam.D.push_back(diag_of(w));
        fam.L.push_back(std::move(Lj));
    }
    if (!singular.empty()) {
        std::ostringstream os;
        os << "singular alternant L(j) for j =";
        for (int j : singular) os << ' ' << j;
        os << " (" << to_string(rep.spec.kind);
        if (rep.spec.kind == FamilyKind::Krawtchouk) os << ", p=" << rep.spec.p << ", m=" << rep.spec.m;
        os << ")";
        throw SingularAlternantError(os.str(), singular);
    }
    for (int j = 0; j < fam.S; ++j) {
        const CMatrix& Lj = fam.L[j];
        fam.W.push_back(Lj * fam.D[j] * Lj.adjoint());
        fam.theta.push_back(Lj * fam.alpha[j] * inverse_of(Lj));
        CMatrix e0(n, n);
        const auto& r = fam.layoutE.tuple(0);
        const auto& c = fam.layoutPhi.tuple(j);
        for (int i = 0; i < n; ++i)
            for (int l = 0; l < n; ++l) e0(i, l) = fam.U(r[i], c[l]);
        fam.E0.push_back(std::move(e0));
    }
    return fam;
}

const CMatrix& weight_matrix(const MVOPFamily& fam, int j) {
    check_j(fam, j);
    return fam.W[static_cast<std::size_t>(j)];
}

const CMatrix& theta(const MVOPFamily& fam, int j) {
    check_j(fam, j);
    return fam.theta[static_cast<std::size_t>(j)];
}

CMatrix pi_by_recurrence(const MVOPFamily& fam, int k, int j) { return fam.pi_by_recurrence(k, j); }

CMatrix pi_by_alternant(const MVOPFamily& fam, int k, int j) { return fam.pi_by_alternant(k, j); }

double orthogonality_residual(const MVOPFamily& fam) {
    std::vector<std::vector<CMatrix>> pi(static_cast<std::size_t>(fam.S));
    for (int j = 0; j < fam.S; ++j)
        for (int k = 0; k < fam.K; ++k) pi[j].push_back(fam.pi_by_alternant(k, j));
    double worst = 0.0;
    for (int k = 0; k < fam.K; ++k) {
        for (int l = 0; l < fam.K; ++l) {
            CMatrix s = CMatrix::Zero(fam.n, fam.n);
            for (int j = 0; j < fam.S; ++j) s += pi[j][k] * fam.W[j] * pi[j][l].adjoint();
            if (k == l) s -= CMatrix::Identity(fam.n, fam.n);
            worst = std::max(worst, max_abs(s));
        }
    }
    return worst;
}

double r_orthogonality_residual(const MVOPFamily& fam) {
    double worst = 0.0;
    for (int k = 0; k < fam.K; ++k) {
        for (int m = 0; m < fam.K; ++m) {
            CMatrix s = CMatrix::Zero(fam.n, fam.n);
            for (int j = 0; j < fam.S; ++j) s += fam.R(k, j) * fam.D[j] * fam.R(m, j).adjoint();
            if (k == m) s -= CMatrix::Identity(fam.n, fam.n);
            worst = std::max(worst, max_abs(s));
        }
    }
    return worst;
}

double weight_sum_residual(const MVOPFamily& fam) {
    CMatrix s = -CMatrix::Identity(fam.n, fam.n);
    for (const auto& w : fam.W) s += w;
    return max_abs(s);
}

double weight_identity_residual(const MVOPFamily& fam) {
    double worst = 0.0;
    for (int j = 0; j < fam.S; ++j)
        worst = std::max(worst, max_abs(fam.W[j] - fam.E0[j] * fam.E0[j].adjoint()));
    return worst;
}

double two_path_residual(const MVOPFamily& fam) {
    double worst = 0.0;
    for (int j = 0; j < fam.S; ++j) {
        const auto seq = fam.pi_sequence(j);
        for (int k = 0; k < fam.K; ++k) {
            const CMatrix alt = fam.pi_by_alternant(k, j);
            worst = std::max(worst, max_abs(seq[k] - alt) / std::max(1.0, max_abs(alt)));
        }
    }
    return worst;
}

double recurrence_residual(const MVOPFamily& fam) {
    const int kmax = fam.truncated ? fam.K - 1 : fam.K;
    double worst = 0.0;
    for (int j = 0; j < fam.S; ++j) {
        const double scale = std::max(1.0, max_abs(fam.alpha[j]));
        for (int k = 0; k < kmax; ++k) {
            CMatrix lhs = fam.B[k] * fam.transition(k, j);
            if (k > 0) lhs += fam.A[k] * fam.transition(k - 1, j);
            if (k + 1 < fam.K) lhs += fam.A[k + 1].adjoint() * fam.transition(k + 1, j);
            const CMatrix rhs = fam.transition(k, j) * fam.alpha[j];
            worst = std::max(worst, max_abs(lhs - rhs) / scale);
        }
    }
    return worst;
}

double theta_similarity_residual(const MVOPFamily& fam) {
    double worst = 0.0;
    for (int j = 0; j < fam.S; ++j) {
        Eigen::ComplexEigenSolver<CMatrix> es(fam.theta[j]);
        std::vector<double> got, want;
        for (int i = 0; i < fam.n; ++i) {
            got.push_back(es.eigenvalues()(i).real());
            want.push_back(fam.alpha[j](i, i).real());
            worst = std::max(worst, std::abs(es.eigenvalues()(i).imag()));
        }
        std::sort(got.begin(), got.end());
        std::sort(want.begin(), want.end());
        const double scale = std::max(1.0, max_abs(fam.alpha[j]));
        for (int i = 0; i < fam.n; ++i) worst = std::max(worst, std::abs(got[i] - want[i]) / scale);
    }
    return worst;
}

DifferenceResidual difference_residual(const MVOPFamily& fam, int k) {
    check_k(fam, k);
    DifferenceResidual out;
    const double lam_scale = std::max(1.0, max_abs(fam.Lambda[k]));

    const CMatrix T = matrix_power(fam.rep.jacobiH_dual.dense(), fam.power);
    std::vector<CMatrix> E;
    for (int j = 0; j < fam.S; ++j) E.push_back(fam.transition(k, j));
    const int jd = fam.truncated ? fam.S - 1 : fam.S;
    for (int j = 0; j < jd; ++j) {
        CMatrix rhs = CMatrix::Zero(fam.n, fam.n);
        for (int jp = 0; jp < fam.S; ++jp) {
            const CMatrix C = block_of(T, fam.layoutPhi, jp, fam.layoutPhi, j);
            if (max_abs(C) == 0.0) continue;
            rhs += E[jp] * C;
        }
        out.derived_form =
            std::max(out.derived_form, max_abs(fam.Lambda[k] * E[j] - rhs) / lam_scale);
    }

    const int jp_max = std::min(fam.truncated ? fam.S - 1 : fam.S, fam.K);
    std::vector<CMatrix> pi;
    for (int j = 0; j < std::min(fam.S, jp_max + 1); ++j) pi.push_back(fam.pi_by_alternant(k, j));
    for (int j = 0; j < jp_max; ++j) {
        const CMatrix& e0 = fam.E0[j];
        CMatrix rhs = pi[j] * e0 * fam.B[j] * e0;
        if (j + 1 < jp_max) rhs += pi[j + 1] * fam.E0[j + 1] * fam.A[j + 1] * e0;
        if (j >= 1) rhs += pi[j - 1] * fam.E0[j - 1] * fam.A[j].adjoint() * e0;
        const CMatrix lhs = fam.Lambda[k] * pi[j];
        out.printed_form =
            std::max(out.printed_form, max_abs(lhs - rhs) / std::max(1.0, max_abs(lhs)));
    }
    return out;
}

DifferenceResidual difference_residual(const MVOPFamily& fam) {
    DifferenceResidual out;
    for (int k = 0; k < fam.K; ++k) {
        const auto r = difference_residual(fam, k);
        out.derived_form = std::max(out.derived_form, r.derived_form);
        out.printed_form = std::max(out.printed_form, r.printed_form);
    }
    return out;
}

MVOPFamily to_signed_frame(const MVOPFamily& fam) {
    MVOPFamily out = fam;
    Representation& rep = out.rep;
    for (int k = 0; k < rep.dim; ++k) rep.analytic_sign[k] *= rep.basis_sign[k];
    for (int k = 1; k < rep.dim; ++k)
        rep.jacobiP.offdiag[k - 1] *= rep.basis_sign[k - 1] * rep.basis_sign[k];
    for (int r = 0; r < out.U.rows(); ++r) out.U.row(r) *= rep.basis_sign[r];
    std::fill(rep.basis_sign.begin(), rep.basis_sign.end(), 1);

    std::vector<CMatrix> s;
    for (int k = 0; k < fam.K; ++k) s.push_back(sign_block(fam.rep, fam.layoutE, k));
    for (int k = 0; k < fam.K; ++k) {
        if (k > 0) out.A[k] = s[k] * fam.A[k] * s[k - 1];
        out.B[k] = s[k] * fam.B[k] * s[k];
    }
    for (int j = 0; j < fam.S; ++j) {
        out.L[j] = s[0] * fam.L[j];
        out.E0[j] = s[0] * fam.E0[j];
        out.W[j] = s[0] * fam.W[j] * s[0];
        out.theta[j] = s[0] * fam.theta[j] * s[0];
    }
    return out;
}

}  // namespace mvop
