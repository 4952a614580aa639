#include "mvop/closed_forms.hpp"

#include <cmath>

#include "mvop/errors.hpp"
#include "mvop/scalar_families.hpp"

namespace mvop {

namespace {

double kraw_lambda(int N, int k) { return 2.0 * k - 2.0 * N - 1.0; }

double kraw_rho(int N, int k) {
    if (k < 1 || k > 2 * N + 1) return 0.0;
    return std::sqrt(double(k) * (2 * N + 2 - k));
}

double meix_lambda(double beta, int k) { return 0.5 * beta + k; }

double meix_rho(double beta, int k) {
    if (k < 1) return 0.0;
    return std::sqrt(double(k) * (beta + k - 1));
}

CMatrix mat2(double a, double b, double c, double d) {
    CMatrix m(2, 2);
    m << a, b, c, d;
    return m;
}

double split_gap(int N, int j, double p) {
    const int m = 2 * N + 1;
    return krawtchouk_eval(N + 1, j + N + 1, p, m) - krawtchouk_eval(N + 1, j, p, m);
}

}  // namespace

CMatrix krawtchouk_A_display(int N, double a, int k) {
    const double s = std::sin(a);
    const double c = std::cos(a);
    return mat2(s * s * kraw_rho(N, 2 * k) * kraw_rho(N, 2 * k - 1),
                s * c * kraw_rho(N, 2 * k) * (kraw_lambda(N, 2 * k) + kraw_lambda(N, 2 * k - 1)),
                0.0, s * s * kraw_rho(N, 2 * k) * kraw_rho(N, 2 * k + 1));
}

CMatrix krawtchouk_B_display(int N, double a, int k) {
    const double s2 = std::sin(a) * std::sin(a);
    const double c2 = std::cos(a) * std::cos(a);
    const double sc = std::sin(a) * std::cos(a);
    const double r0 = kraw_rho(N, 2 * k);
    const double r1 = kraw_rho(N, 2 * k + 1);
    const double r2 = kraw_rho(N, 2 * k + 2);
    const double l0 = kraw_lambda(N, 2 * k);
    const double l1 = kraw_lambda(N, 2 * k + 1);
    const double off = sc * (l0 * r1 + r1 * l1);
    return mat2(s2 * r0 * r0 + s2 * r1 * r1 + c2 * l0 * l0, off, off,
                s2 * r1 * r1 + s2 * r2 * r2 + c2 * l1 * l1);
}

CMatrix krawtchouk_theta_display(double p, int N, int j) {
    return mat2((4 * p - 2) * N + 2 * p - 1, -2 * p * (2 * N + 1),
                (4 * N * p - 4 * j + 2 * p) * (2 * N * p - 2 * j + p - 1) / (2 * N * p + p),
                (-4 * p - 2) * N + 8 * j - 2 * p + 1);
}

CMatrix meixner_A_display(double beta, double a, int k) {
    const double sh = std::sinh(a);
    const double ch = std::cosh(a);
    return mat2(0.25 * sh * sh * meix_rho(beta, 2 * k) * meix_rho(beta, 2 * k - 1),
                -0.5 * sh * ch * meix_rho(beta, 2 * k) *
                    (meix_lambda(beta, 2 * k) + meix_lambda(beta, 2 * k - 1)),
                0.0, 0.25 * sh * sh * meix_rho(beta, 2 * k) * meix_rho(beta, 2 * k + 1));
}

CMatrix meixner_B_display(double beta, double a, int k) {
    const double sh = std::sinh(a);
    const double ch = std::cosh(a);
    const double r0 = meix_rho(beta, 2 * k);
    const double r1 = meix_rho(beta, 2 * k + 1);
    const double r2 = meix_rho(beta, 2 * k + 2);
    const double l0 = meix_lambda(beta, 2 * k);
    const double l1 = meix_lambda(beta, 2 * k + 1);
    const double off = -0.5 * sh * ch * (l0 * r1 + r1 * l1);
    return mat2(0.25 * sh * sh * (r0 * r0 + r1 * r1) + ch * ch * l0 * l0, off, off,
                0.25 * sh * sh * (r1 * r1 + r2 * r2) + ch * ch * l1 * l1);
}

CMatrix chebyshev_A_display(int N, int d, double b, int k) {
    auto r = [&](int i) { return q_ultraspherical_rho(N, d, i); };
    return mat2(r(2 * k) * r(2 * k - 1), 2 * b * r(2 * k), 0.0, r(2 * k) * r(2 * k + 1));
}

CMatrix chebyshev_B_display(int N, int d, double b, int k) {
    auto r = [&](int i) { return q_ultraspherical_rho(N, d, i); };
    const double r0 = r(2 * k);
    const double r1 = r(2 * k + 1);
    const double r2 = r(2 * k + 2);
    return mat2(r0 * r0 + r1 * r1 + b * b, 2 * b * r1, 2 * b * r1, r1 * r1 + r2 * r2 + b * b);
}

CMatrix chebyshev_A_constant(double b) { return mat2(0.25, -b, 0.0, 0.25); }

CMatrix chebyshev_B_constant(double b) { return mat2(0.5 + b * b, -b, -b, 0.5 + b * b); }

CMatrix split_A_display(int N, int k) {
    return mat2(kraw_rho(N, k), 0.0, 0.0, kraw_rho(N, k + N + 1));
}

CMatrix split_B_display(int N, int k) {
    return mat2(kraw_lambda(N, k), 0.0, 0.0, kraw_lambda(N, k + N + 1));
}

CMatrix split_alternant_display(double p, int N, int j) {
    const int m = 2 * N + 1;
    const auto spec = ScalarFamilySpec::krawtchouk(p, m);
    const double s = 1.0 / std::sqrt(scalar_norm(spec, N + 1));
    return mat2(1.0, 1.0, s * krawtchouk_eval(N + 1, j, p, m),
                s * krawtchouk_eval(N + 1, j + N + 1, p, m));
}

CMatrix theta_printed(const MVOPFamily& fam, int j) {
    const auto& cols = fam.layoutPhi.tuple(j);
    CMatrix a = CMatrix::Zero(fam.n, fam.n);
    for (int l = 0; l < fam.n; ++l) a(l, l) = fam.rep.mu_printed[cols[l]];
    const CMatrix& L = fam.L.at(static_cast<std::size_t>(j));
    return L * a * L.partialPivLu().inverse();
}

CMatrix to_display_frame(const CMatrix& M, double h1) {
    if (M.rows() != 2 || M.cols() != 2) throw ShapeError("display frame is defined for 2x2 blocks");
    CMatrix out = M;
    out(0, 1) /= std::sqrt(h1);
    out(1, 0) *= std::sqrt(h1);
    return out;
}

CMatrix alternant_unit_row(const MVOPFamily& fam, int j) {
    CMatrix L = fam.L.at(static_cast<std::size_t>(j));
    const auto& rows = fam.layoutE.tuple(0);
    for (int i = 0; i < fam.n; ++i) L.row(i) *= std::sqrt(fam.rep.norm(rows[i]));
    return L;
}

std::optional<SplitRoot> split_singular_scan(int N, double p_lo, double p_hi, int samples) {
    if (!(p_lo > 0.0 && p_hi < 1.0 && p_lo < p_hi) || samples < 2)
        throw ParameterError("scan interval must lie inside (0,1)");
    double prev_p = p_lo;
    std::vector<double> prev(static_cast<std::size_t>(N + 1));
    for (int j = 0; j <= N; ++j) prev[j] = split_gap(N, j, prev_p);
    for (int s = 1; s <= samples; ++s) {
        const double p = p_lo + (p_hi - p_lo) * s / samples;
        for (int j = 0; j <= N; ++j) {
            const double g = split_gap(N, j, p);
            if ((g <= 0.0) != (prev[j] <= 0.0)) {
                double lo = prev_p;
                double hi = p;
                double glo = prev[j];
                for (int it = 0; it < 200 && hi - lo > 1e-17; ++it) {
                    const double mid = 0.5 * (lo + hi);
                    const double gm = split_gap(N, j, mid);
                    if ((gm <= 0.0) == (glo <= 0.0)) {
                        lo = mid;
                        glo = gm;
                    } else {
                        hi = mid;
                    }
                }
                return SplitRoot{std::abs(split_gap(N, j, lo)) < std::abs(split_gap(N, j, hi)) ? lo : hi,
                                 j};
            }
            prev[j] = g;
        }
        prev_p = p;
    }
    return std::nullopt;
}

}  // namespace mvop
