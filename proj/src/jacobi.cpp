#include "mvop/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "mvop/errors.hpp"

namespace mvop {

double JacobiOperator::a(int k) const {
    if (k < 1 || k >= dim()) return 0.0;
    return offdiag[static_cast<std::size_t>(k - 1)];
}

double JacobiOperator::b(int k) const {
    if (k < 0 || k >= dim()) return 0.0;
    return diag[static_cast<std::size_t>(k)];
}

RMatrix JacobiOperator::dense() const {
    const int n = dim();
    RMatrix m = RMatrix::Zero(n, n);
    for (int k = 0; k < n; ++k) m(k, k) = diag[k];
    for (int k = 1; k < n; ++k) {
        m(k - 1, k) = offdiag[k - 1];
        m(k, k - 1) = offdiag[k - 1];
    }
    return m;
}

JacobiOperator JacobiOperator::negated() const {
    JacobiOperator r = *this;
    for (auto& v : r.diag) v = -v;
    for (auto& v : r.offdiag) v = -v;
    return r;
}

JacobiOperator JacobiOperator::truncated(int n) const {
    if (n < 1 || n > dim()) throw ShapeError("truncation size outside operator dimension");
    JacobiOperator r;
    r.diag.assign(diag.begin(), diag.begin() + n);
    r.offdiag.assign(offdiag.begin(), offdiag.begin() + (n - 1));
    return r;
}

std::vector<double> jacobi_recurrence_values(const JacobiOperator& J, int kmax, double x,
                                             double h0) {
    if (kmax < 0 || kmax >= J.dim()) {
        std::ostringstream os;
        os << "recurrence degree " << kmax << " outside operator range 0.." << J.dim() - 1;
        throw DomainError(os.str());
    }
    if (!(h0 > 0.0)) throw ParameterError("h0 must be positive");
    std::vector<double> p(static_cast<std::size_t>(kmax) + 1);
    p[0] = 1.0 / std::sqrt(h0);
    double prev = 0.0;
    for (int k = 0; k < kmax; ++k) {
        const double next_a = J.a(k + 1);
        if (next_a == 0.0) {
            std::ostringstream os;
            os << "zero off-diagonal a_" << k + 1 << " in recurrence";
            throw DegenerateOperatorError(os.str());
        }
        const double v = ((x - J.b(k)) * p[k] - J.a(k) * prev) / next_a;
        prev = p[k];
        p[k + 1] = v;
    }
    return p;
}

double jacobi_recurrence_eval(const JacobiOperator& J, int k, double x, double h0) {
    return jacobi_recurrence_values(J, k, x, h0).back();
}

TridiagEigen tridiag_eigensolve(const JacobiOperator& J) {
    const int n = J.dim();
    if (n < 1) throw ShapeError("eigensolve needs dim >= 1");
    if (static_cast<int>(J.offdiag.size()) != n - 1)
        throw ShapeError("off-diagonal length must be dim-1");

    std::vector<double> d(J.diag);
    std::vector<double> e(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i + 1 < n; ++i) e[i] = J.offdiag[i];
    RMatrix z = RMatrix::Identity(n, n);

    const int cap = 50 * n;
    int total = 0;
    for (int l = 0; l < n; ++l) {
        for (;;) {
            int m = l;
            for (; m < n - 1; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= std::numeric_limits<double>::epsilon() * dd) break;
            }
            if (m == l) break;
            if (++total > cap) {
                std::ostringstream os;
                os << "tridiagonal QL did not converge: eigenvalue " << l << " after " << total
                   << " iterations, residual off-diagonal " << e[l];
                throw NumericError(os.str());
            }
            // Wilkinson shift from the leading 2x2.
            double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            double r = std::hypot(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
            double s = 1.0;
            double c = 1.0;
            double p = 0.0;
            int i = m - 1;
            bool underflow = false;
            for (; i >= l; --i) {
                double f = s * e[i];
                const double bb = c * e[i];
                r = std::hypot(f, g);
                e[i + 1] = r;
                if (r == 0.0) {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * bb;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - bb;
                for (int k = 0; k < n; ++k) {
                    f = z(k, i + 1);
                    z(k, i + 1) = s * z(k, i) + c * f;
                    z(k, i) = c * z(k, i) - s * f;
                }
            }
            if (underflow) continue;
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }

    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int x, int y) { return d[x] < d[y]; });
    TridiagEigen out;
    out.values.resize(static_cast<std::size_t>(n));
    out.vectors.resize(n, n);
    for (int i = 0; i < n; ++i) {
        out.values[i] = d[order[i]];
        out.vectors.col(i) = z.col(order[i]);
    }
    out.iterations = total;
    return out;
}

}  // namespace mvop
