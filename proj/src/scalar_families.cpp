#include "mvop/scalar_families.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "mvop/errors.hpp"
#include "mvop/kahan.hpp"

namespace mvop {

namespace {

void check_p(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        std::ostringstream os;
        os << "krawtchouk parameter p must lie in (0,1), got " << p;
        throw ParameterError(os.str());
    }
}

void check_meixner(double beta, double c) {
    if (!(beta > 0.0)) {
        std::ostringstream os;
        os << "meixner parameter beta must be positive, got " << beta;
        throw ParameterError(os.str());
    }
    if (!(c > 0.0 && c < 1.0)) {
        std::ostringstream os;
        os << "meixner parameter c must lie in (0,1), got " << c;
        throw ParameterError(os.str());
    }
}

void check_q(int N, int d) {
    if (N < 2 || d < 1 || d > N - 1) {
        std::ostringstream os;
        os << "q-ultraspherical needs 1 <= d <= N-1, got N=" << N << " d=" << d;
        throw ParameterError(os.str());
    }
}

void check_index(const char* what, int i, int lo, int hi) {
    if (i < lo || i > hi) {
        std::ostringstream os;
        os << what << " index " << i << " outside [" << lo << ", " << hi << "]";
        throw DomainError(os.str());
    }
}

// Terminating 2F1(-j,-k;g;z) where g is the lower parameter.
double terminating_2f1(int j, int k, double g, double z) {
    KahanSum sum;
    double term = 1.0;
    const int top = std::min(j, k);
    for (int i = 0; i <= top; ++i) {
        sum += term;
        if (i < top) term *= (double(i - j) * double(i - k)) / ((g + i) * (i + 1)) * z;
    }
    return sum.value();
}

double log_binomial(int m, int j) {
    return std::lgamma(m + 1.0) - std::lgamma(j + 1.0) - std::lgamma(m - j + 1.0);
}

double q_beta(int N, int d) { return 0.5 * (N - d); }

}  // namespace

std::string to_string(FamilyKind kind) {
    switch (kind) {
        case FamilyKind::Krawtchouk: return "krawtchouk";
        case FamilyKind::Meixner: return "meixner";
        case FamilyKind::QUltraspherical: return "q-ultraspherical";
    }
    return "unknown";
}

ScalarFamilySpec ScalarFamilySpec::krawtchouk(double p, int m) {
    ScalarFamilySpec s;
    s.kind = FamilyKind::Krawtchouk;
    s.p = p;
    s.m = m;
    s.validate();
    return s;
}

ScalarFamilySpec ScalarFamilySpec::krawtchouk_from_angle(double a, int m) {
    ScalarFamilySpec s;
    s.kind = FamilyKind::Krawtchouk;
    s.p = 0.5 * (1.0 + std::cos(a));
    s.m = m;
    s.a = a;
    s.validate();
    return s;
}

ScalarFamilySpec ScalarFamilySpec::meixner(double beta, double c) {
    ScalarFamilySpec s;
    s.kind = FamilyKind::Meixner;
    s.beta = beta;
    s.c = c;
    s.validate();
    return s;
}

ScalarFamilySpec ScalarFamilySpec::meixner_from_angle(double beta, double a) {
    if (a == 0.0) throw ParameterError("meixner angle a must be nonzero");
    ScalarFamilySpec s;
    s.kind = FamilyKind::Meixner;
    s.beta = beta;
    const double t = (std::cosh(a) - 1.0) / std::sinh(a);
    s.c = t * t;
    s.a = a;
    s.validate();
    return s;
}

ScalarFamilySpec ScalarFamilySpec::q_ultraspherical(int N, int d, double b) {
    ScalarFamilySpec s;
    s.kind = FamilyKind::QUltraspherical;
    s.N = N;
    s.d = d;
    s.b = b;
    s.beta = q_beta(N, d);
    s.omega = N > 0 ? std::numbers::pi / N : 0.0;
    s.validate();
    return s;
}

void ScalarFamilySpec::validate() const {
    switch (kind) {
        case FamilyKind::Krawtchouk:
            check_p(p);
            if (m < 0) throw ParameterError("krawtchouk parameter m must be non-negative");
            if (a && std::abs(p - 0.5 * (1.0 + std::cos(*a))) > 1e-14)
                throw ParameterError("krawtchouk p inconsistent with angle a");
            break;
        case FamilyKind::Meixner:
            check_meixner(beta, c);
            if (a) {
                const double t = (std::cosh(*a) - 1.0) / std::sinh(*a);
                if (std::abs(c - t * t) > 1e-14)
                    throw ParameterError("meixner c inconsistent with angle a");
            }
            break;
        case FamilyKind::QUltraspherical:
            check_q(N, d);
            if (omega != std::numbers::pi / N)
                throw ParameterError("q-ultraspherical omega must equal pi/N");
            if (beta != q_beta(N, d))
                throw ParameterError("q-ultraspherical beta must equal (N-d)/2");
            break;
    }
}

std::optional<int> ScalarFamilySpec::support_size() const {
    switch (kind) {
        case FamilyKind::Krawtchouk: return m + 1;
        case FamilyKind::Meixner: return std::nullopt;
        case FamilyKind::QUltraspherical: return d + 1;
    }
    return std::nullopt;
}

double krawtchouk_eval(int k, int j, double p, int m) {
    check_p(p);
    if (m < 0) throw ParameterError("krawtchouk parameter m must be non-negative");
    check_index("krawtchouk degree", k, 0, m);
    check_index("krawtchouk point", j, 0, m);
    return terminating_2f1(j, k, -double(m), 1.0 / p);
}

double meixner_eval(int k, int j, double beta, double c) {
    check_meixner(beta, c);
    if (k < 0 || j < 0) throw DomainError("meixner indices must be non-negative");
    return terminating_2f1(j, k, beta, 1.0 - 1.0 / c);
}

double chebyshev_finite_eval(int k, int j, int N) {
    if (N < 3) throw ParameterError("finite chebyshev needs N >= 3");
    check_index("chebyshev degree", k, 0, N - 2);
    check_index("chebyshev point", j, 0, N - 2);
    const double w = std::numbers::pi / N;
    const double den = std::sin(w * (j + 1));
    if (den == 0.0) throw NumericError("finite chebyshev denominator vanishes");
    return std::sin(w * (k + 1) * (j + 1)) / den;
}

double q_ultraspherical_rho(int N, int d, int k) {
    check_q(N, d);
    if (k <= 0 || k > d) return 0.0;
    const double w = std::numbers::pi / N;
    const double beta = q_beta(N, d);
    const double s = std::sin(w);
    const double num = std::sin(w * k) * std::sin(w * (k + 2.0 * beta - 1.0));
    const double den = 4.0 * s * s * std::sin(w * (k + beta)) * std::sin(w * (k + beta - 1.0));
    const double r = num / den;
    if (!(r > 0.0)) {
        std::ostringstream os;
        os << "so_q(3) coupling radicand not positive at k=" << k << " (N=" << N << ", d=" << d
           << ")";
        throw ParameterError(os.str());
    }
    return std::sqrt(r);
}

double q_ultraspherical_eval(int k, int j, int N, int d) {
    check_q(N, d);
    check_index("q-ultraspherical degree", k, 0, d);
    check_index("q-ultraspherical point", j, 0, d);
    const double w = std::numbers::pi / N;
    const double x = 2.0 * std::cos(w * (j + q_beta(N, d)));
    const double s2 = 4.0 * std::sin(w) * std::sin(w);
    double prev = 0.0;
    double cur = 1.0;
    for (int i = 0; i < k; ++i) {
        const double r = q_ultraspherical_rho(N, d, i);
        const double next = x * cur - s2 * r * r * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

double scalar_poly(const ScalarFamilySpec& spec, int k, int j) {
    switch (spec.kind) {
        case FamilyKind::Krawtchouk: return krawtchouk_eval(k, j, spec.p, spec.m);
        case FamilyKind::Meixner: return meixner_eval(k, j, spec.beta, spec.c);
        case FamilyKind::QUltraspherical: return q_ultraspherical_eval(k, j, spec.N, spec.d);
    }
    return 0.0;
}

double scalar_weight(const ScalarFamilySpec& spec, int j) {
    switch (spec.kind) {
        case FamilyKind::Krawtchouk: {
            check_p(spec.p);
            check_index("krawtchouk point", j, 0, spec.m);
            return std::exp(log_binomial(spec.m, j) + j * std::log(spec.p) +
                            (spec.m - j) * std::log1p(-spec.p));
        }
        case FamilyKind::Meixner: {
            check_meixner(spec.beta, spec.c);
            if (j < 0) throw DomainError("meixner point must be non-negative");
            return std::exp(std::lgamma(spec.beta + j) - std::lgamma(spec.beta) -
                            std::lgamma(j + 1.0) + j * std::log(spec.c));
        }
        case FamilyKind::QUltraspherical: {
            check_q(spec.N, spec.d);
            check_index("q-ultraspherical point", j, 0, spec.d);
            const double w = std::numbers::pi / spec.N;
            double v = std::sin(w * (j + spec.beta));
            for (int l = 1; l <= spec.N - spec.d - 1; ++l) v *= std::sin(w * (j + l));
            if (!(v > 0.0)) {
                std::ostringstream os;
                os << "q-ultraspherical weight not positive at j=" << j;
                throw ParameterError(os.str());
            }
            return v;
        }
    }
    return 0.0;
}

double scalar_norm(const ScalarFamilySpec& spec, int k) {
    switch (spec.kind) {
        case FamilyKind::Krawtchouk: {
            check_p(spec.p);
            check_index("krawtchouk degree", k, 0, spec.m);
            return std::exp(k * (std::log1p(-spec.p) - std::log(spec.p)) -
                            log_binomial(spec.m, k));
        }
        case FamilyKind::Meixner: {
            check_meixner(spec.beta, spec.c);
            if (k < 0) throw DomainError("meixner degree must be non-negative");
            return std::exp(std::lgamma(k + 1.0) - std::lgamma(spec.beta + k) +
                            std::lgamma(spec.beta) - spec.beta * std::log1p(-spec.c) -
                            k * std::log(spec.c));
        }
        case FamilyKind::QUltraspherical: {
            check_index("q-ultraspherical degree", k, 0, spec.d);
            KahanSum sum;
            for (int j = 0; j <= spec.d; ++j) {
                const double v = q_ultraspherical_eval(k, j, spec.N, spec.d);
                sum += v * v * scalar_weight(spec, j);
            }
            return sum.value();
        }
    }
    return 0.0;
}

double weight_total(const ScalarFamilySpec& spec) {
    switch (spec.kind) {
        case FamilyKind::Krawtchouk: return 1.0;
        case FamilyKind::Meixner: return std::pow(1.0 - spec.c, -spec.beta);
        case FamilyKind::QUltraspherical: {
            KahanSum sum;
            for (int j = 0; j <= spec.d; ++j) sum += scalar_weight(spec, j);
            return sum.value();
        }
    }
    return 0.0;
}

double orthonormal_poly(const ScalarFamilySpec& spec, int k, int j) {
    return scalar_poly(spec, k, j) / std::sqrt(scalar_norm(spec, k));
}

}  // namespace mvop
