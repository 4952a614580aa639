#include "mvop/presets.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "mvop/errors.hpp"

namespace mvop {

namespace {

double angle_from_p(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        std::ostringstream os;
        os << "krawtchouk parameter p must lie in (0,1), got " << p;
        throw ParameterError(os.str());
    }
    return std::acos(2.0 * p - 1.0);
}

double angle_from_c(double c) {
    if (!(c > 0.0 && c < 1.0)) {
        std::ostringstream os;
        os << "meixner parameter c must lie in (0,1), got " << c;
        throw ParameterError(os.str());
    }
    return 2.0 * std::atanh(std::sqrt(c));
}

void require_one(const std::optional<double>& x, const std::optional<double>& y, const char* xs,
                 const char* ys) {
    if (x && y) {
        std::ostringstream os;
        os << "give either --" << xs << " or --" << ys << ", not both";
        throw ParameterError(os.str());
    }
    if (!x && !y) {
        std::ostringstream os;
        os << "one of --" << xs << " or --" << ys << " is required";
        throw ParameterError(os.str());
    }
}

void reject(bool present, const char* flag, PresetKind kind) {
    if (present) {
        std::ostringstream os;
        os << "--" << flag << " does not apply to preset " << to_string(kind);
        throw ParameterError(os.str());
    }
}

}  // namespace

std::string to_string(PresetKind kind) {
    switch (kind) {
        case PresetKind::KrawtchoukInterleaved: return "krawtchouk-interleaved";
        case PresetKind::KrawtchoukSplit: return "krawtchouk-split";
        case PresetKind::MeixnerInterleaved: return "meixner-interleaved";
        case PresetKind::Chebyshev: return "chebyshev";
    }
    return "unknown";
}

PresetKind parse_preset(const std::string& name) {
    for (auto k : {PresetKind::KrawtchoukInterleaved, PresetKind::KrawtchoukSplit,
                   PresetKind::MeixnerInterleaved, PresetKind::Chebyshev}) {
        if (to_string(k) == name) return k;
    }
    throw ParameterError("unknown preset '" + name +
                         "' (krawtchouk-interleaved, krawtchouk-split, meixner-interleaved, "
                         "chebyshev)");
}

PresetParams resolve(const PresetParams& in) {
    PresetParams r = in;
    if (r.n < 1) throw ParameterError("block size n must be positive");
    switch (r.kind) {
        case PresetKind::KrawtchoukInterleaved:
        case PresetKind::KrawtchoukSplit: {
            reject(r.beta.has_value(), "beta", r.kind);
            reject(r.c.has_value(), "c", r.kind);
            reject(r.d.has_value(), "d", r.kind);
            reject(r.b.has_value(), "b", r.kind);
            require_one(r.a, r.p, "a", "p");
            if (r.kind == PresetKind::KrawtchoukSplit && r.n != 2)
                throw UnsupportedLayoutError("krawtchouk-split is defined for n = 2 only");
            if (r.m && r.N) {
                if (*r.m != r.n * *r.N + r.n - 1)
                    throw ParameterError("--m and --N disagree (m = nN + n - 1)");
            } else if (r.m) {
                if ((*r.m + 1) % r.n != 0)
                    throw FreeModuleError("n must divide m + 1");
                r.N = (*r.m + 1) / r.n - 1;
            } else {
                r.N = r.N.value_or(3);
                r.m = r.n * *r.N + r.n - 1;
            }
            if (*r.N < 0 || *r.m < 1) throw ParameterError("krawtchouk needs N >= 0 and m >= 1");
            if (r.p) angle_from_p(*r.p);
            break;
        }
        case PresetKind::MeixnerInterleaved: {
            reject(r.p.has_value(), "p", r.kind);
            reject(r.m.has_value(), "m", r.kind);
            reject(r.d.has_value(), "d", r.kind);
            reject(r.b.has_value(), "b", r.kind);
            require_one(r.a, r.c, "a", "c");
            if (!r.beta) throw ParameterError("--beta is required for meixner-interleaved");
            if (!(*r.beta > 0.0)) throw ParameterError("meixner parameter beta must be positive");
            r.N = r.N.value_or(6);
            if (*r.N < 0) throw ParameterError("--N must be non-negative");
            if (!(r.tail_tol > 0.0)) throw ParameterError("--tail-tol must be positive");
            if (r.c) angle_from_c(*r.c);
            break;
        }
        case PresetKind::Chebyshev: {
            reject(r.a.has_value(), "a", r.kind);
            reject(r.p.has_value(), "p", r.kind);
            reject(r.c.has_value(), "c", r.kind);
            reject(r.m.has_value(), "m", r.kind);
            reject(r.beta.has_value(), "beta", r.kind);
            if (!r.N) throw ParameterError("--N is required for chebyshev");
            r.d = r.d.value_or(*r.N - 2);
            r.b = r.b.value_or(0.0);
            if (*r.d < 1 || *r.d > *r.N - 1)
                throw ParameterError("chebyshev needs 1 <= d <= N-1");
            break;
        }
    }
    return r;
}

Representation build_preset_representation(const PresetParams& params) {
    const PresetParams r = resolve(params);
    switch (r.kind) {
        case PresetKind::KrawtchoukInterleaved:
        case PresetKind::KrawtchoukSplit:
            return build_su2(*r.m, r.a ? *r.a : angle_from_p(*r.p));
        case PresetKind::MeixnerInterleaved:
            return build_su11(*r.beta, r.a ? *r.a : angle_from_c(*r.c), r.tail_tol, r.n, *r.N);
        case PresetKind::Chebyshev:
            return build_soq3(*r.N, *r.d, *r.b);
    }
    throw ParameterError("unknown preset");
}

MVOPFamily build_preset(const PresetParams& params) {
    const PresetParams r = resolve(params);
    const Representation rep = build_preset_representation(r);
    FamilyOptions opts;
    switch (r.kind) {
        case PresetKind::KrawtchoukInterleaved:
            return build_family(rep, Layout::Interleaved, r.n, r.n, opts);
        case PresetKind::KrawtchoukSplit:
            opts.allow_band_defect = true;
            return build_family(rep, Layout::Split, 2, 1, opts);
        case PresetKind::MeixnerInterleaved:
            opts.degree_blocks = *r.N + 1;
            return build_family(rep, Layout::Interleaved, r.n, r.n, opts);
        case PresetKind::Chebyshev:
            return build_family(rep, Layout::Interleaved, r.n, r.n, opts);
    }
    throw ParameterError("unknown preset");
}

std::map<std::string, double> parameter_map(const PresetParams& params, const MVOPFamily& fam) {
    const PresetParams r = resolve(params);
    const ScalarFamilySpec& s = fam.rep.spec;
    std::map<std::string, double> out;
    out["n"] = r.n;
    if (r.N) out["N"] = *r.N;
    switch (s.kind) {
        case FamilyKind::Krawtchouk:
            out["m"] = s.m;
            out["p"] = s.p;
            out["a"] = *s.a;
            break;
        case FamilyKind::Meixner:
            out["beta"] = s.beta;
            out["c"] = s.c;
            out["a"] = *s.a;
            out["tail_tol"] = r.tail_tol;
            break;
        case FamilyKind::QUltraspherical:
            out["d"] = s.d;
            out["b"] = s.b;
            out["beta"] = s.beta;
            out["omega"] = s.omega;
            break;
    }
    return out;
}

std::map<std::string, double> ResidualReport::as_map() const {
    return {{"orthogonality", orthogonality},
            {"recurrence", recurrence},
            {"difference_derived", difference_derived},
            {"difference_printed", difference_printed},
            {"weight_identity", weight_identity},
            {"two_path", two_path}};
}

ResidualReport compute_residuals(const MVOPFamily& fam) {
    ResidualReport r;
    r.orthogonality = orthogonality_residual(fam);
    r.recurrence = recurrence_residual(fam);
    const auto d = difference_residual(fam);
    r.difference_derived = d.derived_form;
    r.difference_printed = d.printed_form;
    r.weight_identity = weight_identity_residual(fam);
    r.two_path = two_path_residual(fam);
    return r;
}

Thresholds default_thresholds(PresetKind kind) {
    Thresholds t;
    const bool meixner = kind == PresetKind::MeixnerInterleaved;
    t.limit = {{"orthogonality", meixner ? 1e-8 : 1e-10},
               {"recurrence", meixner ? 1e-8 : 1e-10},
               {"difference_derived", 1e-9},
               {"difference_printed", 1e-9},
               {"weight_identity", 1e-12},
               {"two_path", meixner ? 1e-8 : 1e-9}};
    t.asserted = {"orthogonality", "recurrence", "difference_derived", "weight_identity",
                  "two_path"};
    if (kind == PresetKind::KrawtchoukSplit) {
        t.asserted.erase("recurrence");
        t.asserted.erase("two_path");
    }
    return t;
}

}  // namespace mvop
