#include "mvop/cli.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "mvop/document.hpp"
#include "mvop/equivalence.hpp"
#include "mvop/errors.hpp"
#include "mvop/presets.hpp"

namespace mvop::cli {

namespace {

struct GenerateArgs {
    std::string preset;
    std::optional<int> n, N, m, d;
    std::optional<double> a, p, beta, c, b;
    double tail_tol = 1e-14;
    std::string out;
    std::string format = "json";
};

struct VerifyArgs {
    std::string in;
    std::vector<std::string> tol;
};

struct EquivalenceArgs {
    std::string a;
    std::string b;
    std::vector<std::string> tol;
};

struct PlotArgs {
    std::string in;
    std::string series;
    std::string entry = "0,0";
    std::optional<int> j;
    std::string out;
    std::string svg;
    std::string format = "csv";
};

std::string fmt(double v) {
    std::ostringstream os;
    os << std::setprecision(3) << std::scientific << v;
    return os.str();
}

std::map<std::string, double> parse_tols(const std::vector<std::string>& items) {
    std::map<std::string, double> out;
    for (const auto& item : items) {
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0)
            throw ParameterError("--tol expects KEY=VALUE, got '" + item + "'");
        const std::string key = item.substr(0, eq);
        try {
            std::size_t used = 0;
            const double v = std::stod(item.substr(eq + 1), &used);
            if (used != item.size() - eq - 1 || !(v > 0.0)) throw std::invalid_argument(item);
            out[key] = v;
        } catch (const std::logic_error&) {
            throw ParameterError("--tol value for '" + key + "' must be a positive number");
        }
    }
    return out;
}

PresetParams to_params(const GenerateArgs& g) {
    PresetParams p;
    p.kind = parse_preset(g.preset);
    if (g.n) p.n = *g.n;
    p.N = g.N;
    p.m = g.m;
    p.d = g.d;
    p.a = g.a;
    p.p = g.p;
    p.beta = g.beta;
    p.c = g.c;
    p.b = g.b;
    p.tail_tol = g.tail_tol;
    return resolve(p);
}

struct CheckRow {
    std::string name;
    double value;
    std::optional<double> limit;
    bool pass;
};

bool print_checks(const std::vector<CheckRow>& rows, std::ostream& out) {
    bool all = true;
    out << std::left << std::setw(22) << "check" << std::setw(12) << "value" << std::setw(12)
        << "limit" << "status\n";
    for (const auto& r : rows) {
        out << std::left << std::setw(22) << r.name << std::setw(12) << fmt(r.value)
            << std::setw(12) << (r.limit ? fmt(*r.limit) : std::string("-"))
            << (r.limit ? (r.pass ? "PASS" : "FAIL") : "INFO") << "\n";
        if (r.limit && !r.pass) all = false;
    }
    return all;
}

std::vector<CheckRow> residual_checks(const std::map<std::string, double>& residuals,
                                      const Thresholds& t,
                                      const std::map<std::string, double>& overrides) {
    std::vector<CheckRow> rows;
    for (const auto& [name, value] : residuals) {
        CheckRow r{name, value, std::nullopt, true};
        if (t.asserted.count(name) || overrides.count(name)) {
            const auto o = overrides.find(name);
            r.limit = o != overrides.end() ? o->second : t.limit.at(name);
            r.pass = std::isfinite(value) && value < *r.limit;
        }
        rows.push_back(r);
    }
    return rows;
}

int cmd_generate(const GenerateArgs& g, std::ostream& out) {
    const PresetParams params = to_params(g);
    const MVOPFamily fam = build_preset(params);
    const ResidualReport res = compute_residuals(fam);
    const FamilyDocument doc = make_document(params, fam, res);
    if (g.format == "json") {
        if (g.out.empty())
            out << serialize(doc);
        else
            write_document(doc, g.out);
    } else {
        std::ostringstream os;
        os << "residual,value\n" << std::setprecision(17);
        for (const auto& [k, v] : doc.residuals) os << k << "," << v << "\n";
        if (g.out.empty()) {
            out << os.str();
        } else {
            std::ofstream f(g.out, std::ios::binary | std::ios::trunc);
            f << os.str();
        }
    }
    const auto rows = residual_checks(doc.residuals, default_thresholds(params.kind), {});
    std::ostringstream table;
    const bool ok = print_checks(rows, table);
    if (!g.out.empty()) out << table.str();
    return ok ? kOk : kThresholdsNotMet;
}

int cmd_verify(const VerifyArgs& v, std::ostream& out) {
    const FamilyDocument stored = read_document(v.in);
    const auto overrides = parse_tols(v.tol);
    for (const auto& [k, val] : overrides) {
        if (k != "matrix" && !stored.residuals.count(k))
            throw ParameterError("unknown --tol key '" + k + "'");
    }
    const PresetParams params = params_from_document(stored);
    const MVOPFamily fam = build_preset(params);
    const ResidualReport res = compute_residuals(fam);
    const FamilyDocument fresh = make_document(params, fam, res);
    if (fresh.n != stored.n || fresh.K != stored.K || fresh.support_size != stored.support_size)
        throw SchemaError("stored shape does not match the recomputed family");

    auto rows = residual_checks(fresh.residuals, default_thresholds(params.kind), overrides);
    const double mtol = overrides.count("matrix") ? overrides.at("matrix") : 1e-12;
    const auto mism = compare_series(stored, fresh, mtol);
    double worst = 0.0;
    for (const auto& m : mism) worst = std::max(worst, std::abs(m.stored - m.expected));
    rows.push_back({"matrices", worst, mtol, mism.empty()});
    const bool ok = print_checks(rows, out);
    for (const auto& m : mism) {
        out << "mismatch " << m.series << "[" << m.index << "]";
        if (m.row >= 0) {
            out << " entry (" << m.row << "," << m.col << "): stored " << std::setprecision(17)
                << m.stored.real() << "+" << m.stored.imag() << "i, expected " << m.expected.real()
                << "+" << m.expected.imag() << "i";
        } else {
            out << " shape differs";
        }
        out << "\n";
    }
    out << (ok ? "PASS" : "FAIL") << "\n";
    return ok ? kOk : kThresholdsNotMet;
}

int cmd_equivalence(const EquivalenceArgs& e, std::ostream& out) {
    const FamilyDocument a = read_document(e.a);
    const FamilyDocument b = read_document(e.b);
    if (a.n != b.n || a.support_size != b.support_size)
        throw ShapeError("documents differ in block size or support size");
    EquivalenceOptions opts;
    const auto tols = parse_tols(e.tol);
    for (const auto& [k, v] : tols) {
        if (k != "equiv") throw ParameterError("unknown --tol key '" + k + "' (equiv)");
        opts.equiv_tol = v;
    }
    const auto r = equivalence_probe(a.series.at("W"), b.series.at("W"), opts);
    out << "normalized residual " << std::setprecision(6) << std::scientific << r.residual << "\n";
    out << "tolerance " << opts.equiv_tol << "\n";
    if (r.equivalent()) {
        out << "EQUIVALENT\ncandidate M (W_b = M W_a M^*):\n";
        out << std::setprecision(12) << std::fixed;
        for (Eigen::Index i = 0; i < r.candidate->rows(); ++i) {
            for (Eigen::Index j = 0; j < r.candidate->cols(); ++j) {
                const Complex z = (*r.candidate)(i, j);
                out << (j ? "  " : "") << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag())
                    << "i";
            }
            out << "\n";
        }
    } else {
        out << "NOT EQUIVALENT\n";
    }
    return kOk;
}

const char* kSelectorHelp =
    "selector: --series {A,B,Lambda,theta,W,L,D,Pi} --entry i,l|trace [--j J (Pi only)]";

int cmd_plot(const PlotArgs& p, std::ostream& out) {
    const FamilyDocument doc = read_document(p.in);
    if (p.format != "csv") throw ParameterError("plot writes csv only");
    std::vector<CMatrix> seq;
    if (p.series == "Pi") {
        if (!p.j) throw ParameterError(std::string("--j is required for Pi\n") + kSelectorHelp);
        const MVOPFamily fam = build_preset(params_from_document(doc));
        if (*p.j < 0 || *p.j >= fam.S) throw ParameterError("--j outside the support");
        for (int k = 0; k < fam.K; ++k) seq.push_back(fam.pi_by_alternant(k, *p.j));
    } else {
        const auto it = doc.series.find(p.series);
        if (it == doc.series.end())
            throw ParameterError("unknown series '" + p.series + "'\n" + kSelectorHelp);
        if (p.j) throw ParameterError(std::string("--j applies to Pi only\n") + kSelectorHelp);
        seq = it->second;
    }
    bool trace = p.entry == "trace";
    int ei = 0, el = 0;
    if (!trace) {
        char comma = 0;
        std::istringstream is(p.entry);
        if (!(is >> ei >> comma >> el) || comma != ',' || !is.eof() || ei < 0 || el < 0 ||
            ei >= doc.n || el >= doc.n)
            throw ParameterError("bad --entry '" + p.entry + "'\n" + kSelectorHelp);
    }
    std::vector<Complex> values;
    for (const auto& m : seq) values.push_back(trace ? m.trace() : m(ei, el));

    std::ostringstream csv;
    csv << "index,re,im\n" << std::setprecision(17);
    for (std::size_t i = 0; i < values.size(); ++i)
        csv << i << "," << values[i].real() << "," << values[i].imag() << "\n";
    if (p.out.empty()) {
        out << csv.str();
    } else {
        std::ofstream f(p.out, std::ios::binary | std::ios::trunc);
        if (!f) throw Error("cannot write '" + p.out + "'");
        f << csv.str();
    }

    if (!p.svg.empty()) {
        const double w = 480, h = 240, pad = 30;
        double lo = values.front().real(), hi = lo;
        for (const auto& v : values) {
            lo = std::min(lo, v.real());
            hi = std::max(hi, v.real());
        }
        if (hi == lo) hi = lo + 1.0;
        std::ofstream f(p.svg, std::ios::binary | std::ios::trunc);
        if (!f) throw Error("cannot write '" + p.svg + "'");
        f << std::setprecision(6);
        f << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
          << "\">\n<polyline fill=\"none\" stroke=\"black\" points=\"";
        const double nx = std::max<std::size_t>(values.size() - 1, 1);
        for (std::size_t i = 0; i < values.size(); ++i) {
            const double x = pad + (w - 2 * pad) * i / nx;
            const double y = h - pad - (h - 2 * pad) * (values[i].real() - lo) / (hi - lo);
            f << (i ? " " : "") << x << "," << y;
        }
        f << "\"/>\n<text x=\"" << pad << "\" y=\"" << pad / 2 << "\">" << p.series << " "
          << p.entry << "</text>\n</svg>\n";
    }
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Matrix-valued orthogonal polynomial families"};
    app.require_subcommand(1);

    GenerateArgs g;
    auto* gen = app.add_subcommand("generate", "build a preset family and write it as JSON");
    gen->add_option("--preset", g.preset, "krawtchouk-interleaved | krawtchouk-split | "
                                          "meixner-interleaved | chebyshev")
        ->required();
    gen->add_option("--n", g.n, "block size");
    gen->add_option("--N", g.N, "highest block index (Chebyshev: root-of-unity order)");
    gen->add_option("--m", g.m, "Krawtchouk dimension parameter");
    gen->add_option("--d", g.d, "so_q(3) representation dimension minus one");
    gen->add_option("--a", g.a, "angle in radians");
    gen->add_option("--p", g.p, "Krawtchouk parameter");
    gen->add_option("--beta", g.beta, "Meixner parameter");
    gen->add_option("--c", g.c, "Meixner parameter");
    gen->add_option("--b", g.b, "Chebyshev shift");
    gen->add_option("--tail-tol", g.tail_tol, "Meixner truncation tolerance");
    gen->add_option("--out", g.out, "output file (stdout when omitted)");
    gen->add_option("--format", g.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));

    VerifyArgs v;
    auto* ver = app.add_subcommand("verify", "recompute a stored family and compare");
    ver->add_option("file", v.in)->required();
    ver->add_option("--tol", v.tol, "KEY=VALUE threshold override (repeatable)");

    EquivalenceArgs e;
    auto* eqv = app.add_subcommand("equivalence", "probe W_b = M W_a M^* for a constant M");
    eqv->add_option("file_a", e.a)->required();
    eqv->add_option("file_b", e.b)->required();
    eqv->add_option("--tol", e.tol, "equiv=VALUE");

    PlotArgs p;
    auto* plt = app.add_subcommand("plot", "write one matrix entry as a CSV series");
    plt->add_option("file", p.in)->required();
    plt->add_option("--series", p.series, "A B Lambda theta W L D Pi")->required();
    plt->add_option("--entry", p.entry, "i,l or trace");
    plt->add_option("--j", p.j, "support index for the Pi series");
    plt->add_option("--out", p.out, "CSV file (stdout when omitted)");
    plt->add_option("--svg", p.svg, "optional SVG line chart");
    plt->add_option("--format", p.format, "csv");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& ex) {
        err << "error: " << ex.what() << "\n";
        return kInvalidParameters;
    }

    try {
        if (gen->parsed()) return cmd_generate(g, out);
        if (ver->parsed()) return cmd_verify(v, out);
        if (eqv->parsed()) return cmd_equivalence(e, out);
        if (plt->parsed()) return cmd_plot(p, out);
    } catch (const SingularAlternantError& ex) {
        err << "error: " << ex.what() << "\n";
        return kSingularAlternant;
    } catch (const SchemaError& ex) {
        err << "error: " << ex.what() << "\n";
        return kSchemaMismatch;
    } catch (const Error& ex) {
        err << "error: " << ex.what() << "\n";
        return kInvalidParameters;
    }
    return kInvalidParameters;
}

}  // namespace mvop::cli
