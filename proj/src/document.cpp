#include "mvop/document.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "mvop/errors.hpp"

namespace mvop {

namespace {

using nlohmann::ordered_json;

ordered_json matrix_to_json(const CMatrix& m) {
    ordered_json rows = ordered_json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        ordered_json row = ordered_json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            row.push_back(ordered_json::array({m(i, j).real(), m(i, j).imag()}));
        rows.push_back(std::move(row));
    }
    return rows;
}

CMatrix matrix_from_json(const ordered_json& j, int n, const std::string& where) {
    if (!j.is_array() || static_cast<int>(j.size()) != n)
        throw SchemaError(where + ": expected " + std::to_string(n) + " rows");
    CMatrix m(n, n);
    for (int r = 0; r < n; ++r) {
        const auto& row = j[r];
        if (!row.is_array() || static_cast<int>(row.size()) != n)
            throw SchemaError(where + ": expected " + std::to_string(n) + " columns");
        for (int c = 0; c < n; ++c) {
            const auto& e = row[c];
            if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
                throw SchemaError(where + ": entries must be [re, im] pairs");
            m(r, c) = Complex(e[0].get<double>(), e[1].get<double>());
        }
    }
    return m;
}

template <typename T>
T require(const ordered_json& j, const char* key) {
    if (!j.contains(key)) throw SchemaError(std::string("missing field '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw SchemaError(std::string("field '") + key + "' has the wrong type");
    }
}

}  // namespace

const std::vector<std::string>& series_names() {
    static const std::vector<std::string> names{"A", "B", "Lambda", "theta", "W", "L", "D"};
    return names;
}

bool series_indexed_by_k(const std::string& name) {
    return name == "A" || name == "B" || name == "Lambda";
}

FamilyDocument make_document(const PresetParams& params, const MVOPFamily& fam,
                             const ResidualReport& residuals) {
    FamilyDocument doc;
    doc.preset = to_string(params.kind);
    doc.parameters = parameter_map(params, fam);
    doc.n = fam.n;
    doc.K = fam.K;
    doc.support_size = fam.S;
    doc.series["A"] = fam.A;
    doc.series["B"] = fam.B;
    doc.series["Lambda"] = fam.Lambda;
    doc.series["theta"] = fam.theta;
    doc.series["W"] = fam.W;
    doc.series["L"] = fam.L;
    doc.series["D"] = fam.D;
    doc.residuals = residuals.as_map();
    return doc;
}

PresetParams params_from_document(const FamilyDocument& doc) {
    PresetParams p;
    try {
        p.kind = parse_preset(doc.preset);
    } catch (const ParameterError& e) {
        throw SchemaError(e.what());
    }
    auto get = [&](const char* key) {
        const auto it = doc.parameters.find(key);
        if (it == doc.parameters.end())
            throw SchemaError(std::string("missing parameter '") + key + "'");
        return it->second;
    };
    auto get_int = [&](const char* key) { return static_cast<int>(std::lround(get(key))); };
    p.n = get_int("n");
    switch (p.kind) {
        case PresetKind::KrawtchoukInterleaved:
        case PresetKind::KrawtchoukSplit:
            p.N = get_int("N");
            p.a = get("a");
            break;
        case PresetKind::MeixnerInterleaved:
            p.N = get_int("N");
            p.beta = get("beta");
            p.a = get("a");
            p.tail_tol = get("tail_tol");
            break;
        case PresetKind::Chebyshev:
            p.N = get_int("N");
            p.d = get_int("d");
            p.b = get("b");
            break;
    }
    return p;
}

std::string serialize(const FamilyDocument& doc) {
    ordered_json j;
    j["schema_version"] = doc.schema_version;
    j["preset"] = doc.preset;
    ordered_json params = ordered_json::object();
    for (const auto& [k, v] : doc.parameters) params[k] = v;
    j["parameters"] = params;
    j["n"] = doc.n;
    j["K"] = doc.K;
    j["support_size"] = doc.support_size;
    for (const auto& name : series_names()) {
        ordered_json arr = ordered_json::array();
        const auto it = doc.series.find(name);
        if (it != doc.series.end())
            for (const auto& m : it->second) arr.push_back(matrix_to_json(m));
        j[name] = arr;
    }
    ordered_json res = ordered_json::object();
    for (const auto& [k, v] : doc.residuals) res[k] = v;
    j["residuals"] = res;
    return j.dump(2) + "\n";
}

FamilyDocument parse_document(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError(std::string("not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw SchemaError("document must be a JSON object");
    FamilyDocument doc;
    doc.schema_version = require<std::string>(j, "schema_version");
    if (doc.schema_version != kSchemaVersion)
        throw SchemaError("unsupported schema_version '" + doc.schema_version + "'");
    doc.preset = require<std::string>(j, "preset");
    try {
        parse_preset(doc.preset);
    } catch (const ParameterError& e) {
        throw SchemaError(e.what());
    }
    doc.parameters = require<std::map<std::string, double>>(j, "parameters");
    doc.n = require<int>(j, "n");
    doc.K = require<int>(j, "K");
    doc.support_size = require<int>(j, "support_size");
    if (doc.n < 1 || doc.K < 1 || doc.support_size < 1)
        throw SchemaError("n, K and support_size must be positive");
    for (const auto& name : series_names()) {
        if (!j.contains(name) || !j[name].is_array())
            throw SchemaError("missing series '" + name + "'");
        const int expect = series_indexed_by_k(name) ? doc.K : doc.support_size;
        if (static_cast<int>(j[name].size()) != expect)
            throw SchemaError("series '" + name + "' has " + std::to_string(j[name].size()) +
                              " entries, expected " + std::to_string(expect));
        std::vector<CMatrix> ms;
        for (std::size_t i = 0; i < j[name].size(); ++i)
            ms.push_back(matrix_from_json(j[name][i], doc.n, name + "[" + std::to_string(i) + "]"));
        doc.series[name] = std::move(ms);
    }
    doc.residuals = require<std::map<std::string, double>>(j, "residuals");
    for (const auto& key : {"orthogonality", "recurrence", "difference_derived",
                            "difference_printed", "weight_identity", "two_path"}) {
        const auto it = doc.residuals.find(key);
        if (it == doc.residuals.end())
            throw SchemaError(std::string("missing residual '") + key + "'");
        if (!std::isfinite(it->second))
            throw SchemaError(std::string("residual '") + key + "' is not finite");
    }
    return doc;
}

FamilyDocument read_document(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_document(ss.str());
}

void write_document(const FamilyDocument& doc, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write '" + path + "'");
    out << serialize(doc);
    if (!out) throw Error("write to '" + path + "' failed");
}

std::vector<MatrixMismatch> compare_series(const FamilyDocument& stored,
                                           const FamilyDocument& expected, double tol) {
    std::vector<MatrixMismatch> out;
    for (const auto& name : series_names()) {
        const auto& a = stored.series.at(name);
        const auto& b = expected.series.at(name);
        if (a.size() != b.size()) {
            out.push_back({name, static_cast<int>(std::min(a.size(), b.size())), -1, -1, {}, {}});
            continue;
        }
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i].rows() != b[i].rows() || a[i].cols() != b[i].cols()) {
                out.push_back({name, static_cast<int>(i), -1, -1, {}, {}});
                continue;
            }
            for (Eigen::Index r = 0; r < a[i].rows(); ++r)
                for (Eigen::Index c = 0; c < a[i].cols(); ++c) {
                    const Complex x = a[i](r, c);
                    const Complex y = b[i](r, c);
                    if (!(std::abs(x - y) <= tol * std::max(1.0, std::abs(y))))
                        out.push_back({name, static_cast<int>(i), static_cast<int>(r),
                                       static_cast<int>(c), x, y});
                }
        }
    }
    return out;
}

}  // namespace mvop
