#pragma once

#include <map>
#include <string>
#include <vector>

#include "mvop/errors.hpp"
#include "mvop/presets.hpp"
#include "mvop/types.hpp"

namespace mvop {

inline constexpr const char* kSchemaVersion = "mvop-family/1";

class SchemaError : public Error {
public:
    using Error::Error;
};

struct FamilyDocument {
    std::string schema_version = kSchemaVersion;
    std::string preset;
    std::map<std::string, double> parameters;
    int n = 0;
    int K = 0;
    int support_size = 0;
    std::map<std::string, std::vector<CMatrix>> series;  // A, B, Lambda by k; theta, W, L, D by j
    std::map<std::string, double> residuals;
};

// Names of the stored matrix series, in document order.
const std::vector<std::string>& series_names();
// True for the series indexed by k, false for those indexed by j.
bool series_indexed_by_k(const std::string& name);

FamilyDocument make_document(const PresetParams& params, const MVOPFamily& fam,
                             const ResidualReport& residuals);

// Rebuild the preset parameters recorded in a document.
PresetParams params_from_document(const FamilyDocument& doc);

std::string serialize(const FamilyDocument& doc);
FamilyDocument parse_document(const std::string& text);  // throws SchemaError

FamilyDocument read_document(const std::string& path);
void write_document(const FamilyDocument& doc, const std::string& path);

struct MatrixMismatch {
    std::string series;
    int index = 0;
    int row = 0;
    int col = 0;
    Complex stored;
    Complex expected;
};

// Entries where |stored - expected| > tol * max(1, |expected|).
std::vector<MatrixMismatch> compare_series(const FamilyDocument& stored,
                                           const FamilyDocument& expected, double tol);

}  // namespace mvop
