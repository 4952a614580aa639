#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>

#include "mvop/mvop_engine.hpp"

namespace mvop {

enum class PresetKind { KrawtchoukInterleaved, KrawtchoukSplit, MeixnerInterleaved, Chebyshev };

std::string to_string(PresetKind kind);
PresetKind parse_preset(const std::string& name);  // throws ParameterError

struct PresetParams {
    PresetKind kind = PresetKind::KrawtchoukInterleaved;
    int n = 2;
    std::optional<int> N;
    std::optional<int> m;
    std::optional<int> d;
    std::optional<double> a;
    std::optional<double> p;
    std::optional<double> beta;
    std::optional<double> c;
    std::optional<double> b;
    double tail_tol = 1e-14;
};

// Fills defaults and checks combinations; throws ParameterError.
PresetParams resolve(const PresetParams& params);

Representation build_preset_representation(const PresetParams& params);
MVOPFamily build_preset(const PresetParams& params);

// Flat key/value view of the resolved parameters and the scalar family fields.
std::map<std::string, double> parameter_map(const PresetParams& params, const MVOPFamily& fam);

struct ResidualReport {
    double orthogonality = 0.0;
    double recurrence = 0.0;
    double difference_derived = 0.0;
    double difference_printed = 0.0;
    double weight_identity = 0.0;
    double two_path = 0.0;

    std::map<std::string, double> as_map() const;
};

ResidualReport compute_residuals(const MVOPFamily& fam);

struct Thresholds {
    std::map<std::string, double> limit;
    std::set<std::string> asserted;
};

Thresholds default_thresholds(PresetKind kind);

}  // namespace mvop
