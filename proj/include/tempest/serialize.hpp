#ifndef TEMPEST_SERIALIZE_HPP
#define TEMPEST_SERIALIZE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tempest/heavy_tails.hpp"
#include "tempest/limit_lab.hpp"
#include "tempest/tempered.hpp"
#include "tempest/tempering.hpp"

// Scenario JSON schema (version 1). Parsing is strict: unknown fields are
// rejected with a config_error naming the offending key, and every stochastic
// command requires a seed (scenario field or --seed flag).

namespace tempest {

using json = nlohmann::json;

json tempering_to_json(const TemperingFunction& q);
TemperingFunction tempering_from_json(const json& j, const std::string& path);

json base_to_json(const BaseMeasure& b);
BaseMeasure base_from_json(const json& j, const std::string& path);

struct DistSpec {
    enum class Family { ps, ds, pts, dts, base, tempered_base };
    Family family = Family::ps;
    double alpha = 0.5;
    double eta = 0.0;
    std::optional<TemperingFunction> q;
    double drift = 0.0;
    double rate = 1.0;
    double series_tol = 2e-4;
    std::optional<BaseMeasure> base;
    double ell = 1.0;

    bool discrete() const { return family == Family::ds || family == Family::dts; }
    StableParams stable() const;  // ps / ds
    PtsParams pts() const;        // pts (or ps as identity tempering)
    DtsParams dts() const;        // dts (or ds as identity tempering)
};

DistSpec dist_from_json(const json& j, const std::string& path);

struct SampleSpec {
    DistSpec dist;
    std::uint64_t count = 0;
};

struct TransformSpec {
    DistSpec dist;
    std::vector<double> grid;
};

struct PmfSpec {
    DistSpec dist;  // ds or dts
    std::size_t n_max = 0;
};

struct Prop34Spec {
    double alpha = 0.5;
    double eta = 0.5;
    TemperingFunction q = TemperingFunction::identity();
    std::vector<double> a_list;
    std::size_t m = 0;
    std::vector<double> grid;
    double final_gap_limit = 0.01;
};

struct NaturalScaleSpec {
    BaseMeasure base = BaseMeasure::pareto(0.5, 1.0);
    TemperingFunction q = TemperingFunction::identity();
    double ell = 1.0;
    std::size_t m = 0;
    std::vector<double> grid;
};

struct LimitSpec {
    enum class Type { array, prop34, natural_scale };
    Type type = Type::array;
    std::optional<ArrayExperiment> array;
    std::optional<Prop34Spec> prop34;
    std::optional<NaturalScaleSpec> natural_scale;
};

struct ConditionsSpec {
    BaseMeasure base = BaseMeasure::pareto(0.5, 1.0);
    TemperingFunction q = TemperingFunction::identity();
    EllSchedule ell;
    std::vector<std::uint64_t> n_list;
    std::vector<double> s_grid;
    std::vector<double> eps_list = {1.0, 0.1, 0.01};
};

struct Scenario {
    int version = 1;
    std::string kind;
    std::optional<std::uint64_t> seed;
    std::optional<SampleSpec> sample;
    std::optional<TransformSpec> transform;
    std::optional<PmfSpec> pmf;
    std::optional<LimitSpec> limit;
    std::optional<ConditionsSpec> conditions;
    json raw;  // compact echo for output headers
};

Scenario parse_scenario(const json& j);
Scenario load_scenario(const std::string& file_path);

} // namespace tempest

#endif
