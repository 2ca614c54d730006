#include "tempest/serialize.hpp"

#include <fstream>
#include <set>

#include "tempest/errors.hpp"

namespace tempest {

namespace {

void check_keys(const json& j, const std::string& path, std::set<std::string> allowed) {
    if (!j.is_object()) throw config_error(path + ": expected an object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key()))
            throw config_error(path + ": unknown field '" + it.key() + "'");
}

double get_num(const json& j, const std::string& path, const char* key) {
    if (!j.contains(key)) throw config_error(path + ": missing field '" + key + "'");
    if (!j[key].is_number()) throw config_error(path + "." + key + ": expected a number");
    return j[key].get<double>();
}

double get_num_or(const json& j, const char* key, double fallback, const std::string& path) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number()) throw config_error(path + "." + key + ": expected a number");
    return j[key].get<double>();
}

std::string get_str(const json& j, const std::string& path, const char* key) {
    if (!j.contains(key)) throw config_error(path + ": missing field '" + key + "'");
    if (!j[key].is_string()) throw config_error(path + "." + key + ": expected a string");
    return j[key].get<std::string>();
}

std::vector<double> get_vec(const json& j, const std::string& path, const char* key) {
    if (!j.contains(key) || !j[key].is_array())
        throw config_error(path + ": missing array field '" + key + "'");
    std::vector<double> out;
    for (const auto& v : j[key]) {
        if (!v.is_number()) throw config_error(path + "." + key + ": expected numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

std::uint64_t get_count(const json& j, const std::string& path, const char* key) {
    if (!j.contains(key)) throw config_error(path + ": missing field '" + key + "'");
    if (!j[key].is_number_unsigned() && !j[key].is_number_integer())
        throw config_error(path + "." + key + ": expected a nonnegative integer");
    const auto v = j[key].get<std::int64_t>();
    if (v < 0) throw config_error(path + "." + key + ": expected a nonnegative integer");
    return static_cast<std::uint64_t>(v);
}

EllSchedule ell_from_json(const json& j, const std::string& path) {
    check_keys(j, path, {"scale", "power"});
    EllSchedule ell;
    ell.scale = get_num_or(j, "scale", 1.0, path);
    ell.power = get_num_or(j, "power", 0.0, path);
    if (!(ell.scale > 0.0)) throw config_error(path + ".scale: must be > 0");
    return ell;
}

std::vector<double> grid_or_default(const json& j, const std::string& path) {
    if (!j.contains("grid")) return {0.1, 0.25, 0.5, 1.0, 2.0, 5.0};
    auto g = get_vec(j, path, "grid");
    if (g.empty()) throw config_error(path + ".grid: must be nonempty");
    return g;
}

} // namespace

json tempering_to_json(const TemperingFunction& q) {
    switch (q.kind()) {
        case TemperingKind::identity:
            return json{{"kind", "identity"}};
        case TemperingKind::exponential:
            return json{{"kind", "exponential"}, {"a", q.rate()}};
        case TemperingKind::truncation:
            return json{{"kind", "truncation"}, {"a", q.rate()}};
        case TemperingKind::exp_floor:
            return json{{"kind", "exp_floor"}, {"theta", q.theta()}, {"a", q.rate()}};
        case TemperingKind::table:
            return json{{"kind", "table"},
                        {"x", q.grid_x()},
                        {"y", q.grid_y()},
                        {"zeta", q.limit_at_infinity()}};
    }
    return json{{"kind", "identity"}};
}

TemperingFunction tempering_from_json(const json& j, const std::string& path) {
    const std::string kind = get_str(j, path, "kind");
    if (kind == "identity") {
        check_keys(j, path, {"kind"});
        return TemperingFunction::identity();
    }
    if (kind == "exponential") {
        check_keys(j, path, {"kind", "a"});
        return TemperingFunction::exponential(get_num(j, path, "a"));
    }
    if (kind == "truncation") {
        check_keys(j, path, {"kind", "a"});
        return TemperingFunction::truncation(get_num(j, path, "a"));
    }
    if (kind == "exp_floor") {
        check_keys(j, path, {"kind", "theta", "a"});
        return TemperingFunction::exp_floor(get_num(j, path, "theta"), get_num(j, path, "a"));
    }
    if (kind == "table") {
        check_keys(j, path, {"kind", "x", "y", "zeta"});
        return TemperingFunction::table(get_vec(j, path, "x"), get_vec(j, path, "y"),
                                        get_num(j, path, "zeta"));
    }
    throw config_error(path + ".kind: unknown tempering kind '" + kind + "'");
}

json base_to_json(const BaseMeasure& b) {
    switch (b.kind()) {
        case BaseMeasure::Kind::pareto:
            return json{{"kind", "pareto"}, {"alpha", b.alpha()}, {"x_m", b.x_m()}};
        case BaseMeasure::Kind::log_pareto:
            return json{{"kind", "log_pareto"}, {"alpha", b.alpha()}, {"p", b.log_power()}};
        case BaseMeasure::Kind::discrete_pareto:
            return json{{"kind", "discrete_pareto"}, {"alpha", b.alpha()}};
    }
    return {};
}

BaseMeasure base_from_json(const json& j, const std::string& path) {
    const std::string kind = get_str(j, path, "kind");
    if (kind == "pareto") {
        check_keys(j, path, {"kind", "alpha", "x_m"});
        return BaseMeasure::pareto(get_num(j, path, "alpha"), get_num_or(j, "x_m", 1.0, path));
    }
    if (kind == "log_pareto") {
        check_keys(j, path, {"kind", "alpha", "p"});
        return BaseMeasure::log_pareto(get_num(j, path, "alpha"), get_num(j, path, "p"));
    }
    if (kind == "discrete_pareto") {
        check_keys(j, path, {"kind", "alpha"});
        return BaseMeasure::discrete_pareto(get_num(j, path, "alpha"));
    }
    throw config_error(path + ".kind: unknown base measure kind '" + kind + "'");
}

StableParams DistSpec::stable() const { return StableParams(alpha, eta); }

PtsParams DistSpec::pts() const {
    return PtsParams(alpha, q.value_or(TemperingFunction::identity()), eta, drift);
}

DtsParams DistSpec::dts() const {
    return DtsParams(alpha, q.value_or(TemperingFunction::identity()), eta, rate, drift);
}

DistSpec dist_from_json(const json& j, const std::string& path) {
    DistSpec d;
    const std::string family = get_str(j, path, "family");
    if (family == "ps" || family == "ds") {
        check_keys(j, path, {"family", "alpha", "eta"});
        d.family = family == "ps" ? DistSpec::Family::ps : DistSpec::Family::ds;
        d.alpha = get_num(j, path, "alpha");
        d.eta = get_num(j, path, "eta");
        (void)d.stable();  // validate now
        return d;
    }
    if (family == "pts") {
        check_keys(j, path, {"family", "alpha", "eta", "q", "drift", "series_tol"});
        d.family = DistSpec::Family::pts;
        d.alpha = get_num(j, path, "alpha");
        d.eta = get_num(j, path, "eta");
        d.q = tempering_from_json(j.at("q"), path + ".q");
        d.drift = get_num_or(j, "drift", 0.0, path);
        d.series_tol = get_num_or(j, "series_tol", 2e-4, path);
        (void)d.pts();
        return d;
    }
    if (family == "dts") {
        check_keys(j, path, {"family", "alpha", "eta", "q", "rate", "drift", "series_tol"});
        d.family = DistSpec::Family::dts;
        d.alpha = get_num(j, path, "alpha");
        d.eta = get_num(j, path, "eta");
        d.q = tempering_from_json(j.at("q"), path + ".q");
        d.rate = get_num_or(j, "rate", 1.0, path);
        d.drift = get_num_or(j, "drift", 0.0, path);
        d.series_tol = get_num_or(j, "series_tol", 2e-4, path);
        (void)d.dts();
        return d;
    }
    if (family == "base") {
        check_keys(j, path, {"family", "base"});
        d.family = DistSpec::Family::base;
        d.base = base_from_json(j.at("base"), path + ".base");
        return d;
    }
    if (family == "tempered_base") {
        check_keys(j, path, {"family", "base", "q", "ell"});
        d.family = DistSpec::Family::tempered_base;
        d.base = base_from_json(j.at("base"), path + ".base");
        d.q = tempering_from_json(j.at("q"), path + ".q");
        d.ell = get_num(j, path, "ell");
        if (!(d.ell > 0.0)) throw config_error(path + ".ell: must be > 0");
        return d;
    }
    throw config_error(path + ".family: unknown family '" + family + "'");
}

namespace {

ArrayExperiment array_from_json(const json& j, const std::string& path) {
    check_keys(j, path,
               {"type", "base", "q", "ell", "n", "m", "discrete", "grid", "regime", "c",
                "sup_gap_limit", "min_in_band", "mass_delta", "mass_limit"});
    ArrayExperiment e(base_from_json(j.at("base"), path + ".base"),
                      tempering_from_json(j.at("q"), path + ".q"),
                      ell_from_json(j.at("ell"), path + ".ell"));
    e.n = get_count(j, path, "n");
    e.m = static_cast<std::size_t>(get_count(j, path, "m"));
    if (e.n == 0 || e.m == 0) throw config_error(path + ": n and m must be >= 1");
    if (j.contains("discrete")) {
        if (!j["discrete"].is_boolean())
            throw config_error(path + ".discrete: expected a boolean");
        e.discrete = j["discrete"].get<bool>();
    }
    e.grid = grid_or_default(j, path);
    e.sup_gap_limit = get_num_or(j, "sup_gap_limit", e.sup_gap_limit, path);
    e.min_in_band = get_num_or(j, "min_in_band", e.min_in_band, path);
    e.mass_delta = get_num_or(j, "mass_delta", e.mass_delta, path);
    e.mass_limit = get_num_or(j, "mass_limit", e.mass_limit, path);

    const std::string regime =
        j.contains("regime") ? get_str(j, path, "regime") : std::string("auto");
    if (regime == "auto") {
        // classifier decides at run time
    } else if (regime == "finite_c") {
        Regime r;
        r.kind = RegimeKind::finite_c;
        r.c = get_num(j, path, "c");
        if (!(r.c > 0.0)) throw config_error(path + ".c: must be > 0");
        e.regime_override = r;
    } else if (regime == "infinite") {
        Regime r;
        r.kind = RegimeKind::infinite;
        e.regime_override = r;
    } else if (regime == "zero") {
        Regime r;
        r.kind = RegimeKind::zero;
        r.zeta = e.q.limit_at_infinity();
        e.regime_override = r;
    } else {
        throw config_error(path + ".regime: unknown regime '" + regime + "'");
    }
    return e;
}

Prop34Spec prop34_from_json(const json& j, const std::string& path) {
    check_keys(j, path, {"type", "alpha", "eta", "q", "a_list", "m", "grid", "final_gap_limit"});
    Prop34Spec s;
    s.alpha = get_num(j, path, "alpha");
    s.eta = get_num(j, path, "eta");
    s.q = tempering_from_json(j.at("q"), path + ".q");
    s.a_list = get_vec(j, path, "a_list");
    s.m = static_cast<std::size_t>(get_count(j, path, "m"));
    s.grid = grid_or_default(j, path);
    s.final_gap_limit = get_num_or(j, "final_gap_limit", 0.01, path);
    return s;
}

NaturalScaleSpec natural_from_json(const json& j, const std::string& path) {
    check_keys(j, path, {"type", "base", "q", "ell_fixed", "m", "grid"});
    NaturalScaleSpec s;
    s.base = base_from_json(j.at("base"), path + ".base");
    s.q = tempering_from_json(j.at("q"), path + ".q");
    s.ell = get_num(j, path, "ell_fixed");
    if (!(s.ell > 1.0)) throw config_error(path + ".ell_fixed: must be > 1");
    s.m = static_cast<std::size_t>(get_count(j, path, "m"));
    s.grid = grid_or_default(j, path);
    return s;
}

ConditionsSpec conditions_from_json(const json& j, const std::string& path) {
    check_keys(j, path, {"base", "q", "ell", "n_list", "s_grid", "eps_list"});
    ConditionsSpec s;
    s.base = base_from_json(j.at("base"), path + ".base");
    s.q = tempering_from_json(j.at("q"), path + ".q");
    s.ell = ell_from_json(j.at("ell"), path + ".ell");
    for (double v : get_vec(j, path, "n_list")) {
        if (!(v >= 1.0)) throw config_error(path + ".n_list: entries must be >= 1");
        s.n_list.push_back(static_cast<std::uint64_t>(v));
    }
    s.s_grid = get_vec(j, path, "s_grid");
    if (j.contains("eps_list")) s.eps_list = get_vec(j, path, "eps_list");
    return s;
}

} // namespace

Scenario parse_scenario(const json& j) {
    check_keys(j, "scenario",
               {"version", "kind", "seed", "distribution", "count", "grid", "n_max",
                "experiment", "conditions"});
    Scenario sc;
    sc.raw = j;
    if (!j.contains("version") || !j["version"].is_number_integer())
        throw config_error("scenario: missing integer field 'version'");
    sc.version = j["version"].get<int>();
    if (sc.version != 1)
        throw config_error("scenario: unsupported version " + std::to_string(sc.version));
    sc.kind = get_str(j, "scenario", "kind");
    if (j.contains("seed")) sc.seed = get_count(j, "scenario", "seed");

    if (sc.kind == "sample") {
        if (!j.contains("distribution"))
            throw config_error("scenario: sample requires 'distribution'");
        SampleSpec s{dist_from_json(j.at("distribution"), "distribution"),
                     get_count(j, "scenario", "count")};
        if (s.count == 0) throw config_error("scenario.count: must be >= 1");
        sc.sample = std::move(s);
    } else if (sc.kind == "transform") {
        if (!j.contains("distribution"))
            throw config_error("scenario: transform requires 'distribution'");
        TransformSpec t{dist_from_json(j.at("distribution"), "distribution"),
                        grid_or_default(j, "scenario")};
        if (t.dist.family == DistSpec::Family::base ||
            t.dist.family == DistSpec::Family::tempered_base)
            throw config_error("scenario: transform supports families ps/ds/pts/dts");
        sc.transform = std::move(t);
    } else if (sc.kind == "pmf") {
        if (!j.contains("distribution"))
            throw config_error("scenario: pmf requires 'distribution'");
        PmfSpec p{dist_from_json(j.at("distribution"), "distribution"),
                  static_cast<std::size_t>(get_count(j, "scenario", "n_max"))};
        if (!p.dist.discrete())
            throw config_error("scenario: pmf requires a ds or dts distribution");
        if (p.n_max > 100000)
            throw config_error("scenario.n_max: limit 1e5 (recursion is quadratic)");
        sc.pmf = std::move(p);
    } else if (sc.kind == "limit") {
        if (!j.contains("experiment"))
            throw config_error("scenario: limit requires 'experiment'");
        const json& ej = j.at("experiment");
        const std::string type =
            ej.contains("type") ? get_str(ej, "experiment", "type") : std::string("array");
        LimitSpec ls;
        if (type == "array") {
            ls.type = LimitSpec::Type::array;
            ls.array = array_from_json(ej, "experiment");
        } else if (type == "prop34") {
            ls.type = LimitSpec::Type::prop34;
            ls.prop34 = prop34_from_json(ej, "experiment");
        } else if (type == "natural_scale") {
            ls.type = LimitSpec::Type::natural_scale;
            ls.natural_scale = natural_from_json(ej, "experiment");
        } else {
            throw config_error("experiment.type: unknown type '" + type + "'");
        }
        sc.limit = std::move(ls);
    } else if (sc.kind == "conditions") {
        if (!j.contains("conditions"))
            throw config_error("scenario: conditions requires 'conditions'");
        sc.conditions = conditions_from_json(j.at("conditions"), "conditions");
    } else {
        throw config_error("scenario.kind: unknown kind '" + sc.kind + "'");
    }
    return sc;
}

Scenario load_scenario(const std::string& file_path) {
    std::ifstream in(file_path);
    if (!in) throw config_error("cannot open scenario file: " + file_path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw config_error("scenario parse error: " + std::string(e.what()));
    }
    return parse_scenario(j);
}

} // namespace tempest
