#include "rateopt/scenario.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "rateopt/errors.hpp"

namespace rateopt::cli {

using nlohmann::json;

std::string_view to_string(Mode m) noexcept {
    switch (m) {
    case Mode::CommonRate:
        return "common-rate";
    case Mode::WeightedSum:
        return "weighted-sum";
    case Mode::Framework:
        return "framework";
    }
    return "unknown";
}

Mode parse_mode(std::string_view name) {
    if (name == "common-rate") {
        return Mode::CommonRate;
    }
    if (name == "weighted-sum" || name == "weighted") {
        return Mode::WeightedSum;
    }
    if (name == "framework") {
        return Mode::Framework;
    }
    throw ConfigError("field 'mode': unknown mode '" + std::string(name) +
                      "' (expected common-rate, weighted-sum or framework)");
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

namespace {

[[noreturn]] void field_error(const std::string& field, const std::string& what) {
    throw ConfigError("field '" + field + "': " + what);
}

void require_positive(double v, const char* field) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        field_error(field, "must be positive and finite");
    }
}

template <class T>
T get_field(const json& j, const std::string& key) {
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        field_error(key, std::string("bad value (") + e.what() + ")");
    }
}

void reject_unknown(const json& j, std::initializer_list<std::string_view> known,
                    const std::string& where) {
    for (const auto& item : j.items()) {
        bool ok = false;
        for (auto k : known) {
            ok = ok || item.key() == k;
        }
        if (!ok) {
            field_error(where + item.key(), "unknown field");
        }
    }
}

} // namespace

void ScenarioConfig::validate() const {
    require_positive(a1, "a1");
    require_positive(a2, "a2");
    require_positive(sigma2, "sigma2");
    require_positive(pt, "pt");
    require_positive(prelog, "prelog");
    if (!(step > 0.0) || step > 1.0) {
        field_error("step", "must lie in (0, 1]");
    }
    if (trials == 0) {
        field_error("trials", "must be at least 1");
    }
    if (gains && fading) {
        field_error("gamma1r", "give either gamma1r/gamma2r or fading, not both");
    }
    if (gains) {
        require_positive(gains->gamma1r, "gamma1r");
        require_positive(gains->gamma2r, "gamma2r");
    }
    if (fading) {
        if (fading->nr == 0) {
            field_error("fading.nr", "must be at least 1");
        }
        require_positive(fading->var1, "fading.var1");
        require_positive(fading->var2, "fading.var2");
    }
    if (mode == Mode::Framework) {
        if (!framework) {
            field_error("framework", "required in framework mode");
        }
        if (framework->weights.empty() || framework->weights.size() != framework->costs.size()) {
            field_error("framework.weights", "weights and costs must be non-empty and equal length");
        }
        for (double w : framework->weights) {
            require_positive(w, "framework.weights");
        }
        for (double b : framework->costs) {
            require_positive(b, "framework.costs");
        }
        require_positive(framework->budget, "framework.budget");
    } else if (!gains && !fading) {
        field_error("gamma1r", "a channel is required: gamma1r/gamma2r or fading");
    }
    if (pt_grid_db.empty()) {
        field_error("pt_grid_db", "must not be empty");
    }
    for (double db : pt_grid_db) {
        if (!std::isfinite(db)) {
            field_error("pt_grid_db", "entries must be finite");
        }
    }
    if (policies.empty()) {
        field_error("policies", "must not be empty");
    }
}

relay::ChannelState ScenarioConfig::channel() const {
    if (gains) {
        return relay::ChannelState::from_gains(gains->gamma1r * sigma2 / pt,
                                               gains->gamma2r * sigma2 / pt, sigma2);
    }
    if (fading) {
        return verify::draw_channel({fading->nr, fading->var1, fading->var2, sigma2}, seed);
    }
    throw ConfigError("field 'gamma1r': no channel configured");
}

verify::Objective ScenarioConfig::objective() const {
    if (mode == Mode::WeightedSum) {
        return verify::WeightedObjective{a1, a2, prelog};
    }
    return verify::MaxMinObjective{};
}

ScenarioConfig parse_scenario(const json& j) {
    if (!j.is_object()) {
        throw ConfigError("scenario must be a JSON object");
    }
    reject_unknown(j,
                   {"mode", "a1", "a2", "gamma1r", "gamma2r", "fading", "sigma2", "pt", "pt_db",
                    "step", "trials", "seed", "prelog", "pt_grid_db", "policies", "framework"},
                   "");
    ScenarioConfig c;
    if (j.contains("mode")) {
        c.mode = parse_mode(get_field<std::string>(j, "mode"));
    }
    if (j.contains("a1")) c.a1 = get_field<double>(j, "a1");
    if (j.contains("a2")) c.a2 = get_field<double>(j, "a2");
    if (j.contains("gamma1r") || j.contains("gamma2r")) {
        if (!j.contains("gamma1r") || !j.contains("gamma2r")) {
            field_error(j.contains("gamma1r") ? "gamma2r" : "gamma1r",
                        "gamma1r and gamma2r must be given together");
        }
        c.gains = ExplicitGains{get_field<double>(j, "gamma1r"), get_field<double>(j, "gamma2r")};
    }
    if (j.contains("fading")) {
        const auto& f = j.at("fading");
        if (!f.is_object()) {
            field_error("fading", "must be an object");
        }
        reject_unknown(f, {"nr", "var1", "var2"}, "fading.");
        FadingSpec spec;
        if (f.contains("nr")) spec.nr = get_field<std::size_t>(f, "nr");
        if (f.contains("var1")) spec.var1 = get_field<double>(f, "var1");
        if (f.contains("var2")) spec.var2 = get_field<double>(f, "var2");
        c.fading = spec;
    }
    if (j.contains("framework")) {
        const auto& f = j.at("framework");
        if (!f.is_object()) {
            field_error("framework", "must be an object");
        }
        reject_unknown(f, {"weights", "costs", "budget"}, "framework.");
        FrameworkSpec spec;
        spec.weights = get_field<std::vector<double>>(f, "weights");
        spec.costs = get_field<std::vector<double>>(f, "costs");
        spec.budget = get_field<double>(f, "budget");
        c.framework = spec;
    }
    if (j.contains("sigma2")) c.sigma2 = get_field<double>(j, "sigma2");
    if (j.contains("pt") && j.contains("pt_db")) {
        field_error("pt_db", "give either pt or pt_db, not both");
    }
    if (j.contains("pt")) c.pt = get_field<double>(j, "pt");
    if (j.contains("pt_db")) c.pt = db_to_linear(get_field<double>(j, "pt_db"));
    if (j.contains("step")) c.step = get_field<double>(j, "step");
    if (j.contains("trials")) c.trials = get_field<std::size_t>(j, "trials");
    if (j.contains("seed")) c.seed = get_field<std::uint64_t>(j, "seed");
    if (j.contains("prelog")) c.prelog = get_field<double>(j, "prelog");
    if (j.contains("pt_grid_db")) c.pt_grid_db = get_field<std::vector<double>>(j, "pt_grid_db");
    if (j.contains("policies")) {
        c.policies.clear();
        for (const auto& name : get_field<std::vector<std::string>>(j, "policies")) {
            try {
                c.policies.push_back(verify::parse_policy(name));
            } catch (const std::invalid_argument& e) {
                field_error("policies", e.what());
            }
        }
    }
    return c;
}

ScenarioConfig parse_scenario_text(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("scenario is not valid JSON: ") + e.what());
    }
    return parse_scenario(j);
}

ScenarioConfig load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open scenario file '" + path + "'");
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_scenario_text(buf.str());
}

json to_json(const ScenarioConfig& c) {
    json j;
    j["mode"] = std::string(to_string(c.mode));
    j["a1"] = c.a1;
    j["a2"] = c.a2;
    if (c.gains) {
        j["gamma1r"] = c.gains->gamma1r;
        j["gamma2r"] = c.gains->gamma2r;
    }
    if (c.fading) {
        j["fading"] = {{"nr", c.fading->nr}, {"var1", c.fading->var1}, {"var2", c.fading->var2}};
    }
    if (c.framework) {
        j["framework"] = {{"weights", c.framework->weights},
                          {"costs", c.framework->costs},
                          {"budget", c.framework->budget}};
    }
    j["sigma2"] = c.sigma2;
    j["pt"] = c.pt;
    j["step"] = c.step;
    j["trials"] = c.trials;
    j["seed"] = c.seed;
    j["prelog"] = c.prelog;
    j["pt_grid_db"] = c.pt_grid_db;
    std::vector<std::string> names;
    for (auto p : c.policies) {
        names.emplace_back(verify::to_string(p));
    }
    j["policies"] = names;
    return j;
}

} // namespace rateopt::cli
