#include "csdfd/config.hpp"

#include "csdfd/report_io.hpp"

#include <cstdlib>
#include <set>
#include <sstream>

namespace csdfd {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    char* end = nullptr;
    const double v = std::strtod(value.c_str(), &end);
    if (end == value.c_str() || *end != '\0') {
        throw ConfigError(key, "invalid number for '" + key + "': " + value);
    }
    return v;
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(value.c_str(), &end, 10);
    if (end == value.c_str() || *end != '\0') {
        throw ConfigError(key, "invalid integer for '" + key + "': " + value);
    }
    return v;
}

long parse_long(const std::string& key, const std::string& value) {
    char* end = nullptr;
    const long v = std::strtol(value.c_str(), &end, 10);
    if (end == value.c_str() || *end != '\0') {
        throw ConfigError(key, "invalid integer for '" + key + "': " + value);
    }
    return v;
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true") return true;
    if (value == "false") return false;
    throw ConfigError(key, "invalid boolean for '" + key + "' (expected true/false): " + value);
}

std::vector<Strategy> parse_strategies(const std::string& key, const std::string& value) {
    std::vector<Strategy> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const std::string name = trim(item);
        if (name.empty()) continue;
        try {
            out.push_back(parse_strategy(name));
        } catch (const std::invalid_argument&) {
            throw ConfigError(key, "unknown strategy '" + name + "' in '" + key + "'");
        }
    }
    if (out.empty()) throw ConfigError(key, "empty strategy list in '" + key + "'");
    return out;
}

}  // namespace

ExperimentConfig parse_experiment_config(const std::string& text, bool require_explicit_physics) {
    ExperimentConfig cfg;
    std::set<std::string> seen;

    std::stringstream stream(text);
    std::string raw;
    std::string section;
    int line_no = 0;
    while (std::getline(stream, raw)) {
        ++line_no;
        const auto comment = raw.find('#');
        const std::string line = trim(comment == std::string::npos ? raw : raw.substr(0, comment));
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']') {
                throw ConfigError(line, "malformed section header at line " + std::to_string(line_no));
            }
            section = trim(line.substr(1, line.size() - 2));
            if (section != "bench" && section != "train" && section != "uvs" &&
                section != "cgr" && section != "run") {
                throw ConfigError(section, "unknown section '[" + section + "]'");
            }
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(line, "expected 'key = value' at line " + std::to_string(line_no));
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const std::string qualified = section.empty() ? key : section + "." + key;
        if (!seen.insert(qualified).second) {
            throw ConfigError(qualified, "duplicate key '" + qualified + "'");
        }

        if (section == "bench") {
            if (key == "dim") cfg.bench.dim = static_cast<std::size_t>(parse_u64(qualified, value));
            else if (key == "n_per_class") cfg.bench.n_per_class = static_cast<std::size_t>(parse_u64(qualified, value));
            else if (key == "kappa") cfg.bench.conflict_strength = parse_double(qualified, value);
            else if (key == "noise_sigma") cfg.bench.noise_sigma = parse_double(qualified, value);
            else if (key == "seed") cfg.bench.seed = parse_u64(qualified, value);
            else if (key == "target_shift") cfg.bench.target_shift = parse_double(qualified, value);
            else throw ConfigError(qualified, "unknown key '" + qualified + "'");
        } else if (section == "train") {
            if (key == "alpha") cfg.train.alpha = parse_double(qualified, value);
            else if (key == "steps") cfg.train.steps = static_cast<int>(parse_long(qualified, value));
            else if (key == "batch_size") cfg.train.batch_size = static_cast<std::size_t>(parse_u64(qualified, value));
            else if (key == "seed") cfg.train.seed = parse_u64(qualified, value);
            else if (key == "eval_every") cfg.train.eval_every = static_cast<int>(parse_long(qualified, value));
            else if (key == "log_window") cfg.train.log_window = static_cast<int>(parse_long(qualified, value));
            else throw ConfigError(qualified, "unknown key '" + qualified + "'");
        } else if (section == "uvs") {
            if (key == "c") cfg.train.uvs.c = parse_double(qualified, value);
            else if (key == "beta") cfg.train.uvs.beta = parse_double(qualified, value);
            else if (key == "dual_iters") cfg.train.uvs.dual_iters = static_cast<int>(parse_long(qualified, value));
            else if (key == "warm_start") cfg.train.uvs.warm_start = parse_bool(qualified, value);
            else throw ConfigError(qualified, "unknown key '" + qualified + "'");
        } else if (section == "cgr") {
            if (key == "tau") cfg.train.cgr.tau = parse_double(qualified, value);
            else throw ConfigError(qualified, "unknown key '" + qualified + "'");
        } else if (section == "run") {
            if (key == "strategies") cfg.strategies = parse_strategies(qualified, value);
            else if (key == "emit_data") cfg.emit_data = parse_bool(qualified, value);
            else throw ConfigError(qualified, "unknown key '" + qualified + "'");
        } else {
            throw ConfigError(key, "key '" + key + "' outside any section");
        }
    }

    if (require_explicit_physics) {
        for (const char* needed : {"uvs.c", "cgr.tau", "train.alpha", "bench.kappa"}) {
            if (!seen.count(needed)) {
                throw ConfigError(needed, std::string("missing required key '") + needed + "'");
            }
        }
    }

    if (cfg.train.alpha <= 0.0) throw ConfigError("train.alpha", "train.alpha must be > 0");
    if (cfg.train.steps < 1) throw ConfigError("train.steps", "train.steps must be >= 1");
    if (cfg.train.uvs.c <= 0.0) throw ConfigError("uvs.c", "uvs.c must be > 0");
    if (cfg.train.uvs.beta <= 0.0) throw ConfigError("uvs.beta", "uvs.beta must be > 0");
    if (cfg.train.uvs.dual_iters < 1) throw ConfigError("uvs.dual_iters", "uvs.dual_iters must be >= 1");
    if (cfg.train.cgr.tau < 0.0) throw ConfigError("cgr.tau", "cgr.tau must be >= 0");
    try {
        cfg.bench.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError("bench", e.what());
    }
    return cfg;
}

std::string serialize_experiment_config(const ExperimentConfig& cfg) {
    std::string out;
    out += "[bench]\n";
    out += "dim = " + std::to_string(cfg.bench.dim) + "\n";
    out += "n_per_class = " + std::to_string(cfg.bench.n_per_class) + "\n";
    out += "kappa = " + format_double(cfg.bench.conflict_strength) + "\n";
    out += "noise_sigma = " + format_double(cfg.bench.noise_sigma) + "\n";
    out += "seed = " + std::to_string(cfg.bench.seed) + "\n";
    out += "target_shift = " + format_double(cfg.bench.target_shift) + "\n";
    out += "\n[train]\n";
    out += "alpha = " + format_double(cfg.train.alpha) + "\n";
    out += "steps = " + std::to_string(cfg.train.steps) + "\n";
    out += "batch_size = " + std::to_string(cfg.train.batch_size) + "\n";
    out += "seed = " + std::to_string(cfg.train.seed) + "\n";
    out += "eval_every = " + std::to_string(cfg.train.eval_every) + "\n";
    out += "log_window = " + std::to_string(cfg.train.log_window) + "\n";
    out += "\n[uvs]\n";
    out += "c = " + format_double(cfg.train.uvs.c) + "\n";
    out += "beta = " + format_double(cfg.train.uvs.beta) + "\n";
    out += "dual_iters = " + std::to_string(cfg.train.uvs.dual_iters) + "\n";
    out += std::string("warm_start = ") + (cfg.train.uvs.warm_start ? "true" : "false") + "\n";
    out += "\n[cgr]\n";
    out += "tau = " + format_double(cfg.train.cgr.tau) + "\n";
    out += "\n[run]\n";
    out += "strategies = ";
    for (std::size_t i = 0; i < cfg.strategies.size(); ++i) {
        if (i > 0) out += ",";
        out += strategy_name(cfg.strategies[i]);
    }
    out += "\n";
    out += std::string("emit_data = ") + (cfg.emit_data ? "true" : "false") + "\n";
    return out;
}

}  // namespace csdfd
