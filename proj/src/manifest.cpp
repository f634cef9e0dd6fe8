#include "manifest.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "error.hpp"
#include "simkit.hpp"

namespace acmpc::manifest {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t");
    return s.substr(a, b - a + 1);
}

// Strip a trailing comment, respecting double-quoted strings.
std::string strip_comment(const std::string& line) {
    bool in_string = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') in_string = !in_string;
        if (line[i] == '#' && !in_string) return line.substr(0, i);
    }
    return line;
}

}  // namespace

Document Document::parse_string(const std::string& text, const std::string& origin) {
    Document doc;
    doc.origin_ = origin;
    std::istringstream in(text);
    std::string line, section;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(strip_comment(line));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw_data(origin + ":" + std::to_string(lineno) + ": unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty())
                throw_data(origin + ":" + std::to_string(lineno) + ": empty section name");
            if (doc.values_.count(section))
                throw_data(origin + ":" + std::to_string(lineno) + ": duplicate section [" +
                           section + "]");
            doc.values_[section];
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw_data(origin + ":" + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw_data(origin + ":" + std::to_string(lineno) + ": empty key");
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
            value = value.substr(1, value.size() - 2);
        doc.values_[section][key] = value;
    }
    return doc;
}

Document Document::parse_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw_io("cannot open manifest '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_string(ss.str(), path);
}

bool Document::has(const std::string& section, const std::string& key) const {
    const auto it = values_.find(section);
    return it != values_.end() && it->second.count(key) > 0;
}

std::vector<std::string> Document::sections() const {
    std::vector<std::string> out;
    for (const auto& [name, _] : values_) out.push_back(name);
    return out;
}

std::string Document::get_string(const std::string& section, const std::string& key,
                                 const std::string& fallback) const {
    const auto it = values_.find(section);
    if (it == values_.end()) return fallback;
    const auto kv = it->second.find(key);
    return kv == it->second.end() ? fallback : kv->second;
}

double Document::get_number(const std::string& section, const std::string& key,
                            double fallback) const {
    if (!has(section, key)) return fallback;
    const std::string raw = get_string(section, key, "");
    try {
        std::size_t pos = 0;
        const double v = std::stod(raw, &pos);
        if (pos != raw.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw_data(origin_ + ": key '" + section + "." + key + "' is not a number: '" + raw + "'");
    }
}

bool Document::get_bool(const std::string& section, const std::string& key, bool fallback) const {
    if (!has(section, key)) return fallback;
    const std::string raw = get_string(section, key, "");
    if (raw == "true") return true;
    if (raw == "false") return false;
    throw_data(origin_ + ": key '" + section + "." + key + "' is not a boolean: '" + raw + "'");
}

ExperimentManifest manifest_from_document(const Document& doc, const std::string& base_dir) {
    ExperimentManifest m;
    m.seed = static_cast<std::uint64_t>(doc.get_number("experiment", "seed", 42));
    m.train_days = static_cast<int>(doc.get_number("experiment", "train_days", 14));
    m.eval_days = static_cast<int>(doc.get_number("experiment", "eval_days", 6));
    m.eval_profile = doc.get_string("experiment", "profile", "hot_humid");
    m.train_profile = doc.get_string("experiment", "train_profile", "july");
    m.mpc_training_fraction = doc.get_number("experiment", "mpc_training_fraction", 0.25);
    m.moisture_scale = doc.get_number("experiment", "moisture_scale", 1.0);
    if (doc.has("experiment", "weather_csv"))
        m.weather_csv = doc.get_string("experiment", "weather_csv", "");

    m.comfort.met = doc.get_number("comfort", "met", 1.1);
    m.comfort.clo = doc.get_number("comfort", "clo", 0.5);
    m.comfort.v_air = doc.get_number("comfort", "v_air", 0.1);
    m.comfort.fallback_rh = doc.get_number("comfort", "fallback_rh", 0.5);

    m.mpc.t_pref = doc.get_number("mpc", "t_pref", m.mpc.t_pref);
    m.mpc.delta = doc.get_number("mpc", "delta", m.mpc.delta);
    m.mpc.pi_e = doc.get_number("mpc", "pi_e", m.mpc.pi_e);
    m.mpc.pi_d = doc.get_number("mpc", "pi_d", m.mpc.pi_d);
    m.mpc.pi_peak = doc.get_number("mpc", "pi_peak", m.mpc.pi_peak);
    m.mpc.p_hp_max = doc.get_number("mpc", "p_hp_max", m.mpc.p_hp_max);
    m.mpc.horizon = static_cast<int>(doc.get_number("mpc", "horizon", m.mpc.horizon));

    std::set<std::string> labels;
    for (const auto& section : doc.sections()) {
        if (section.rfind("scenario.", 0) != 0) continue;
        ScenarioSpec s;
        s.label = section.substr(9);
        if (s.label.empty()) throw_data("manifest: empty scenario label");
        if (!labels.insert(s.label).second)
            throw_data("manifest: duplicate scenario label '" + s.label + "'");
        s.controller = doc.get_string(section, "controller", "benchmark");
        s.mode = doc.get_string(section, "mode", "cost");
        sim::controller_from_string(s.controller);  // validate
        if (s.mode != "cost" && s.mode != "limit")
            throw_data("manifest: scenario '" + s.label + "' has unknown mode '" + s.mode + "'");
        m.scenarios.push_back(std::move(s));
    }
    if (m.scenarios.empty()) throw_data("manifest: no [scenario.*] sections");
    if (m.train_days < 3) throw_data("manifest: train_days must be at least 3");
    if (m.eval_days < 1) throw_data("manifest: eval_days must be at least 1");

    if (m.weather_csv) {
        namespace fs = std::filesystem;
        fs::path p = *m.weather_csv;
        if (p.is_relative()) p = fs::path(base_dir) / p;
        if (!fs::exists(p))
            throw_data("manifest: referenced weather file '" + p.string() + "' does not exist");
        m.weather_csv = p.string();
    }
    return m;
}

ExperimentManifest load_manifest(const std::string& path) {
    const auto doc = Document::parse_file(path);
    return manifest_from_document(doc,
                                  std::filesystem::path(path).parent_path().string());
}

}  // namespace acmpc::manifest
