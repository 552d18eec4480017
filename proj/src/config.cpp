#include "hrsync/config.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <set>
#include <sstream>

namespace hrsync {

ConfigError::ConfigError(int line, const std::string& message)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message
                                  : message),
      line(line)
{
}

const std::map<std::string, std::vector<std::string>>& config_schema()
{
    static const std::map<std::string, std::vector<std::string>> schema = {
        {"parameters",
         {"preset", "a", "b", "alpha", "beta", "q", "S", "r", "c", "J", "d", "p"}},
        {"grid", {"dimension", "points", "length"}},
        {"stepper", {"dt", "scheme", "check_interval"}},
        {"initial", {"generator", "seed", "amplitude", "values"}},
        {"experiment",
         {"name", "T", "sample_every", "p_lo", "p_hi", "tol", "epsilon", "slack",
          "radius"}},
    };
    return schema;
}

std::string nearest_key(const std::string& key,
                        const std::vector<std::string>& candidates)
{
    auto distance = [](const std::string& s, const std::string& t) {
        std::vector<std::size_t> prev(t.size() + 1), cur(t.size() + 1);
        for (std::size_t j = 0; j <= t.size(); ++j) prev[j] = j;
        for (std::size_t i = 1; i <= s.size(); ++i) {
            cur[0] = i;
            for (std::size_t j = 1; j <= t.size(); ++j) {
                const std::size_t sub = prev[j - 1] + (s[i - 1] == t[j - 1] ? 0 : 1);
                cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
            }
            std::swap(prev, cur);
        }
        return prev[t.size()];
    };
    std::string best;
    std::size_t best_d = std::string::npos;
    for (const auto& c : candidates) {
        const std::size_t d = distance(key, c);
        if (d < best_d) {
            best_d = d;
            best = c;
        }
    }
    return best;
}

namespace {

std::string trim(const std::string& s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double to_double(const ConfigDocument::Entry& e)
{
    double v = 0.0;
    const char* begin = e.value.data();
    const char* end = begin + e.value.size();
    const auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc() || ptr != end)
        throw ConfigError(e.line, "'" + e.key + "' expects a number, got '" + e.value + "'");
    return v;
}

template <typename Int>
Int to_integer(const ConfigDocument::Entry& e)
{
    Int v = 0;
    const char* begin = e.value.data();
    const char* end = begin + e.value.size();
    const auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc() || ptr != end)
        throw ConfigError(e.line, "'" + e.key + "' expects an integer, got '" + e.value + "'");
    return v;
}

OdePoint to_point(const ConfigDocument::Entry& e)
{
    OdePoint out{};
    std::stringstream in(e.value);
    std::string item;
    std::size_t n = 0;
    while (std::getline(in, item, ',')) {
        if (n == kComponents)
            throw ConfigError(e.line, "'values' expects exactly six numbers");
        out[n++] = to_double({e.key, trim(item), e.line});
    }
    if (n != kComponents) throw ConfigError(e.line, "'values' expects exactly six numbers");
    return out;
}

std::string fmt(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

ConfigDocument parse_config_document(const std::string& text)
{
    ConfigDocument doc;
    const auto& schema = config_schema();
    std::istringstream in(text);
    std::string raw;
    std::string section;
    std::set<std::pair<std::string, std::string>> seen;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto hash = raw.find('#');
        const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError(line_no, "unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            if (!schema.contains(section)) {
                std::vector<std::string> names;
                for (const auto& [name, keys] : schema) names.push_back(name);
                throw ConfigError(line_no, "unknown section [" + section + "]; did you mean [" +
                                               nearest_key(section, names) + "]?");
            }
            doc.sections[section];
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError(line_no, "expected 'key = value'");
        if (section.empty()) throw ConfigError(line_no, "key outside of any [section]");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const auto& keys = schema.at(section);
        if (std::find(keys.begin(), keys.end(), key) == keys.end())
            throw ConfigError(line_no, "unknown key '" + key + "' in [" + section +
                                           "]; nearest valid key is '" +
                                           nearest_key(key, keys) + "'");
        if (value.empty()) throw ConfigError(line_no, "empty value for '" + key + "'");
        if (!seen.insert({section, key}).second)
            throw ConfigError(line_no, "duplicate key '" + key + "' in [" + section + "]");
        doc.sections[section].push_back({key, value, line_no});
    }
    return doc;
}

RunConfig parse_run_config(const std::string& text)
{
    const ConfigDocument doc = parse_config_document(text);
    auto find = [&](const std::string& section,
                    const std::string& key) -> const ConfigDocument::Entry* {
        const auto it = doc.sections.find(section);
        if (it == doc.sections.end()) return nullptr;
        for (const auto& e : it->second)
            if (e.key == key) return &e;
        return nullptr;
    };

    RunConfig config;
    if (const auto* e = find("parameters", "preset")) {
        try {
            config.params = preset_parameters(e->value);
        } catch (const std::invalid_argument& ex) {
            throw ConfigError(e->line, ex.what());
        }
        config.preset = e->value;
    }
    Parameters& P = config.params;
    const std::pair<const char*, double*> numeric[] = {
        {"a", &P.a}, {"b", &P.b}, {"alpha", &P.alpha}, {"beta", &P.beta},
        {"q", &P.q}, {"r", &P.r}, {"c", &P.c},         {"J", &P.J},
        {"d", &P.d}, {"p", &P.p},
    };
    for (const auto& [key, target] : numeric)
        if (const auto* e = find("parameters", key)) *target = to_double(*e);
    if (const auto* e = find("parameters", "S")) P.q = P.r * to_double(*e);

    if (const auto* e = find("grid", "dimension")) config.grid.dimension = to_integer<int>(*e);
    if (const auto* e = find("grid", "points")) config.grid.points = to_integer<int>(*e);
    if (const auto* e = find("grid", "length")) config.grid.length = to_double(*e);
    P.dimension = config.grid.dimension;
    P.domain_length = config.grid.length;

    if (const auto* e = find("stepper", "dt")) config.stepper.dt = to_double(*e);
    if (const auto* e = find("stepper", "scheme")) {
        try {
            config.stepper.scheme = parse_scheme(e->value);
        } catch (const std::invalid_argument& ex) {
            throw ConfigError(e->line, ex.what());
        }
    }
    if (const auto* e = find("stepper", "check_interval"))
        config.stepper.check_interval = to_integer<int>(*e);

    if (const auto* e = find("initial", "generator")) config.initial.generator = e->value;
    if (const auto* e = find("initial", "seed"))
        config.initial.seed = to_integer<std::uint64_t>(*e);
    if (const auto* e = find("initial", "amplitude")) config.initial.amplitude = to_double(*e);
    if (const auto* e = find("initial", "values")) config.initial.values = to_point(*e);

    auto& X = config.experiment;
    X.T = config.preset == "typical" ? 2000.0 : 20.0;
    if (const auto* e = find("experiment", "name")) X.name = e->value;
    const std::pair<const char*, double*> exp_numeric[] = {
        {"T", &X.T},     {"p_lo", &X.p_lo},       {"p_hi", &X.p_hi},   {"tol", &X.tol},
        {"epsilon", &X.epsilon}, {"slack", &X.slack}, {"radius", &X.radius},
    };
    for (const auto& [key, target] : exp_numeric)
        if (const auto* e = find("experiment", key)) *target = to_double(*e);
    if (const auto* e = find("experiment", "sample_every"))
        X.sample_every = to_integer<int>(*e);

    try {
        validate_run_config(config);
    } catch (const std::invalid_argument& ex) {
        throw ConfigError(0, std::string("invalid configuration: ") + ex.what());
    }
    return config;
}

std::string echo_run_config(const RunConfig& c)
{
    std::ostringstream out;
    const Parameters& P = c.params;
    out << "[parameters]\n"
        << "preset = " << c.preset << "\n"
        << "a = " << fmt(P.a) << "\n"
        << "b = " << fmt(P.b) << "\n"
        << "alpha = " << fmt(P.alpha) << "\n"
        << "beta = " << fmt(P.beta) << "\n"
        << "q = " << fmt(P.q) << "\n"
        << "r = " << fmt(P.r) << "\n"
        << "c = " << fmt(P.c) << "\n"
        << "J = " << fmt(P.J) << "\n"
        << "d = " << fmt(P.d) << "\n"
        << "p = " << fmt(P.p) << "\n"
        << "\n[grid]\n"
        << "dimension = " << c.grid.dimension << "\n"
        << "points = " << c.grid.points << "\n"
        << "length = " << fmt(c.grid.length) << "\n"
        << "\n[stepper]\n"
        << "dt = " << fmt(c.stepper.dt) << "\n"
        << "scheme = " << scheme_name(c.stepper.scheme) << "\n"
        << "check_interval = " << c.stepper.check_interval << "\n"
        << "\n[initial]\n"
        << "generator = " << c.initial.generator << "\n"
        << "seed = " << c.initial.seed << "\n"
        << "amplitude = " << fmt(c.initial.amplitude) << "\n"
        << "values = ";
    for (std::size_t i = 0; i < kComponents; ++i)
        out << (i ? ", " : "") << fmt(c.initial.values[i]);
    out << "\n\n[experiment]\n"
        << "name = " << c.experiment.name << "\n"
        << "T = " << fmt(c.experiment.T) << "\n"
        << "sample_every = " << c.experiment.sample_every << "\n"
        << "p_lo = " << fmt(c.experiment.p_lo) << "\n"
        << "p_hi = " << fmt(c.experiment.p_hi) << "\n"
        << "tol = " << fmt(c.experiment.tol) << "\n"
        << "epsilon = " << fmt(c.experiment.epsilon) << "\n"
        << "slack = " << fmt(c.experiment.slack) << "\n"
        << "radius = " << fmt(c.experiment.radius) << "\n";
    return out.str();
}

}  // namespace hrsync
