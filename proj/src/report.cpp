#include "report.hpp"

#include <fstream>
#include <sstream>

namespace superflat {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream stream(s);
    while (std::getline(stream, item, ',')) {
        item = trim(item);
        if (!item.empty())
            out.push_back(item);
    }
    return out;
}

long parse_long(const std::string& text, const std::string& what) {
    try {
        std::size_t used = 0;
        const long value = std::stol(text, &used);
        if (used != text.size())
            throw std::invalid_argument(text);
        return value;
    } catch (const std::exception&) {
        throw ConfigError("bad " + what + " '" + text + "'");
    }
}

} // namespace

SuperDims parse_dims(const std::string& text) {
    const auto parts = split_list(text);
    if (parts.size() != 3)
        throw ConfigError("dims must be 'n,m,k', got '" + text + "'");
    return SuperDims(static_cast<int>(parse_long(parts[0], "dims entry")),
                     static_cast<int>(parse_long(parts[1], "dims entry")),
                     static_cast<int>(parse_long(parts[2], "dims entry")));
}

SuiteConfig parse_suite_config_text(const std::string& text) {
    SuiteConfig config;
    std::istringstream stream(text);
    std::string line;
    int line_no = 0;
    while (std::getline(stream, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(line_no) +
                              " is not 'key = value': '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (value.empty())
            throw ConfigError("config key '" + key + "' has no value (line " +
                              std::to_string(line_no) + ")");

        if (key == "case") {
            config.cases.push_back(parse_dims(value));
        } else if (key == "trials") {
            config.trials = static_cast<int>(parse_long(value, "trials"));
        } else if (key == "seed") {
            config.seed = static_cast<std::uint64_t>(parse_long(value, "seed"));
        } else if (key == "kappa") {
            try {
                config.kappas.push_back(rat_parse(value));
            } catch (const Error&) {
                throw ConfigError("bad kappa '" + value + "' (line " + std::to_string(line_no) +
                                  ")");
            }
        } else if (key == "checks") {
            for (auto& name : split_list(value))
                config.checks.push_back(std::move(name));
        } else if (key == "mutation") {
            try {
                config.mutation = mutation_from_name(value);
            } catch (const Error&) {
                throw ConfigError("bad mutation '" + value + "' (line " +
                                  std::to_string(line_no) + ")");
            }
        } else if (key == "out") {
            config.output_path = value;
        } else {
            throw ConfigError("unknown config key '" + key + "' (line " +
                              std::to_string(line_no) + ")");
        }
    }
    return config;
}

SuiteConfig parse_suite_config_file(const std::string& path) {
    return parse_suite_config_text(read_text_file(path));
}

nlohmann::ordered_json suite_config_json(const SuiteConfig& config) {
    nlohmann::ordered_json j;
    j["cases"] = nlohmann::ordered_json::array();
    for (const SuperDims& dims : config.cases)
        j["cases"].push_back(dims.to_string());
    j["trials"] = config.trials;
    j["seed"] = config.seed;
    j["kappas"] = nlohmann::ordered_json::array();
    for (const Rat& kappa : config.effective_kappas())
        j["kappas"].push_back(rat_string(kappa));
    j["checks"] = config.checks.empty() ? nlohmann::ordered_json("all")
                                        : nlohmann::ordered_json(config.checks);
    j["mutation"] = mutation_name(config.mutation);
    return j;
}

nlohmann::ordered_json check_json(const CheckResult& check) {
    nlohmann::ordered_json j;
    j["name"] = check.name;
    nlohmann::ordered_json params;
    for (const auto& [key, value] : check.params)
        params[key] = value;
    j["params"] = std::move(params);
    j["status"] = status_name(check.status);
    if (const Rat* exact = std::get_if<Rat>(&check.residual))
        j["max_abs_residual"] = rat_string(*exact);
    else
        j["max_abs_residual"] = std::get<double>(check.residual);
    if (!check.witness.empty())
        j["witness"] = check.witness;
    return j;
}

nlohmann::ordered_json report_json(const nlohmann::ordered_json& config,
                                   const std::vector<CheckResult>& checks,
                                   double elapsed_seconds) {
    nlohmann::ordered_json j;
    j["schema"] = 1;
    j["config"] = config;
    j["checks"] = nlohmann::ordered_json::array();
    for (const CheckResult& check : checks)
        j["checks"].push_back(check_json(check));
    j["elapsed_seconds"] = elapsed_seconds;
    return j;
}

std::string report_string(const nlohmann::ordered_json& report) {
    return report.dump(2) + "\n";
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot read '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot write '" + path + "'");
    out << content;
    if (!out)
        throw IoError("short write to '" + path + "'");
}

} // namespace superflat
