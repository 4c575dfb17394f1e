#include "qgtlab/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "qgtlab/csv.hpp"
#include "qgtlab/errors.hpp"

namespace qgt {

namespace {

std::string trim(const std::string& text) {
    const auto begin = text.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = text.find_last_not_of(" \t\r\n");
    return text.substr(begin, end - begin + 1);
}

}  // namespace

std::map<std::string, std::string> parse_key_value_text(const std::string& text) {
    std::map<std::string, std::string> config;
    std::istringstream stream(text);
    std::string line;
    int line_number = 0;
    while (std::getline(stream, line)) {
        ++line_number;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw SchemaError("config line " + std::to_string(line_number) +
                              " is not 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw SchemaError("empty config key on line " + std::to_string(line_number));
        config[key] = value;
    }
    return config;
}

std::map<std::string, std::string> parse_key_value_file(const std::string& path) {
    std::ifstream input(path);
    if (!input) throw Error("cannot open config '" + path + "'");
    std::ostringstream buffer;
    buffer << input.rdbuf();
    return parse_key_value_text(buffer.str());
}

namespace {

template <typename T, typename Parse>
std::vector<T> parse_list(const std::string& text, Parse parse) {
    std::vector<T> values;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ',')) {
        item = trim(item);
        const auto colon = item.find(':');
        if (colon == std::string::npos) {
            values.push_back(parse(item));
            continue;
        }
        const auto colon2 = item.find(':', colon + 1);
        const T start = parse(item.substr(0, colon));
        const T stop = parse(item.substr(colon + 1, colon2 == std::string::npos
                                                        ? std::string::npos
                                                        : colon2 - colon - 1));
        const T step = colon2 == std::string::npos ? T{1} : parse(item.substr(colon2 + 1));
        if (step <= T{0}) throw SchemaError("range step must be positive in '" + item + "'");
        const auto count =
            static_cast<long>(std::floor((static_cast<double>(stop) - static_cast<double>(start)) /
                                             static_cast<double>(step) +
                                         1e-9)) +
            1;
        if (count < 1) throw SchemaError("empty range '" + item + "'");
        for (long i = 0; i < count; ++i)
            values.push_back(static_cast<T>(start + static_cast<T>(i) * step));
    }
    if (values.empty()) throw SchemaError("empty list '" + text + "'");
    return values;
}

}  // namespace

std::vector<int> parse_int_list(const std::string& text) {
    return parse_list<int>(text, [](const std::string& s) {
        return static_cast<int>(std::llround(parse_double(s)));
    });
}

std::vector<double> parse_double_list(const std::string& text) {
    return parse_list<double>(text, [](const std::string& s) { return parse_double(s); });
}

}  // namespace qgt
