#include "stablesde/config.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "stablesde/errors.hpp"
#include "stablesde/num_format.hpp"

namespace stablesde {

std::vector<double> RunConfig::study_deltas() const {
    if (!deltas.empty()) return deltas;
    std::vector<double> out;
    for (int k = 4; k <= 9; ++k) out.push_back(horizon / static_cast<double>(1 << k));
    return out;
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<double> parse_delta_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(parse_double(item));
    }
    return out;
}

std::string render_delta_list(const std::vector<double>& deltas) {
    std::string out;
    for (std::size_t i = 0; i < deltas.size(); ++i) {
        if (i) out += ",";
        out += format_double(deltas[i]);
    }
    return out;
}

}  // namespace

RunConfig RunConfig::parse(const std::string& text) {
    RunConfig c;
    c.deltas.clear();

    using Setter = std::function<void(RunConfig&, const std::string&)>;
    static const std::map<std::string, Setter> setters = {
        {"problem.drift", [](RunConfig& r, const std::string& v) { r.drift = v; }},
        {"problem.x0", [](RunConfig& r, const std::string& v) { r.x0 = parse_double(v); }},
        {"problem.alpha", [](RunConfig& r, const std::string& v) { r.alpha = parse_double(v); }},
        {"problem.T", [](RunConfig& r, const std::string& v) { r.horizon = parse_double(v); }},
        {"study.deltas", [](RunConfig& r, const std::string& v) { r.deltas = parse_delta_list(v); }},
        {"study.ref_ratio", [](RunConfig& r, const std::string& v) { r.ref_ratio = parse_int(v); }},
        {"study.paths", [](RunConfig& r, const std::string& v) { r.paths = parse_int(v); }},
        {"study.p", [](RunConfig& r, const std::string& v) { r.p = parse_double(v); }},
        {"study.seed",
         [](RunConfig& r, const std::string& v) { r.seed = static_cast<std::uint64_t>(parse_int(v)); }},
        {"study.threads",
         [](RunConfig& r, const std::string& v) { r.threads = static_cast<int>(parse_int(v)); }},
        {"study.rate_margin",
         [](RunConfig& r, const std::string& v) { r.rate_margin = parse_double(v); }},
        {"sample.alpha",
         [](RunConfig& r, const std::string& v) { r.sample_alpha = parse_double(v); }},
        {"sample.sigma",
         [](RunConfig& r, const std::string& v) { r.sample_sigma = parse_double(v); }},
        {"sample.n", [](RunConfig& r, const std::string& v) { r.sample_n = parse_int(v); }},
        {"sample.seed",
         [](RunConfig& r, const std::string& v) {
             r.sample_seed = static_cast<std::uint64_t>(parse_int(v));
         }},
        {"constants.q",
         [](RunConfig& r, const std::string& v) { r.constants_q = parse_double(v); }},
        {"constants.p",
         [](RunConfig& r, const std::string& v) { r.constants_p = parse_double(v); }},
        {"constants.delta",
         [](RunConfig& r, const std::string& v) { r.constants_delta = parse_double(v); }},
        {"moments.q", [](RunConfig& r, const std::string& v) { r.moments_q = parse_double(v); }},
        {"moments.delta",
         [](RunConfig& r, const std::string& v) { r.moments_delta = parse_double(v); }},
        {"moments.paths",
         [](RunConfig& r, const std::string& v) { r.moments_paths = parse_int(v); }},
        {"moments.seed",
         [](RunConfig& r, const std::string& v) {
             r.moments_seed = static_cast<std::uint64_t>(parse_int(v));
         }},
        {"gap.q", [](RunConfig& r, const std::string& v) { r.gap_q = parse_double(v); }},
        {"gap.ref_ratio",
         [](RunConfig& r, const std::string& v) { r.gap_ref_ratio = parse_int(v); }},
        {"gap.paths", [](RunConfig& r, const std::string& v) { r.gap_paths = parse_int(v); }},
        {"gap.seed",
         [](RunConfig& r, const std::string& v) {
             r.gap_seed = static_cast<std::uint64_t>(parse_int(v));
         }},
    };

    std::stringstream ss(text);
    std::string line, section;
    int line_no = 0;
    while (std::getline(ss, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw validation_error("config line " + std::to_string(line_no) +
                                       ": unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw validation_error("config line " + std::to_string(line_no) +
                                   ": expected key = value");
        const std::string key = section + "." + trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const auto it = setters.find(key);
        if (it == setters.end())
            throw validation_error("config line " + std::to_string(line_no) + ": unknown key '" +
                                   key + "'");
        it->second(c, value);
    }
    return c;
}

RunConfig RunConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open config file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

std::string RunConfig::render() const {
    std::string out;
    out += "[problem]\n";
    out += "drift = " + drift + "\n";
    out += "x0 = " + format_double(x0) + "\n";
    out += "alpha = " + format_double(alpha) + "\n";
    out += "T = " + format_double(horizon) + "\n";
    out += "\n[study]\n";
    out += "deltas = " + render_delta_list(deltas) + "\n";
    out += "ref_ratio = " + std::to_string(ref_ratio) + "\n";
    out += "paths = " + std::to_string(paths) + "\n";
    out += "p = " + format_double(p) + "\n";
    out += "seed = " + std::to_string(seed) + "\n";
    out += "threads = " + std::to_string(threads) + "\n";
    out += "rate_margin = " + format_double(rate_margin) + "\n";
    out += "\n[sample]\n";
    out += "alpha = " + format_double(sample_alpha) + "\n";
    out += "sigma = " + format_double(sample_sigma) + "\n";
    out += "n = " + std::to_string(sample_n) + "\n";
    out += "seed = " + std::to_string(sample_seed) + "\n";
    out += "\n[constants]\n";
    out += "q = " + format_double(constants_q) + "\n";
    out += "p = " + format_double(constants_p) + "\n";
    out += "delta = " + format_double(constants_delta) + "\n";
    out += "\n[moments]\n";
    out += "q = " + format_double(moments_q) + "\n";
    out += "delta = " + format_double(moments_delta) + "\n";
    out += "paths = " + std::to_string(moments_paths) + "\n";
    out += "seed = " + std::to_string(moments_seed) + "\n";
    out += "\n[gap]\n";
    out += "q = " + format_double(gap_q) + "\n";
    out += "ref_ratio = " + std::to_string(gap_ref_ratio) + "\n";
    out += "paths = " + std::to_string(gap_paths) + "\n";
    out += "seed = " + std::to_string(gap_seed) + "\n";
    return out;
}

}  // namespace stablesde
