#include "stablesde/num_format.hpp"

#include <charconv>
#include <cmath>
#include <system_error>

#include "stablesde/errors.hpp"

namespace stablesde {

std::string format_double(double value) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, ptr);  // to_chars emits the shortest round-trip form
}

namespace {

double parse_plain_double(std::string_view text) {
    double out = 0.0;
    // Skip an explicit leading '+' which from_chars does not accept.
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw validation_error("not a number: '" + std::string(text) + "'");
    return out;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

}  // namespace

double parse_double(std::string_view text) {
    text = trim(text);
    if (text.empty()) throw validation_error("empty number");
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        const double num = parse_plain_double(trim(text.substr(0, slash)));
        const double den = parse_plain_double(trim(text.substr(slash + 1)));
        if (den == 0.0) throw validation_error("zero denominator in '" + std::string(text) + "'");
        return num / den;
    }
    return parse_plain_double(text);
}

long long parse_int(std::string_view text) {
    text = trim(text);
    long long out = 0;
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    if (ec != std::errc{} || ptr != text.data() + text.size())
        throw validation_error("not an integer: '" + std::string(text) + "'");
    return out;
}

}  // namespace stablesde
