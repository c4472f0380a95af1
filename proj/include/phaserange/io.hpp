#ifndef PHASERANGE_IO_HPP
#define PHASERANGE_IO_HPP

// Text formats: one value per line, '#' starts a comment, blank lines are
// ignored. Plan files hold wavelengths as "p" or "p/q"; phase files hold
// decimal reals.

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "phaserange/errors.hpp"
#include "phaserange/estimator.hpp"
#include "phaserange/exactmath.hpp"
#include "phaserange/plan.hpp"

namespace phaserange {

namespace detail {

struct Line {
    std::size_t number;
    std::string text;
};

inline std::vector<Line> content_lines(std::istream& in) {
    std::vector<Line> out;
    std::string raw;
    for (std::size_t number = 1; std::getline(in, raw); ++number) {
        if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        const auto first = raw.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        const auto last = raw.find_last_not_of(" \t\r");
        out.push_back({number, raw.substr(first, last - first + 1)});
    }
    return out;
}

inline std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    require(in.good(), path + ": cannot open file");
    return in;
}

} // namespace detail

inline std::vector<Rational> parse_wavelengths(std::istream& in, const std::string& source) {
    std::vector<Rational> ws;
    for (const detail::Line& line : detail::content_lines(in)) {
        const std::string where = source + ":" + std::to_string(line.number) + ": ";
        Rational w;
        try {
            w = Rational::parse(line.text);
        } catch (const InputError& e) {
            throw InputError(where + e.what());
        }
        detail::require(w.sign() > 0, where + "wavelength " + w.str() + " is not positive");
        ws.push_back(std::move(w));
    }
    detail::require(ws.size() >= 2, source + ": need at least 2 wavelengths, found " + std::to_string(ws.size()));
    return ws;
}

inline RangingPlan read_plan_file(const std::string& path) {
    std::ifstream in = detail::open_input(path);
    return build_plan(parse_wavelengths(in, path));
}

inline std::vector<double> parse_reals(std::istream& in, const std::string& source) {
    std::vector<double> xs;
    for (const detail::Line& line : detail::content_lines(in)) {
        const char* begin = line.text.c_str();
        char* end = nullptr;
        errno = 0;
        const double x = std::strtod(begin, &end);
        detail::require(end != begin && *end == '\0' && errno == 0 && std::isfinite(x),
                        source + ":" + std::to_string(line.number) + ": not a finite real: '" + line.text + "'");
        xs.push_back(x);
    }
    return xs;
}

inline PhaseObservation read_phase_file(const std::string& path, std::size_t expected) {
    std::ifstream in = detail::open_input(path);
    std::vector<double> ys = parse_reals(in, path);
    detail::require(ys.size() == expected, path + ": expected " + std::to_string(expected) + " phases, found " +
                                               std::to_string(ys.size()));
    try {
        return PhaseObservation(std::move(ys));
    } catch (const InputError& e) {
        throw InputError(path + ": " + e.what());
    }
}

} // namespace phaserange

#endif
