#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "calkin/errors.hpp"

namespace calkin {

using rational = boost::multiprecision::cpp_rational;
using bigint = boost::multiprecision::cpp_int;

inline double to_double(const rational& r) { return static_cast<double>(r); }

// Canonical "p/q" with q > 0, always including the denominator ("3/1", "-1/2").
inline std::string rational_string(const rational& r) {
    return numerator(r).str() + "/" + denominator(r).str();
}

namespace detail {

inline bool parse_uint_digits(std::string_view& s, bigint& out) {
    if (s.empty() || !std::isdigit(static_cast<unsigned char>(s[0]))) return false;
    out = 0;
    while (!s.empty() && std::isdigit(static_cast<unsigned char>(s[0]))) {
        out = out * 10 + (s[0] - '0');
        s.remove_prefix(1);
    }
    return true;
}

// One signed term: [sign] digits [/ digits] [i]  or  [sign] i.
// Returns {value, is_imaginary}.
struct rational_term {
    rational value;
    bool imaginary = false;
};

inline std::optional<rational_term> parse_term(std::string_view& s) {
    int sign = 1;
    if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
        sign = (s[0] == '-') ? -1 : 1;
        s.remove_prefix(1);
    } else if (s.size() >= 3 && s.substr(0, 3) == "\xe2\x88\x92") { // U+2212 minus
        sign = -1;
        s.remove_prefix(3);
    }
    rational_term t;
    if (!s.empty() && (s[0] == 'i' || s[0] == 'I')) {
        s.remove_prefix(1);
        t.value = sign;
        t.imaginary = true;
        return t;
    }
    bigint num;
    if (!parse_uint_digits(s, num)) return std::nullopt;
    bigint den = 1;
    if (!s.empty() && s[0] == '/') {
        s.remove_prefix(1);
        if (!parse_uint_digits(s, den) || den == 0) return std::nullopt;
    }
    t.value = rational(sign * num, den);
    if (!s.empty() && (s[0] == 'i' || s[0] == 'I')) {
        s.remove_prefix(1);
        t.imaginary = true;
    }
    return t;
}

} // namespace detail

// Parses "p/q", "p", "p/q+r/si", "-i", "3-2i", ... (ASCII '-' or U+2212).
// Whitespace is ignored. Used for both real and Gaussian-rational inputs.
struct parsed_gaussian {
    rational re;
    rational im;
};

inline parsed_gaussian parse_gaussian_rational(std::string_view input) {
    std::string compact;
    compact.reserve(input.size());
    for (char c : input)
        if (!std::isspace(static_cast<unsigned char>(c))) compact.push_back(c);
    std::string_view s(compact);
    parsed_gaussian g;
    bool saw_re = false, saw_im = false;
    while (!s.empty()) {
        auto term = detail::parse_term(s);
        if (!term) throw error(errc::parse_error, "bad rational literal '" + std::string(input) + "'");
        if (term->imaginary) {
            if (saw_im) throw error(errc::parse_error, "duplicate imaginary part in '" + std::string(input) + "'");
            g.im = term->value;
            saw_im = true;
        } else {
            if (saw_re) throw error(errc::parse_error, "duplicate real part in '" + std::string(input) + "'");
            g.re = term->value;
            saw_re = true;
        }
    }
    if (!saw_re && !saw_im)
        throw error(errc::parse_error, "empty rational literal");
    return g;
}

} // namespace calkin
