#ifndef SIGNET_RATIONAL_HPP
#define SIGNET_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <type_traits>

namespace signet {

/// Arbitrary-precision rational; the exact weight type.
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

template <class W>
inline constexpr bool is_exact_weight_v = std::is_same_v<W, Rational>;

inline double to_double(const Rational& r) { return r.template convert_to<double>(); }
inline double to_double(double x) { return x; }

inline Rational weight_abs(const Rational& w) { return w < 0 ? Rational(-w) : w; }
inline double weight_abs(double w) { return w < 0 ? -w : w; }

/// Sign of a weight as -1, 0, +1.
inline int weight_sign(const Rational& w) { return w > 0 ? 1 : (w < 0 ? -1 : 0); }
inline int weight_sign(double w) { return w > 0 ? 1 : (w < 0 ? -1 : 0); }

/// Parses "p", "+p", "-p" or "p/q" (no decimal point, no exponent).
/// Returns nullopt when the token is not of that shape or q == 0.
inline std::optional<Rational> parse_rational(std::string_view token) {
    if (token.empty()) return std::nullopt;
    std::size_t pos = 0;
    if (token[pos] == '+' || token[pos] == '-') ++pos;
    if (pos == token.size()) return std::nullopt;
    std::size_t digits = 0;
    while (pos < token.size() && token[pos] >= '0' && token[pos] <= '9') {
        ++pos;
        ++digits;
    }
    if (digits == 0) return std::nullopt;
    std::size_t slash = std::string_view::npos;
    if (pos < token.size()) {
        if (token[pos] != '/') return std::nullopt;
        slash = pos++;
        std::size_t den_digits = 0;
        while (pos < token.size() && token[pos] >= '0' && token[pos] <= '9') {
            ++pos;
            ++den_digits;
        }
        if (den_digits == 0 || pos != token.size()) return std::nullopt;
    }
    bool negative = token[0] == '-';
    std::size_t num_begin = (token[0] == '+' || token[0] == '-') ? 1 : 0;
    const std::string num_str(token.substr(num_begin, (slash == std::string_view::npos
                                                           ? token.size()
                                                           : slash) - num_begin));
    Integer num(num_str);
    Integer den = 1;
    if (slash != std::string_view::npos) {
        den = Integer(std::string(token.substr(slash + 1)));
        if (den == 0) return std::nullopt;
    }
    Rational r(num, den);
    if (negative) r = -r;
    return r;
}

/// "p/q" (or just "p" for integers); the exact round-trippable form.
inline std::string to_string(const Rational& r) {
    const Integer num = boost::multiprecision::numerator(r);
    const Integer den = boost::multiprecision::denominator(r);
    std::ostringstream os;
    os << num;
    if (den != 1) os << '/' << den;
    return os.str();
}

} // namespace signet

#endif // SIGNET_RATIONAL_HPP
