#include "cti/numeric.hpp"

#include <cctype>
#include <charconv>
#include <stdexcept>

namespace cti {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

BigInt pow10(long exponent) {
    BigInt result = 1;
    for (long i = 0; i < exponent; ++i) result *= 10;
    return result;
}

/// Decimal digit string to integer; a leading 0 would otherwise select octal.
BigInt decimal_integer(std::string_view digits) {
    const auto first = digits.find_first_not_of('0');
    if (first == std::string_view::npos) return 0;
    return BigInt(std::string(digits.substr(first)));
}

}  // namespace

Rational parse_decimal(std::string_view text) {
    const std::string original(text);
    bool negative = false;
    if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
        negative = text.front() == '-';
        text.remove_prefix(1);
    }

    long exponent = 0;
    if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
        std::string_view exp_text = text.substr(e + 1);
        bool exp_negative = false;
        if (!exp_text.empty() && (exp_text.front() == '-' || exp_text.front() == '+')) {
            exp_negative = exp_text.front() == '-';
            exp_text.remove_prefix(1);
        }
        if (!all_digits(exp_text) || exp_text.size() > 4) throw std::invalid_argument("malformed number: " + original);
        std::from_chars(exp_text.data(), exp_text.data() + exp_text.size(), exponent);
        if (exp_negative) exponent = -exponent;
        text = text.substr(0, e);
    }

    std::string_view int_part = text;
    std::string_view frac_part;
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
        int_part = text.substr(0, dot);
        frac_part = text.substr(dot + 1);
    }
    if (int_part.empty() && frac_part.empty()) throw std::invalid_argument("malformed number: " + original);
    if ((!int_part.empty() && !all_digits(int_part)) || (!frac_part.empty() && !all_digits(frac_part)))
        throw std::invalid_argument("malformed number: " + original);

    std::string digits(int_part);
    digits.append(frac_part);
    const BigInt mantissa = decimal_integer(digits);
    exponent -= static_cast<long>(frac_part.size());

    Rational value = exponent >= 0 ? Rational(mantissa * pow10(exponent)) : Rational(mantissa, pow10(-exponent));
    return negative ? Rational(-value) : value;
}

Rational parse_rational(std::string_view text) {
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        std::string_view num = text.substr(0, slash);
        std::string_view den = text.substr(slash + 1);
        bool negative = !num.empty() && num.front() == '-';
        if (negative) num.remove_prefix(1);
        if (!all_digits(num) || !all_digits(den)) throw std::invalid_argument("malformed fraction: " + std::string(text));
        const BigInt d = decimal_integer(den);
        if (d == 0) throw std::invalid_argument("zero denominator: " + std::string(text));
        Rational value(decimal_integer(num), d);
        return negative ? Rational(-value) : value;
    }
    return parse_decimal(text);
}

std::string format_fixed(const Rational& value, int decimals) {
    const bool negative = value < 0;
    const Rational magnitude = negative ? Rational(-value) : value;
    const BigInt scale = pow10(decimals);
    // floor(magnitude * scale + 1/2)
    const Rational scaled = magnitude * scale + Rational(1, 2);
    BigInt rounded = boost::multiprecision::numerator(scaled) / boost::multiprecision::denominator(scaled);

    std::string digits = rounded.str();
    if (static_cast<int>(digits.size()) <= decimals) digits.insert(0, decimals + 1 - digits.size(), '0');
    std::string out;
    if (negative && rounded != 0) out.push_back('-');
    out.append(digits, 0, digits.size() - decimals);
    if (decimals > 0) {
        out.push_back('.');
        out.append(digits, digits.size() - decimals, std::string::npos);
    }
    return out;
}

std::string format_fraction(const Rational& value) {
    return boost::multiprecision::numerator(value).str() + "/" + boost::multiprecision::denominator(value).str();
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

}  // namespace cti
