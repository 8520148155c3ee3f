#include "pushcert/rational.hpp"

#include "pushcert/errors.hpp"

#include <cstddef>

namespace pushcert {

namespace {

bool is_integer_literal(const std::string& s) {
    if (s.empty()) return false;
    std::size_t start = (s[0] == '+' || s[0] == '-') ? 1 : 0;
    if (start == s.size()) return false;
    for (std::size_t i = start; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') return false;
    }
    return true;
}

} // namespace

Rational parse_rational(const std::string& text) {
    // cpp_int's string constructor takes "-123" but not "+123".
    const auto strip_plus = [](const std::string& s) {
        return s.size() > 1 && s[0] == '+' ? s.substr(1) : s;
    };
    const auto slash = text.find('/');
    const std::string num_part = text.substr(0, slash);
    if (!is_integer_literal(num_part)) {
        fail(ErrorKind::Validation, "invalid rational literal: \"" + text + "\"");
    }
    BigInt numerator(strip_plus(num_part));
    if (slash == std::string::npos) {
        return Rational(numerator);
    }
    const std::string den_part = text.substr(slash + 1);
    if (!is_integer_literal(den_part)) {
        fail(ErrorKind::Validation, "invalid rational literal: \"" + text + "\"");
    }
    BigInt denominator(strip_plus(den_part));
    if (denominator == 0) {
        fail(ErrorKind::Validation, "zero denominator in rational literal: \"" + text + "\"");
    }
    if (denominator < 0) {
        numerator = -numerator;
        denominator = -denominator;
    }
    return Rational(numerator, denominator);
}

std::string rational_to_string(const Rational& value) {
    return value.str();
}

std::string rational_to_decimal(const Rational& value, int max_fraction_digits) {
    BigInt num = boost::multiprecision::numerator(value);
    const BigInt den = boost::multiprecision::denominator(value);
    std::string sign;
    if (num < 0) {
        sign = "-";
        num = -num;
    }
    const BigInt whole = num / den;
    BigInt remainder = num % den;
    if (remainder == 0) {
        return sign + whole.str();
    }
    std::string digits;
    bool exact = false;
    for (int i = 0; i < max_fraction_digits; ++i) {
        remainder *= 10;
        digits += static_cast<char>('0' + static_cast<int>(remainder / den));
        remainder %= den;
        if (remainder == 0) {
            exact = true;
            break;
        }
    }
    if (!exact && 2 * remainder >= den) {
        // Round the truncated expansion half-up, propagating carries.
        int i = static_cast<int>(digits.size()) - 1;
        for (; i >= 0; --i) {
            if (digits[i] != '9') {
                ++digits[i];
                break;
            }
            digits[i] = '0';
        }
        if (i < 0) {
            return sign + BigInt(whole + 1).str();
        }
    }
    while (!digits.empty() && digits.back() == '0') digits.pop_back();
    if (digits.empty()) {
        return sign + whole.str();
    }
    return sign + whole.str() + "." + digits;
}

double rational_to_double(const Rational& value) {
    return value.convert_to<double>();
}

} // namespace pushcert
