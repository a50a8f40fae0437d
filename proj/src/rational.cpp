#include "plsemi/rational.hpp"

#include <cctype>

namespace plsemi {

namespace {

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

}  // namespace

Rational Rational::parse(const std::string& text) {
    std::string s = text;
    // trim surrounding whitespace
    const auto first = s.find_first_not_of(" \t");
    const auto last = s.find_last_not_of(" \t");
    if (first == std::string::npos) throw std::invalid_argument("Rational::parse: empty literal");
    s = s.substr(first, last - first + 1);

    bool negative = false;
    if (s[0] == '+' || s[0] == '-') {
        negative = (s[0] == '-');
        s = s.substr(1);
    }

    const auto slash = s.find('/');
    std::string num_part = (slash == std::string::npos) ? s : s.substr(0, slash);
    std::string den_part = (slash == std::string::npos) ? "1" : s.substr(slash + 1);
    if (!all_digits(num_part) || !all_digits(den_part))
        throw std::invalid_argument("Rational::parse: invalid literal '" + text + "'");

    BigInt num(num_part, 10);
    BigInt den(den_part, 10);
    if (den == 0) throw std::invalid_argument("Rational::parse: zero denominator in '" + text + "'");
    if (negative) num = -num;
    return Rational(num, den);
}

std::string Rational::str() const {
    if (is_integer()) return q_.get_num().get_str();
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

std::optional<std::string> Rational::decimal_exact() const {
    BigInt d = den();
    int twos = 0, fives = 0;
    while (mpz_even_p(d.get_mpz_t())) {
        d /= 2;
        ++twos;
    }
    while (mpz_divisible_ui_p(d.get_mpz_t(), 5)) {
        d /= 5;
        ++fives;
    }
    if (d != 1) return std::nullopt;

    const int places = std::max(twos, fives);
    BigInt scaled = num();
    for (int i = twos; i < places; ++i) scaled *= 2;
    for (int i = fives; i < places; ++i) scaled *= 5;

    const bool negative = scaled < 0;
    std::string digits = BigInt(::abs(scaled)).get_str();
    if (places == 0) return (negative ? "-" : "") + digits;

    if (static_cast<int>(digits.size()) <= places)
        digits.insert(0, places + 1 - digits.size(), '0');
    digits.insert(digits.size() - places, ".");
    // drop trailing zeros of the fractional part
    while (digits.back() == '0') digits.pop_back();
    if (digits.back() == '.') digits.pop_back();
    return (negative ? "-" : "") + digits;
}

std::string Rational::decimal_truncated(int digits) const {
    if (digits < 0) throw std::invalid_argument("decimal_truncated: negative digit count");
    BigInt scale(1);
    for (int i = 0; i < digits; ++i) scale *= 10;
    BigInt scaled;  // truncate toward zero
    mpz_tdiv_q(scaled.get_mpz_t(), BigInt(num() * scale).get_mpz_t(), den().get_mpz_t());
    const bool negative = scaled < 0;
    std::string s = BigInt(::abs(scaled)).get_str();
    if (digits == 0) return (negative ? "-" : "") + s;
    if (static_cast<int>(s.size()) <= digits) s.insert(0, digits + 1 - s.size(), '0');
    s.insert(s.size() - digits, ".");
    return (negative ? "-" : "") + s;
}

}  // namespace plsemi
