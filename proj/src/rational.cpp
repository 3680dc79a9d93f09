#include "steiner/rational.hpp"

#include <cctype>

namespace steiner {

namespace {

bool is_integer_token(const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}

std::string strip(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

}  // namespace

Rat parse_rational(const std::string& text) {
    const std::string s = strip(text);
    if (s.empty()) throw Error("empty rational literal");

    if (auto slash = s.find('/'); slash != std::string::npos) {
        const std::string num = s.substr(0, slash);
        const std::string den = s.substr(slash + 1);
        if (!is_integer_token(num) || !is_integer_token(den))
            throw Error("malformed rational literal '" + text + "'");
        mpz_class q(den, 10);
        if (q == 0) throw Error("zero denominator in '" + text + "'");
        Rat r(mpz_class(num, 10), q);
        r.canonicalize();
        return r;
    }

    if (auto dot = s.find('.'); dot != std::string::npos) {
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        const std::size_t frac_len = s.size() - dot - 1;
        if (digits == "-" || digits == "+") digits += "0";
        if (!is_integer_token(digits))
            throw Error("malformed decimal literal '" + text + "'");
        mpz_class den = 1;
        for (std::size_t i = 0; i < frac_len; ++i) den *= 10;
        Rat r(mpz_class(digits, 10), den);
        r.canonicalize();
        return r;
    }

    if (!is_integer_token(s)) throw Error("malformed number '" + text + "'");
    return Rat(mpz_class(s, 10));
}

std::string to_fraction_string(const Rat& value) {
    Rat v = value;
    v.canonicalize();
    if (v.get_den() == 1) return v.get_num().get_str();
    return v.get_num().get_str() + "/" + v.get_den().get_str();
}

std::string to_decimal_string(const Rat& value, int digits) {
    const bool negative = value < 0;
    Rat mag = negative ? Rat(-value) : value;
    mag.canonicalize();
    mpz_class scale = 1;
    for (int i = 0; i < digits; ++i) scale *= 10;
    // round half away from zero: floor(mag * scale + 1/2)
    Rat scaled = mag * scale + Rat(1, 2);
    mpz_class units;
    mpz_fdiv_q(units.get_mpz_t(), scaled.get_num().get_mpz_t(), scaled.get_den().get_mpz_t());
    std::string s = units.get_str();
    if (digits == 0) return (negative && units != 0 ? "-" : "") + s;
    if (static_cast<int>(s.size()) <= digits)
        s.insert(0, std::string(digits + 1 - s.size(), '0'));
    s.insert(s.size() - digits, ".");
    if (negative && units != 0) s.insert(0, "-");
    return s;
}

long ceil_to_long(const Rat& value) {
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), value.get_num().get_mpz_t(), value.get_den().get_mpz_t());
    if (!q.fits_slong_p()) throw Error("ceil overflows long: " + to_fraction_string(value));
    return q.get_si();
}

}  // namespace steiner
