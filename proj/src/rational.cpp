#include "subrepro/rational.hpp"

#include <cctype>
#include <limits>

#include "subrepro/error.hpp"

namespace subrepro {

std::string to_string(const Rational& q) { return q.get_str(); }

std::string to_string(const RationalVector& v) {
    std::string out = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += to_string(v[i]);
    }
    return out + ")";
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

bool is_integer_literal(std::string_view s) {
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

Integer parse_integer(std::string_view s) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    return Integer(std::string(s), 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
    const auto s = trim(text);
    const auto slash = s.find('/');
    const auto num = trim(s.substr(0, slash));
    if (!is_integer_literal(num)) throw Error(ErrorCode::ParseError, "bad rational '" + std::string(text) + "'");
    if (slash == std::string_view::npos) return Rational(parse_integer(num));
    const auto den = trim(s.substr(slash + 1));
    if (!is_integer_literal(den) || den.front() == '-' || den.front() == '+') {
        throw Error(ErrorCode::ParseError, "bad rational '" + std::string(text) + "'");
    }
    Integer d = parse_integer(den);
    if (d == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + std::string(text) + "'");
    Rational q(parse_integer(num), d);
    q.canonicalize();
    return q;
}

RationalVector parse_rational_list(std::string_view text) {
    RationalVector out;
    std::size_t start = 0;
    while (true) {
        const auto comma = text.find(',', start);
        out.push_back(parse_rational(text.substr(start, comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

Integer floor(const Rational& q) {
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

Rational frac(const Rational& q) { return q - Rational(floor(q)); }

std::int64_t to_int64(const Integer& z) {
    if (!z.fits_slong_p()) throw Error(ErrorCode::Overflow, "integer " + z.get_str() + " exceeds int64");
    static_assert(sizeof(long) == sizeof(std::int64_t));
    return z.get_si();
}

}  // namespace subrepro
