#include "skel/rational.hpp"

#include <cctype>
#include <cmath>
#include <limits>

#include "skel/errors.hpp"

namespace skel {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

}  // namespace

Rat rat_from_decimal(std::string_view s) {
    std::string_view orig = s;
    bool neg = false;
    if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
        neg = s[0] == '-';
        s.remove_prefix(1);
    }
    long exp10 = 0;
    std::size_t epos = s.find_first_of("eE");
    if (epos != std::string_view::npos) {
        std::string_view e = s.substr(epos + 1);
        s = s.substr(0, epos);
        bool eneg = false;
        if (!e.empty() && (e[0] == '+' || e[0] == '-')) {
            eneg = e[0] == '-';
            e.remove_prefix(1);
        }
        if (!all_digits(e) || e.size() > 6)
            throw input_error("bad exponent in number '" + std::string(orig) + "'");
        for (char c : e) exp10 = exp10 * 10 + (c - '0');
        if (eneg) exp10 = -exp10;
    }
    std::string digits;
    std::size_t dot = s.find('.');
    if (dot != std::string_view::npos) {
        std::string_view frac = s.substr(dot + 1);
        digits = std::string(s.substr(0, dot)) + std::string(frac);
        exp10 -= static_cast<long>(frac.size());
        if (s.size() == 1) throw input_error("bad number '" + std::string(orig) + "'");
    } else {
        digits = std::string(s);
    }
    if (!all_digits(digits))
        throw input_error("bad number '" + std::string(orig) + "'");
    mpz_class num(digits, 10);
    mpz_class den(1);
    mpz_class p10(10);
    if (exp10 > 0) {
        mpz_class scale;
        mpz_pow_ui(scale.get_mpz_t(), p10.get_mpz_t(), static_cast<unsigned long>(exp10));
        num *= scale;
    } else if (exp10 < 0) {
        mpz_pow_ui(den.get_mpz_t(), p10.get_mpz_t(), static_cast<unsigned long>(-exp10));
    }
    if (neg) num = -num;
    Rat r(num, den);
    r.canonicalize();
    return r;
}

Rat rat_from_text(std::string_view s) {
    std::size_t slash = s.find('/');
    if (slash != std::string_view::npos) {
        Rat num = rat_from_decimal(s.substr(0, slash));
        Rat den = rat_from_decimal(s.substr(slash + 1));
        if (sign(den) == 0) throw input_error("zero denominator in '" + std::string(s) + "'");
        return num / den;
    }
    return rat_from_decimal(s);
}

std::string rat_to_string(const Rat& v) {
    mpz_class den = v.get_den();
    // strip factors of 2 and 5; exact decimal exists iff nothing remains
    mpz_class d = den;
    unsigned long twos = 0, fives = 0;
    while (mpz_divisible_ui_p(d.get_mpz_t(), 2)) {
        mpz_divexact_ui(d.get_mpz_t(), d.get_mpz_t(), 2);
        ++twos;
    }
    while (mpz_divisible_ui_p(d.get_mpz_t(), 5)) {
        mpz_divexact_ui(d.get_mpz_t(), d.get_mpz_t(), 5);
        ++fives;
    }
    if (d != 1) return v.get_str();
    unsigned long digits = std::max(twos, fives);
    if (digits == 0) return v.get_num().get_str();
    mpz_class p10(10), scale;
    mpz_pow_ui(scale.get_mpz_t(), p10.get_mpz_t(), digits);
    mpz_class scaled = v.get_num() * scale / den;  // exact by construction
    bool neg = scaled < 0;
    std::string ds = (neg ? mpz_class(-scaled) : scaled).get_str();
    if (ds.size() <= digits) ds.insert(0, digits + 1 - ds.size(), '0');
    ds.insert(ds.size() - digits, ".");
    // drop trailing zeros after the point
    while (ds.back() == '0') ds.pop_back();
    if (ds.back() == '.') ds.pop_back();
    return neg ? "-" + ds : ds;
}

int sign(const Rat& v) { return sgn(v); }

DInterval rat_to_interval(const Rat& v) {
    double d = v.get_d();  // truncated toward zero by GMP
    if (!std::isfinite(d)) {
        double inf = std::numeric_limits<double>::infinity();
        return d > 0 ? DInterval{std::numeric_limits<double>::max(), inf}
                     : DInterval{-inf, -std::numeric_limits<double>::max()};
    }
    double lo = std::nextafter(d, -std::numeric_limits<double>::infinity());
    double hi = std::nextafter(d, std::numeric_limits<double>::infinity());
    return {lo, hi};
}

Rat sqrt_upper_bound(const Rat& s) {
    if (sign(s) <= 0) return Rat(0);
    double approx = std::sqrt(s.get_d());
    Rat b(approx * 1.0000001 + 1e-300);
    while (b * b <= s) b *= 2;  // paranoia against rounding on huge values
    return b;
}

}  // namespace skel
