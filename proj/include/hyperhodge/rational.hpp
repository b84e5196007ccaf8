#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"

namespace hyperhodge {

using Integer = mpz_class;
using Rational = mpq_class;

// Accepts "p", "p/q" and plain decimals such as "-0.25".
inline Rational parse_rational(std::string_view text)
{
    std::string s(text);
    while (!s.empty() && (s.front() == ' ' || s.front() == '+')) s.erase(s.begin());
    while (!s.empty() && s.back() == ' ') s.pop_back();
    if (s.empty()) throw ValidationError("empty rational literal");

    auto dot = s.find('.');
    if (dot != std::string::npos) {
        if (s.find('/') != std::string::npos) throw ValidationError("bad rational literal: " + s);
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        std::string den = "1" + std::string(s.size() - dot - 1, '0');
        if (digits.empty() || digits == "-") throw ValidationError("bad rational literal: " + s);
        s = digits + "/" + den;
    }
    Rational r;
    if (r.set_str(s, 10) != 0) throw ValidationError("bad rational literal: " + std::string(text));
    if (r.get_den() == 0) throw ValidationError("zero denominator: " + std::string(text));
    r.canonicalize();
    return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }
inline std::string to_string(const Integer& z) { return z.get_str(); }

inline Integer floor_of(const Rational& r)
{
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q;
}

inline Integer ceil_of(const Rational& r)
{
    Integer q;
    mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
    return q;
}

// Representative in [0, 1).
inline Rational frac_of(const Rational& r) { return r - Rational(floor_of(r)); }

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

inline long to_long(const Integer& z)
{
    if (!z.fits_slong_p()) throw std::overflow_error("integer does not fit in long");
    return z.get_si();
}

inline Integer binomial(long n, long k)
{
    if (k < 0 || n < 0 || k > n) return 0;
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

// b (b-1) ... (b-k+1)
inline Integer falling(long b, long k)
{
    Integer r = 1;
    for (long i = 0; i < k; ++i) r *= b - i;
    return r;
}

// w (w+1) ... (w+j-1)
inline Integer rising(long w, long j)
{
    Integer r = 1;
    for (long i = 0; i < j; ++i) r *= w + i;
    return r;
}

inline std::vector<std::string> to_strings(const std::vector<Rational>& v)
{
    std::vector<std::string> out;
    out.reserve(v.size());
    for (const auto& r : v) out.push_back(to_string(r));
    return out;
}

inline std::vector<Rational> parse_rationals(const std::vector<std::string>& v)
{
    std::vector<Rational> out;
    out.reserve(v.size());
    for (const auto& s : v) out.push_back(parse_rational(s));
    return out;
}

} // namespace hyperhodge
