#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "treespread/errors.hpp"

namespace treespread {

// Counts are exact integers, probabilities and ratios exact rationals.
// Nothing in a counting or comparison path ever rounds.
using Integer = mpz_class;
using Rational = mpq_class;

inline Integer ipow(const Integer& base, unsigned long exp) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
    return r;
}

inline Integer ipow(unsigned long base, unsigned long exp) {
    return ipow(Integer(base), exp);
}

inline Rational rpow(const Rational& base, unsigned long exp) {
    Rational r;
    mpz_pow_ui(mpq_numref(r.get_mpq_t()), mpq_numref(base.get_mpq_t()), exp);
    mpz_pow_ui(mpq_denref(r.get_mpq_t()), mpq_denref(base.get_mpq_t()), exp);
    return r;  // base canonical => num/den coprime => powers coprime
}

inline Integer binomial(unsigned long n, unsigned long k) {
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

// Smallest integer c with c^k >= x. Requires x >= 0, k >= 1.
inline Integer ceil_kth_root(const Integer& x, unsigned long k) {
    Integer r;
    int exact = mpz_root(r.get_mpz_t(), x.get_mpz_t(), k);
    if (!exact) r += 1;
    return r;
}

inline Rational make_rational(long num, long den = 1) {
    if (den == 0) throw invalid_input("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline std::string to_string(const Integer& x) { return x.get_str(); }

// Canonical "p" or "p/q" rendering.
inline std::string to_string(const Rational& q) {
    Rational c = q;
    c.canonicalize();
    std::string s = c.get_num().get_str();
    if (c.get_den() != 1) s += "/" + c.get_den().get_str();
    return s;
}

// Accepts "p", "p/q" and decimal literals like "0.15" (converted exactly).
inline Rational parse_rational(const std::string& text) {
    if (text.empty()) throw invalid_input("empty rational literal");
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        const std::string num = text.substr(0, slash);
        const std::string den = text.substr(slash + 1);
        if (num.empty() || den.empty()) throw invalid_input("malformed rational: " + text);
        Rational q;
        if (mpq_set_str(q.get_mpq_t(), (num + "/" + den).c_str(), 10) != 0)
            throw invalid_input("malformed rational: " + text);
        if (q.get_den() == 0) throw invalid_input("rational with zero denominator: " + text);
        q.canonicalize();
        return q;
    }
    auto dot = text.find('.');
    if (dot != std::string::npos) {
        std::string digits = text.substr(0, dot) + text.substr(dot + 1);
        const std::size_t frac_len = text.size() - dot - 1;
        if (digits.empty() || frac_len == 0) throw invalid_input("malformed decimal: " + text);
        bool neg = false;
        if (!digits.empty() && (digits[0] == '+' || digits[0] == '-')) {
            neg = digits[0] == '-';
            digits.erase(digits.begin());
        }
        if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
            throw invalid_input("malformed decimal: " + text);
        Rational q(Integer(digits), ipow(10ul, frac_len));
        q.canonicalize();
        return neg ? Rational(-q) : q;
    }
    Rational q;
    if (mpq_set_str(q.get_mpq_t(), text.c_str(), 10) != 0)
        throw invalid_input("malformed integer literal: " + text);
    q.canonicalize();
    return q;
}

// 18-digit rational bracket around Euler's number, for directed comparisons:
// e_lower < e < e_upper. Used so that inequalities involving e are decided
// in the direction that can never produce a spurious pass.
inline Rational e_lower() { return Rational(Integer("271828182845904523"), ipow(10ul, 17ul)); }
inline Rational e_upper() { return Rational(Integer("271828182845904524"), ipow(10ul, 17ul)); }

}  // namespace treespread
