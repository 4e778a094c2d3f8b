#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <string>

#include "lowreg/errors.hpp"

namespace lowreg {

// All densities and parameter arithmetic are exact; doubles appear only in
// the closed-form bound formulas and in reports.
using Rational = boost::rational<long long>;

inline Rational rat(long long num, long long den = 1) { return Rational(num, den); }

inline double rat_double(const Rational& r) {
    return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

inline long long rat_floor(const Rational& r) {
    long long q = r.numerator() / r.denominator();
    if (r.numerator() % r.denominator() != 0 && r.numerator() < 0) --q;
    return q;
}

inline long long rat_ceil(const Rational& r) {
    long long q = r.numerator() / r.denominator();
    if (r.numerator() % r.denominator() != 0 && r.numerator() > 0) ++q;
    return q;
}

inline std::string rat_str(const Rational& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

// Accepts "3/20", "0.15", "1", ".5". Decimal forms convert exactly.
inline Rational rational_from_string(const std::string& s) {
    if (s.empty()) throw ParseError("empty rational", 0);
    auto slash = s.find('/');
    try {
        if (slash != std::string::npos) {
            long long num = std::stoll(s.substr(0, slash));
            long long den = std::stoll(s.substr(slash + 1));
            if (den == 0) throw ParseError("zero denominator in '" + s + "'", 0);
            return Rational(num, den);
        }
        auto dot = s.find('.');
        if (dot == std::string::npos) return Rational(std::stoll(s));
        std::string head = s.substr(0, dot);
        std::string tail = s.substr(dot + 1);
        if (tail.size() > 15) tail = tail.substr(0, 15);
        long long whole = head.empty() || head == "-" || head == "+" ? 0 : std::stoll(head);
        long long den = 1;
        for (size_t i = 0; i < tail.size(); ++i) den *= 10;
        long long frac = tail.empty() ? 0 : std::stoll(tail);
        bool neg = !head.empty() && head[0] == '-';
        Rational r = Rational(whole) + (neg ? -Rational(frac, den) : Rational(frac, den));
        return r;
    } catch (const std::invalid_argument&) {
        throw ParseError("bad rational '" + s + "'", 0);
    } catch (const std::out_of_range&) {
        throw ParseError("rational out of range '" + s + "'", 0);
    }
}

// Nearest rational with the given denominator; for plumbing like the
// sparse-regime preset where delta = ln ln n / ln n is irrational.
inline Rational rational_from_double(double x, long long den = 1000000000LL) {
    long long num = static_cast<long long>(x * static_cast<double>(den) + (x >= 0 ? 0.5 : -0.5));
    return Rational(num, den);
}

}  // namespace lowreg
