// Number types used throughout swmix.
//
// Two scalar modes are supported:
//   * Rational: exact GMP rationals. Enclosures are exact images.
//   * double:   binary64 with outward widening after every operation that
//               produces an enclosure endpoint, so images are supersets.
#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace swmix {

using Rational = mpq_class;
using BigInt = mpz_class;

template <class T>
struct NumTraits;

template <>
struct NumTraits<Rational> {
    static constexpr bool exact = true;
    static constexpr const char* name = "rational";

    static Rational down(const Rational& v) { return v; }
    static Rational up(const Rational& v) { return v; }
    static Rational from_double(double v) { return Rational(v); }
    static double to_double(const Rational& v) { return v.get_d(); }
    static Rational abs(const Rational& v) { return ::abs(v); }
    static Rational from_int(long v) { return Rational(v); }
    static Rational ratio(long p, long q)
    {
        Rational r(p, q);
        r.canonicalize();
        return r;
    }

    // Accepts "p/q", "p" or a decimal literal such as "0.25".
    static Rational parse(const std::string& s)
    {
        if (s.find_first_of(".eE") != std::string::npos) {
            return decimal(s);
        }
        Rational r;
        if (r.set_str(s, 10) != 0) {
            throw std::invalid_argument("not a rational literal: " + s);
        }
        if (r.get_den() == 0) {
            throw std::invalid_argument("zero denominator: " + s);
        }
        r.canonicalize();
        return r;
    }

    static std::string str(const Rational& v) { return v.get_str(10); }

private:
    static Rational decimal(const std::string& s)
    {
        auto epos = s.find_first_of("eE");
        std::string mant = s.substr(0, epos);
        long exp10 = epos == std::string::npos ? 0 : std::stol(s.substr(epos + 1));
        auto dot = mant.find('.');
        if (dot != std::string::npos) {
            exp10 -= static_cast<long>(mant.size() - dot - 1);
            mant.erase(dot, 1);
        }
        BigInt num;
        if (mant.empty() || num.set_str(mant, 10) != 0) {
            throw std::invalid_argument("not a decimal literal: " + s);
        }
        BigInt scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exp10)));
        Rational r = exp10 >= 0 ? Rational(num * scale) : Rational(num, scale);
        r.canonicalize();
        return r;
    }
};

// Per-operation outward margin for float mode (relative to max(1,|v|)).
inline std::atomic<double>& outward_margin()
{
    static std::atomic<double> tau{std::ldexp(1.0, -40)};
    return tau;
}

template <>
struct NumTraits<double> {
    static constexpr bool exact = false;
    static constexpr const char* name = "float";

    static double down(double v) { return v - outward_margin().load() * std::max(1.0, std::fabs(v)); }
    static double up(double v) { return v + outward_margin().load() * std::max(1.0, std::fabs(v)); }
    static double from_double(double v) { return v; }
    static double to_double(double v) { return v; }
    static double abs(double v) { return std::fabs(v); }
    static double from_int(long v) { return static_cast<double>(v); }
    static double ratio(long p, long q) { return static_cast<double>(p) / static_cast<double>(q); }

    static double parse(const std::string& s)
    {
        auto slash = s.find('/');
        if (slash != std::string::npos) {
            return NumTraits<Rational>::parse(s).get_d();
        }
        std::size_t used = 0;
        double v = std::stod(s, &used);
        if (used != s.size()) {
            throw std::invalid_argument("not a float literal: " + s);
        }
        return v;
    }

    static std::string str(double v)
    {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return buf;
    }
};

template <class T>
concept Scalar = requires { NumTraits<T>::exact; };

} // namespace swmix
