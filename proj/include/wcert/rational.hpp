#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace wcert {

// Exact rational on 64-bit storage. Intermediates widen to 128 bits and the
// reduced result must fit back into int64, otherwise std::overflow_error is
// thrown; there is no silent wraparound and no rounding anywhere.
class Rational {
public:
    Rational() = default;
    Rational(long long n) : num_(n), den_(1) {}
    Rational(long long n, long long d) {
        if (d == 0) throw std::domain_error("Rational: zero denominator");
        __int128 nn = n, dd = d;
        if (dd < 0) { nn = -nn; dd = -dd; }
        normalize_(nn, dd);
    }

    long long num() const { return num_; }
    long long den() const { return den_; }
    bool is_zero() const { return num_ == 0; }
    bool is_integer() const { return den_ == 1; }

    friend Rational operator+(const Rational& x, const Rational& y) {
        __int128 n = w128(x.num_) * y.den_ + w128(y.num_) * x.den_;
        __int128 d = w128(x.den_) * y.den_;
        return make_(n, d);
    }
    friend Rational operator-(const Rational& x, const Rational& y) {
        __int128 n = w128(x.num_) * y.den_ - w128(y.num_) * x.den_;
        __int128 d = w128(x.den_) * y.den_;
        return make_(n, d);
    }
    friend Rational operator*(const Rational& x, const Rational& y) {
        return make_(w128(x.num_) * y.num_, w128(x.den_) * y.den_);
    }
    friend Rational operator/(const Rational& x, const Rational& y) {
        if (y.num_ == 0) throw std::domain_error("Rational: division by zero");
        return make_(w128(x.num_) * y.den_, w128(x.den_) * y.num_);
    }
    Rational operator-() const {
        Rational r;
        r.num_ = -num_;  // int64 min never occurs: normalize_ rejects it
        r.den_ = den_;
        return r;
    }
    Rational& operator+=(const Rational& y) { return *this = *this + y; }
    Rational& operator-=(const Rational& y) { return *this = *this - y; }
    Rational& operator*=(const Rational& y) { return *this = *this * y; }
    Rational& operator/=(const Rational& y) { return *this = *this / y; }

    friend bool operator==(const Rational& x, const Rational& y) {
        return x.num_ == y.num_ && x.den_ == y.den_;
    }
    friend std::strong_ordering operator<=>(const Rational& x, const Rational& y) {
        __int128 l = w128(x.num_) * y.den_;
        __int128 r = w128(y.num_) * x.den_;
        return l < r ? std::strong_ordering::less
             : l > r ? std::strong_ordering::greater
                     : std::strong_ordering::equal;
    }

    // Serialized form used in every JSON surface: "p" or "p/q".
    std::string str() const {
        std::string s = std::to_string(num_);
        if (den_ != 1) s += "/" + std::to_string(den_);
        return s;
    }
    static Rational parse(const std::string& s) {
        auto slash = s.find('/');
        try {
            if (slash == std::string::npos) return Rational(std::stoll(s));
            return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
        } catch (const std::invalid_argument&) {
            throw std::invalid_argument("Rational: malformed literal '" + s + "'");
        } catch (const std::out_of_range&) {
            throw std::overflow_error("Rational: literal out of range '" + s + "'");
        }
    }

private:
    static __int128 w128(long long v) { return static_cast<__int128>(v); }

    static Rational make_(__int128 n, __int128 d) {
        Rational r;
        r.normalize_(n, d);
        return r;
    }

    void normalize_(__int128 n, __int128 d) {
        if (d < 0) { n = -n; d = -d; }
        if (n == 0) { num_ = 0; den_ = 1; return; }
        __int128 a = n < 0 ? -n : n;
        __int128 g = gcd128_(a, d);
        n /= g;
        d /= g;
        constexpr __int128 lo = -static_cast<__int128>(INT64_MAX);  // keep -x safe
        constexpr __int128 hi = static_cast<__int128>(INT64_MAX);
        if (n < lo || n > hi || d > hi)
            throw std::overflow_error("Rational: 64-bit range exceeded");
        num_ = static_cast<long long>(n);
        den_ = static_cast<long long>(d);
    }

    static __int128 gcd128_(__int128 a, __int128 b) {
        while (b != 0) {
            __int128 t = a % b;
            a = b;
            b = t;
        }
        return a;
    }

    long long num_ = 0;
    long long den_ = 1;
};

}  // namespace wcert
