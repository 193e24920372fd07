#pragma once

// Coefficient rings for exact linear algebra. Every ring exposes the same
// Euclidean-domain surface so that elimination code is written once; the
// fields simply report every nonzero element as a unit.

#include <cstdint>
#include <string>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

#include "ihc/error.hpp"

namespace ihc {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

struct Coefficients {
    enum class Kind { Integers, Rationals, PrimeField };

    Kind kind = Kind::Integers;
    std::uint32_t prime = 0;

    static Coefficients integers() { return {Kind::Integers, 0}; }
    static Coefficients rationals() { return {Kind::Rationals, 0}; }
    static Coefficients prime_field(std::uint32_t p);

    bool is_field() const { return kind != Kind::Integers; }

    std::string to_string() const {
        switch (kind) {
        case Kind::Integers: return "Z";
        case Kind::Rationals: return "Q";
        case Kind::PrimeField: return "Z/" + std::to_string(prime);
        }
        return "?";
    }

    /// Parses the CLI spelling: `z`, `q` or `zp:<prime>`.
    static Coefficients parse(const std::string& text);

    friend bool operator==(const Coefficients&, const Coefficients&) = default;
};

inline bool is_prime(std::uint64_t p) {
    if (p < 2) return false;
    for (std::uint64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

inline Coefficients Coefficients::prime_field(std::uint32_t p) {
    if (!is_prime(p) || p >= (1u << 31))
        throw Error(ErrorKind::BadParam, "coefficient modulus " + std::to_string(p) + " is not a prime below 2^31");
    return {Kind::PrimeField, p};
}

inline Coefficients Coefficients::parse(const std::string& text) {
    if (text == "z" || text == "Z") return integers();
    if (text == "q" || text == "Q") return rationals();
    if (text.rfind("zp:", 0) == 0 || text.rfind("Zp:", 0) == 0) {
        const std::string digits = text.substr(3);
        if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos || digits.size() > 10)
            throw Error(ErrorKind::ParseError, "bad prime in coefficient spec '" + text + "'");
        return prime_field(static_cast<std::uint32_t>(std::stoull(digits)));
    }
    throw Error(ErrorKind::ParseError, "unknown coefficients '" + text + "' (expected z, q or zp:<prime>)");
}

/// Result of the extended Euclidean algorithm: g = s*a + t*b.
template <class T>
struct Bezout {
    T g, s, t;
};

class IntegerRing {
public:
    using value_type = BigInt;
    static constexpr bool is_field = false;

    value_type zero() const { return 0; }
    value_type one() const { return 1; }
    value_type from_int(long long v) const { return v; }

    bool is_zero(const value_type& a) const { return a.is_zero(); }
    bool is_unit(const value_type& a) const { return a == 1 || a == -1; }

    value_type add(const value_type& a, const value_type& b) const { return a + b; }
    value_type sub(const value_type& a, const value_type& b) const { return a - b; }
    value_type mul(const value_type& a, const value_type& b) const { return a * b; }
    value_type neg(const value_type& a) const { return -a; }

    /// Truncated quotient; |a - q*b| < |b|.
    value_type quotient(const value_type& a, const value_type& b) const { return a / b; }
    bool divides(const value_type& b, const value_type& a) const { return !b.is_zero() && value_type(a % b).is_zero(); }
    value_type exact_div(const value_type& a, const value_type& b) const { return a / b; }

    /// Euclidean norm comparison, used for pivot choice.
    bool smaller(const value_type& a, const value_type& b) const { return abs(a) < abs(b); }

    /// Normal form among associates (nonnegative integers).
    value_type canonical(const value_type& a) const { return abs(a); }

    Bezout<value_type> gcdext(const value_type& a, const value_type& b) const {
        value_type old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
        while (!r.is_zero()) {
            value_type q = old_r / r;
            value_type tmp = old_r - q * r;
            old_r = std::move(r);
            r = std::move(tmp);
            tmp = old_s - q * s;
            old_s = std::move(s);
            s = std::move(tmp);
            tmp = old_t - q * t;
            old_t = std::move(t);
            t = std::move(tmp);
        }
        if (old_r < 0) return {-old_r, -old_s, -old_t};
        return {old_r, old_s, old_t};
    }

    std::string to_string(const value_type& a) const { return a.str(); }
    BigInt to_integer(const value_type& a) const { return a; }
    Coefficients coefficients() const { return Coefficients::integers(); }
};

class RationalField {
public:
    using value_type = BigRational;
    static constexpr bool is_field = true;

    value_type zero() const { return 0; }
    value_type one() const { return 1; }
    value_type from_int(long long v) const { return v; }

    bool is_zero(const value_type& a) const { return a.is_zero(); }
    bool is_unit(const value_type& a) const { return !a.is_zero(); }

    value_type add(const value_type& a, const value_type& b) const { return a + b; }
    value_type sub(const value_type& a, const value_type& b) const { return a - b; }
    value_type mul(const value_type& a, const value_type& b) const { return a * b; }
    value_type neg(const value_type& a) const { return -a; }

    value_type quotient(const value_type& a, const value_type& b) const { return a / b; }
    bool divides(const value_type& b, const value_type&) const { return !b.is_zero(); }
    value_type exact_div(const value_type& a, const value_type& b) const { return a / b; }
    value_type inverse(const value_type& a) const { return 1 / a; }

    /// Prefers entries with small height so that fractions stay short.
    bool smaller(const value_type& a, const value_type& b) const {
        if (a.is_zero() || b.is_zero()) return b.is_zero() && !a.is_zero();
        auto height = [](const value_type& x) {
            return abs(numerator(x)) + abs(denominator(x));
        };
        return height(a) < height(b);
    }

    value_type canonical(const value_type& a) const { return a.is_zero() ? value_type(0) : value_type(1); }

    Bezout<value_type> gcdext(const value_type& a, const value_type& b) const {
        if (!a.is_zero()) return {1, 1 / a, 0};
        if (!b.is_zero()) return {1, 0, 1 / b};
        return {0, 0, 0};
    }

    std::string to_string(const value_type& a) const { return a.str(); }
    Coefficients coefficients() const { return Coefficients::rationals(); }
};

class PrimeField {
public:
    using value_type = std::int64_t;
    static constexpr bool is_field = true;

    explicit PrimeField(std::uint32_t p) : p_(p) {
        if (!is_prime(p)) throw Error(ErrorKind::BadParam, "modulus " + std::to_string(p) + " is not prime");
    }

    std::int64_t modulus() const { return p_; }

    value_type zero() const { return 0; }
    value_type one() const { return 1; }
    value_type from_int(long long v) const {
        long long r = v % p_;
        return r < 0 ? r + p_ : r;
    }

    bool is_zero(value_type a) const { return a == 0; }
    bool is_unit(value_type a) const { return a != 0; }

    value_type add(value_type a, value_type b) const { return (a + b) % p_; }
    value_type sub(value_type a, value_type b) const { return (a - b + p_) % p_; }
    value_type mul(value_type a, value_type b) const { return (a * b) % p_; }
    value_type neg(value_type a) const { return a == 0 ? 0 : p_ - a; }

    value_type inverse(value_type a) const {
        // Fermat: a^(p-2)
        value_type result = 1, base = a, e = p_ - 2;
        while (e > 0) {
            if (e & 1) result = mul(result, base);
            base = mul(base, base);
            e >>= 1;
        }
        return result;
    }
    value_type quotient(value_type a, value_type b) const { return mul(a, inverse(b)); }
    bool divides(value_type b, value_type) const { return b != 0; }
    value_type exact_div(value_type a, value_type b) const { return mul(a, inverse(b)); }

    bool smaller(value_type a, value_type b) const { return a != 0 && b == 0; }
    value_type canonical(value_type a) const { return a == 0 ? 0 : 1; }

    Bezout<value_type> gcdext(value_type a, value_type b) const {
        if (a != 0) return {1, inverse(a), 0};
        if (b != 0) return {1, 0, inverse(b)};
        return {0, 0, 0};
    }

    std::string to_string(value_type a) const { return std::to_string(a); }
    Coefficients coefficients() const { return Coefficients::prime_field(static_cast<std::uint32_t>(p_)); }

private:
    std::int64_t p_;
};

/// Calls `f` with the ring object matching `c`. All branches must return
/// the same type.
template <class F>
decltype(auto) visit_ring(const Coefficients& c, F&& f) {
    switch (c.kind) {
    case Coefficients::Kind::Integers: return f(IntegerRing{});
    case Coefficients::Kind::Rationals: return f(RationalField{});
    case Coefficients::Kind::PrimeField: break;
    }
    return f(PrimeField{c.prime});
}

} // namespace ihc
