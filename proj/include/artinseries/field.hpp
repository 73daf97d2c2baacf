/// Exact coefficient fields: arbitrary-precision rationals and prime fields
/// with a runtime modulus. No floating point anywhere.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <sstream>
#include <string>

#include "artinseries/errors.hpp"

namespace artin {

using BigInt   = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Prime-field element. A value built from a bare integer carries modulus 0
/// ("unreduced literal") and adopts the partner's modulus on the first binary
/// operation, so generic code can write K(0), K(1), k * 2 and so on.
class GFp {
public:
    GFp() : v_(0), p_(0) {}
    GFp(long long v) : v_(v), p_(0) {}  // NOLINT: implicit by design
    GFp(long long v, long long p) : v_(v), p_(p) { normalize(); }

    long long value() const { return v_; }
    long long modulus() const { return p_; }

    bool is_zero() const { return v_ == 0; }

    friend GFp operator+(GFp a, GFp b) {
        unify(a, b);
        return GFp(a.v_ + b.v_, a.p_);
    }
    friend GFp operator-(GFp a, GFp b) {
        unify(a, b);
        return GFp(a.v_ - b.v_, a.p_);
    }
    friend GFp operator*(GFp a, GFp b) {
        unify(a, b);
        return GFp(a.v_ * b.v_, a.p_);
    }
    friend GFp operator/(GFp a, GFp b) {
        unify(a, b);
        if (b.v_ == 0) throw std::domain_error("GFp: division by zero");
        if (a.p_ == 0) {
            if (a.v_ % b.v_ != 0) throw std::domain_error("GFp: inexact integer division without modulus");
            return GFp(a.v_ / b.v_, 0);
        }
        return a * b.inverse();
    }
    GFp operator-() const { return p_ == 0 ? GFp(-v_) : GFp(-v_, p_); }

    GFp& operator+=(const GFp& o) { return *this = *this + o; }
    GFp& operator-=(const GFp& o) { return *this = *this - o; }
    GFp& operator*=(const GFp& o) { return *this = *this * o; }
    GFp& operator/=(const GFp& o) { return *this = *this / o; }

    friend bool operator==(GFp a, GFp b) {
        unify(a, b);
        return a.v_ == b.v_;
    }
    friend bool operator!=(const GFp& a, const GFp& b) { return !(a == b); }

    GFp inverse() const {
        if (p_ == 0) {
            if (v_ == 1 || v_ == -1) return GFp(v_, 0);
            throw std::domain_error("GFp: inverse needs a modulus");
        }
        // extended Euclid
        long long a = v_, m = p_, x0 = 0, x1 = 1, b = m;
        while (a != 0) {
            long long q = b / a;
            long long t = b - q * a; b = a; a = t;
            t = x0 - q * x1; x0 = x1; x1 = t;
        }
        if (b != 1) throw std::domain_error("GFp: non-invertible element");
        return GFp(x0, p_);
    }

    std::string str() const {
        std::ostringstream os;
        os << v_;
        return os.str();
    }

private:
    void normalize() {
        if (p_ > 0) {
            v_ %= p_;
            if (v_ < 0) v_ += p_;
        }
    }
    static void unify(GFp& a, GFp& b) {
        if (a.p_ == b.p_) return;
        if (a.p_ == 0) a = GFp(a.v_, b.p_);
        else if (b.p_ == 0) b = GFp(b.v_, a.p_);
        else throw std::domain_error("GFp: mixed moduli");
    }

    long long v_;
    long long p_;
};

inline std::ostream& operator<<(std::ostream& os, const GFp& x) { return os << x.str(); }

// --- uniform field interface used by the templated layers ---------------

inline bool is_zero(const Rational& q) { return q.is_zero(); }
inline bool is_zero(const GFp& x) { return x.is_zero(); }

inline std::string field_str(const Rational& q) {
    std::ostringstream os;
    os << q;
    return os.str();
}
inline std::string field_str(const GFp& x) { return x.str(); }

inline bool is_one(const Rational& q) { return q == 1; }
inline bool is_one(const GFp& x) { return x == GFp(1); }

/// Runtime description of the field a structure lives over. Rationals are
/// stateless; GFp carries its modulus so that constants can be minted.
template <typename K>
struct FieldContext;

template <>
struct FieldContext<Rational> {
    Rational zero() const { return Rational(0); }
    Rational one() const { return Rational(1); }
    Rational from_int(long long v) const { return Rational(v); }
    Rational from_rational(const Rational& q) const { return q; }
    long long characteristic() const { return 0; }
    bool operator==(const FieldContext&) const { return true; }
    std::string name() const { return "Q"; }
};

template <>
struct FieldContext<GFp> {
    long long p = 0;
    GFp zero() const { return GFp(0, p); }
    GFp one() const { return GFp(1, p); }
    GFp from_int(long long v) const { return GFp(v, p); }
    GFp from_rational(const Rational& q) const {
        const BigInt num = boost::multiprecision::numerator(q);
        const BigInt den = boost::multiprecision::denominator(q);
        const long long n = static_cast<long long>(num % p);
        const long long d = static_cast<long long>(den % p);
        return GFp(n, p) / GFp(d, p);
    }
    long long characteristic() const { return p; }
    bool operator==(const FieldContext& o) const { return p == o.p; }
    std::string name() const { return "F" + std::to_string(p); }
};

}  // namespace artin
