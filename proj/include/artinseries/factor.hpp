/// Univariate irreducibility testing at small degree: trial factorization
/// over the integers (Kronecker interpolation) for Q, exhaustive divisor
/// search for prime fields. The degree cap of 8 is a documented limit.
#pragma once

#include <algorithm>
#include <vector>

#include "artinseries/errors.hpp"
#include "artinseries/field.hpp"
#include "artinseries/polynomial.hpp"

namespace artin {

inline constexpr int kIrreducibilityDegreeCap = 8;

namespace detail {

inline BigInt eval_int_poly(const std::vector<BigInt>& c, const BigInt& x) {
    BigInt acc = 0;
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
    return acc;
}

inline std::vector<BigInt> divisors_of(const BigInt& value, std::size_t budget) {
    BigInt v = value < 0 ? BigInt(-value) : value;
    std::vector<std::pair<BigInt, int>> fac;
    for (BigInt d = 2; d * d <= v; ++d) {
        if (d > 1000000) throw UnsupportedPresentation("trial-factorization budget exceeded");
        int e = 0;
        while (v % d == 0) {
            v /= d;
            ++e;
        }
        if (e) fac.emplace_back(d, e);
    }
    if (v > 1) fac.emplace_back(v, 1);
    std::vector<BigInt> divs{1};
    for (const auto& [p, e] : fac) {
        const std::size_t base = divs.size();
        BigInt pe = 1;
        for (int k = 1; k <= e; ++k) {
            pe *= p;
            for (std::size_t i = 0; i < base; ++i) {
                divs.push_back(divs[i] * pe);
                if (divs.size() > budget)
                    throw UnsupportedPresentation("divisor enumeration budget exceeded");
            }
        }
    }
    return divs;
}

/// Exact division of rational coefficient vectors; nullopt if not exact.
inline std::optional<std::vector<Rational>> divide_exact(const std::vector<Rational>& f,
                                                         const std::vector<Rational>& g) {
    if (g.empty() || is_zero(g.back())) return std::nullopt;
    if (f.size() < g.size()) return std::nullopt;
    std::vector<Rational> r = f;
    std::vector<Rational> q(f.size() - g.size() + 1, Rational(0));
    for (std::size_t qi = q.size(); qi-- > 0;) {
        Rational c = r[qi + g.size() - 1] / g.back();
        q[qi] = c;
        if (!is_zero(c))
            for (std::size_t k = 0; k < g.size(); ++k) r[qi + k] -= c * g[k];
    }
    for (const Rational& c : r)
        if (!is_zero(c)) return std::nullopt;
    return q;
}

}  // namespace detail

/// coeffs[i] is the coefficient of t^i; leading coefficient nonzero.
inline bool is_irreducible_Q(const std::vector<Rational>& coeffs) {
    const int deg = static_cast<int>(coeffs.size()) - 1;
    if (deg <= 0) return false;
    if (deg == 1) return true;
    if (deg > kIrreducibilityDegreeCap)
        throw UnsupportedPresentation("irreducibility test capped at degree 8");
    if (is_zero(coeffs[0])) return false;  // t divides

    // clear denominators to a primitive integer polynomial
    BigInt den = 1;
    for (const Rational& c : coeffs) {
        const BigInt d = boost::multiprecision::denominator(c);
        den = boost::multiprecision::lcm(den, d);
    }
    std::vector<BigInt> f;
    f.reserve(coeffs.size());
    for (const Rational& c : coeffs)
        f.push_back(static_cast<BigInt>(boost::multiprecision::numerator(c) *
                                        (den / boost::multiprecision::denominator(c))));

    // Kronecker: a degree-d factor is determined by its values at d+1 points,
    // and those values divide the values of f there.
    std::vector<BigInt> points;
    for (int k = 0; static_cast<int>(points.size()) < deg + 1; ++k) {
        points.push_back(k == 0 ? BigInt(0) : (k % 2 ? BigInt((k + 1) / 2) : BigInt(-(k / 2))));
    }
    std::vector<BigInt> values;
    for (const BigInt& x : points) {
        BigInt v = detail::eval_int_poly(f, x);
        if (v == 0) return false;  // rational root, linear factor
        values.push_back(v);
    }

    std::vector<Rational> frat(f.begin(), f.end());
    for (int d = 1; d <= deg / 2; ++d) {
        // candidate value tuples at points[0..d]
        std::vector<std::vector<BigInt>> choices;
        for (int i = 0; i <= d; ++i) {
            std::vector<BigInt> divs = detail::divisors_of(values[i], 4096);
            std::vector<BigInt> signed_divs;
            for (const BigInt& dv : divs) {
                signed_divs.push_back(dv);
                if (i > 0) signed_divs.push_back(-dv);  // factor sign fixed at the first point
            }
            choices.push_back(std::move(signed_divs));
        }
        std::vector<std::size_t> idx(d + 1, 0);
        for (;;) {
            // Lagrange interpolation through (points[i], choices[i][idx[i]])
            std::vector<Rational> g(d + 1, Rational(0));
            for (int i = 0; i <= d; ++i) {
                std::vector<Rational> basis{Rational(1)};
                Rational denom(1);
                for (int j = 0; j <= d; ++j) {
                    if (j == i) continue;
                    // multiply basis by (t - points[j])
                    std::vector<Rational> nb(basis.size() + 1, Rational(0));
                    for (std::size_t k = 0; k < basis.size(); ++k) {
                        nb[k + 1] += basis[k];
                        nb[k] -= basis[k] * Rational(points[j]);
                    }
                    basis = std::move(nb);
                    denom *= Rational(points[i] - points[j]);
                }
                const Rational scale = Rational(choices[i][idx[i]]) / denom;
                for (std::size_t k = 0; k < basis.size(); ++k) g[k] += basis[k] * scale;
            }
            while (!g.empty() && is_zero(g.back())) g.pop_back();
            if (static_cast<int>(g.size()) == d + 1) {
                if (auto q = detail::divide_exact(frat, g)) {
                    (void)q;
                    return false;
                }
            }
            // advance tuple
            int pos = d;
            while (pos >= 0) {
                if (++idx[pos] < choices[pos].size()) break;
                idx[pos] = 0;
                --pos;
            }
            if (pos < 0) break;
        }
    }
    return true;
}

/// Exhaustive factor search over F_p.
inline bool is_irreducible_Fp(const std::vector<GFp>& coeffs, long long p) {
    const int deg = static_cast<int>(coeffs.size()) - 1;
    if (deg <= 0) return false;
    if (deg == 1) return true;
    if (deg > kIrreducibilityDegreeCap)
        throw UnsupportedPresentation("irreducibility test capped at degree 8");

    auto divides = [&](const std::vector<GFp>& g) {
        std::vector<GFp> r = coeffs;
        while (r.size() >= g.size()) {
            GFp c = r.back() / g.back();
            const std::size_t shift = r.size() - g.size();
            for (std::size_t k = 0; k < g.size(); ++k) r[shift + k] -= c * g[k];
            while (!r.empty() && r.back().is_zero()) r.pop_back();
        }
        return r.empty();
    };

    for (int d = 1; d <= deg / 2; ++d) {
        double count = 1;
        for (int i = 0; i < d; ++i) count *= static_cast<double>(p);
        if (count > 2e6) throw UnsupportedPresentation("F_p factor search budget exceeded");
        std::vector<long long> tup(d, 0);
        for (;;) {
            std::vector<GFp> g;
            g.reserve(d + 1);
            for (int i = 0; i < d; ++i) g.emplace_back(tup[i], p);
            g.emplace_back(1, p);  // monic
            if (divides(g)) return false;
            int pos = 0;
            while (pos < d) {
                if (++tup[pos] < p) break;
                tup[pos] = 0;
                ++pos;
            }
            if (pos == d) break;
        }
    }
    return true;
}

template <typename K>
bool is_irreducible(const std::vector<K>& coeffs, const FieldContext<K>& field);

template <>
inline bool is_irreducible<Rational>(const std::vector<Rational>& coeffs,
                                     const FieldContext<Rational>&) {
    return is_irreducible_Q(coeffs);
}

template <>
inline bool is_irreducible<GFp>(const std::vector<GFp>& coeffs, const FieldContext<GFp>& field) {
    return is_irreducible_Fp(coeffs, field.p);
}

}  // namespace artin
