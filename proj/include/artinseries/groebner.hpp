/// Multivariate division and Buchberger's algorithm in degrevlex. The
/// S-polynomial criterion defines correctness; pair pruning is only a
/// shortcut.
#pragma once

#include <algorithm>
#include <set>
#include <vector>

#include "artinseries/polynomial.hpp"

namespace artin {

template <typename K>
struct GroebnerBasis {
    std::vector<Polynomial<K>> generators;  // reduced, monic, degrevlex
    std::size_t nvars = 0;

    bool all_monomial() const {
        return std::all_of(generators.begin(), generators.end(),
                           [](const Polynomial<K>& g) { return g.is_monomial(); });
    }
};

/// Unique remainder of f under full reduction by G. In a graded order every
/// quotient term has total degree at most deg(f).
template <typename K>
Polynomial<K> normal_form(const Polynomial<K>& f, const std::vector<Polynomial<K>>& basis) {
    for (const auto& g : basis) f.check_ambient(g);
    Polynomial<K> h = f;
    std::vector<typename Polynomial<K>::Term> remainder;
    while (!h.is_zero()) {
        const Monomial& lm = h.leading_monomial();
        const K& lc = h.leading_coefficient();
        bool reduced = false;
        for (const auto& g : basis) {
            if (g.is_zero()) continue;
            if (!g.leading_monomial().divides(lm)) continue;
            K c = lc / g.leading_coefficient();
            h = h - g.times_monomial(lm / g.leading_monomial(), c);
            reduced = true;
            break;
        }
        if (!reduced) {
            remainder.emplace_back(lm, lc);
            h = h - Polynomial<K>::monomial(lm, lc);
        }
    }
    return Polynomial<K>::from_terms(f.nvars(), std::move(remainder));
}

template <typename K>
Polynomial<K> normal_form(const Polynomial<K>& f, const GroebnerBasis<K>& G) {
    if (f.nvars() != G.nvars)
        throw AmbientMismatch("normal_form: ambient variable lists differ");
    return normal_form(f, G.generators);
}

template <typename K>
Polynomial<K> s_polynomial(const Polynomial<K>& f, const Polynomial<K>& g) {
    const Monomial L = lcm(f.leading_monomial(), g.leading_monomial());
    Polynomial<K> a = f.times_monomial(L / f.leading_monomial(), K(1) / f.leading_coefficient());
    Polynomial<K> b = g.times_monomial(L / g.leading_monomial(), K(1) / g.leading_coefficient());
    return a - b;
}

namespace detail {

/// Minimalize and tail-reduce; leading coefficients become 1.
template <typename K>
std::vector<Polynomial<K>> reduce_basis(std::vector<Polynomial<K>> gens) {
    // drop generators whose leading term is divisible by another's
    std::vector<Polynomial<K>> minimal;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        if (gens[i].is_zero()) continue;
        bool redundant = false;
        for (std::size_t j = 0; j < gens.size(); ++j) {
            if (i == j || gens[j].is_zero()) continue;
            if (gens[j].leading_monomial().divides(gens[i].leading_monomial())) {
                if (gens[j].leading_monomial() == gens[i].leading_monomial() && j > i) continue;
                redundant = true;
                break;
            }
        }
        if (!redundant) minimal.push_back(gens[i]);
    }
    // tail-reduce each against the others
    std::vector<Polynomial<K>> out;
    for (std::size_t i = 0; i < minimal.size(); ++i) {
        std::vector<Polynomial<K>> others;
        for (std::size_t j = 0; j < minimal.size(); ++j)
            if (j != i) others.push_back(minimal[j]);
        Polynomial<K> r = normal_form(minimal[i], others);
        if (!r.is_zero()) out.push_back(r.scaled(K(1) / r.leading_coefficient()));
    }
    std::sort(out.begin(), out.end(), [](const Polynomial<K>& a, const Polynomial<K>& b) {
        return degrevlex_less(a.leading_monomial(), b.leading_monomial());
    });
    return out;
}

}  // namespace detail

/// Reduced Groebner basis of the ideal generated by gens.
template <typename K>
GroebnerBasis<K> buchberger(std::vector<Polynomial<K>> gens) {
    if (gens.empty()) throw std::invalid_argument("buchberger: need at least one generator");
    const std::size_t nvars = gens[0].nvars();
    for (const auto& g : gens) gens[0].check_ambient(g);

    std::vector<Polynomial<K>> basis;
    for (auto& g : gens)
        if (!g.is_zero()) basis.push_back(std::move(g));
    if (basis.empty()) return GroebnerBasis<K>{{}, nvars};

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = i + 1; j < basis.size(); ++j) pairs.emplace_back(i, j);

    while (!pairs.empty()) {
        auto [i, j] = pairs.back();
        pairs.pop_back();
        const Monomial& mi = basis[i].leading_monomial();
        const Monomial& mj = basis[j].leading_monomial();
        // product criterion: coprime leading terms give a reducible S-pair
        if (lcm(mi, mj) == mi * mj) continue;
        Polynomial<K> s = normal_form(s_polynomial(basis[i], basis[j]), basis);
        if (s.is_zero()) continue;
        basis.push_back(s.scaled(K(1) / s.leading_coefficient()));
        for (std::size_t k = 0; k + 1 < basis.size(); ++k) pairs.emplace_back(k, basis.size() - 1);
    }

    return GroebnerBasis<K>{detail::reduce_basis(std::move(basis)), nvars};
}

template <typename K>
bool ideal_membership(const Polynomial<K>& f, const std::vector<Polynomial<K>>& gens) {
    for (const auto& g : gens) f.check_ambient(g);
    return normal_form(f, buchberger(gens)).is_zero();
}

template <typename K>
bool ideal_membership(const Polynomial<K>& f, const GroebnerBasis<K>& G) {
    return normal_form(f, G).is_zero();
}

}  // namespace artin
