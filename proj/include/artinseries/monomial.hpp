/// Exponent vectors and the degree-reverse-lexicographic order.
#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace artin {

/// A monomial in a fixed ambient of `size()` variables. Exponents are
/// non-negative; the vector length always equals the ambient variable count.
class Monomial {
public:
    Monomial() = default;
    explicit Monomial(std::size_t nvars) : e_(nvars, 0) {}
    explicit Monomial(std::vector<int> exps) : e_(std::move(exps)) {}

    static Monomial var(std::size_t nvars, std::size_t i, int power = 1) {
        Monomial m(nvars);
        m.e_[i] = power;
        return m;
    }

    std::size_t size() const { return e_.size(); }
    int operator[](std::size_t i) const { return e_[i]; }
    int& operator[](std::size_t i) { return e_[i]; }
    const std::vector<int>& exponents() const { return e_; }

    int degree() const { return std::accumulate(e_.begin(), e_.end(), 0); }
    bool is_one() const {
        return std::all_of(e_.begin(), e_.end(), [](int x) { return x == 0; });
    }

    bool divides(const Monomial& m) const {
        for (std::size_t i = 0; i < e_.size(); ++i)
            if (e_[i] > m.e_[i]) return false;
        return true;
    }

    friend Monomial operator*(const Monomial& a, const Monomial& b) {
        Monomial r(a.e_.size());
        for (std::size_t i = 0; i < a.e_.size(); ++i) r.e_[i] = a.e_[i] + b.e_[i];
        return r;
    }

    /// Exact quotient; caller guarantees b.divides(a).
    friend Monomial operator/(const Monomial& a, const Monomial& b) {
        Monomial r(a.e_.size());
        for (std::size_t i = 0; i < a.e_.size(); ++i) r.e_[i] = a.e_[i] - b.e_[i];
        return r;
    }

    friend Monomial lcm(const Monomial& a, const Monomial& b) {
        Monomial r(a.e_.size());
        for (std::size_t i = 0; i < a.e_.size(); ++i) r.e_[i] = std::max(a.e_[i], b.e_[i]);
        return r;
    }

    friend Monomial gcd(const Monomial& a, const Monomial& b) {
        Monomial r(a.e_.size());
        for (std::size_t i = 0; i < a.e_.size(); ++i) r.e_[i] = std::min(a.e_[i], b.e_[i]);
        return r;
    }

    std::vector<std::size_t> support() const {
        std::vector<std::size_t> s;
        for (std::size_t i = 0; i < e_.size(); ++i)
            if (e_[i] > 0) s.push_back(i);
        return s;
    }

    bool operator==(const Monomial& o) const { return e_ == o.e_; }
    bool operator!=(const Monomial& o) const { return e_ != o.e_; }
    /// Plain lexicographic compare on exponent vectors; a deterministic key
    /// order for maps, unrelated to the term order.
    bool operator<(const Monomial& o) const { return e_ < o.e_; }

    std::string str(const std::vector<std::string>& names) const {
        std::string out;
        for (std::size_t i = 0; i < e_.size(); ++i) {
            if (e_[i] == 0) continue;
            if (!out.empty()) out += "*";
            out += names[i];
            if (e_[i] > 1) out += "^" + std::to_string(e_[i]);
        }
        return out.empty() ? "1" : out;
    }

private:
    std::vector<int> e_;
};

/// degrevlex: higher total degree wins; ties broken by the smallest trailing
/// exponent difference (the last nonzero entry of a-b negative means a > b).
inline bool degrevlex_less(const Monomial& a, const Monomial& b) {
    const int da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    for (std::size_t i = a.size(); i-- > 0;) {
        const int d = a[i] - b[i];
        if (d != 0) return d > 0;  // larger last exponent = smaller monomial
    }
    return false;
}

inline bool degrevlex_greater(const Monomial& a, const Monomial& b) {
    return degrevlex_less(b, a);
}

/// All monomials in `nvars` variables of total degree < bound, in increasing
/// degrevlex order starting from 1.
inline std::vector<Monomial> monomials_below(std::size_t nvars, int bound) {
    std::vector<Monomial> out;
    std::vector<int> e(nvars, 0);
    // enumerate by total degree, then recursively distribute
    auto rec = [&](auto&& self, std::size_t pos, int remaining) -> void {
        if (pos + 1 == nvars) {
            e[pos] = remaining;
            out.emplace_back(e);
            return;
        }
        for (int k = remaining; k >= 0; --k) {
            e[pos] = k;
            self(self, pos + 1, remaining - k);
        }
    };
    for (int d = 0; d < bound; ++d) {
        if (nvars == 0) {
            if (d == 0) out.emplace_back(e);
            continue;
        }
        rec(rec, 0, d);
    }
    std::sort(out.begin(), out.end(), degrevlex_less);
    return out;
}

}  // namespace artin
