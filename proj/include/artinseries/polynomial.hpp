/// Sparse multivariate polynomials over an exact field, terms kept in
/// decreasing degrevlex order with no zero coefficients.
#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "artinseries/errors.hpp"
#include "artinseries/field.hpp"
#include "artinseries/monomial.hpp"

namespace artin {

template <typename K>
class Polynomial {
public:
    using Term = std::pair<Monomial, K>;

    Polynomial() : nvars_(0) {}
    explicit Polynomial(std::size_t nvars) : nvars_(nvars) {}

    static Polynomial constant(std::size_t nvars, K c) {
        Polynomial p(nvars);
        if (!artin::is_zero(c)) p.terms_.emplace_back(Monomial(nvars), std::move(c));
        return p;
    }

    static Polynomial monomial(Monomial m, K c) {
        Polynomial p(m.size());
        if (!artin::is_zero(c)) p.terms_.emplace_back(std::move(m), std::move(c));
        return p;
    }

    static Polynomial from_terms(std::size_t nvars, std::vector<Term> terms) {
        Polynomial p(nvars);
        std::map<Monomial, K> acc;
        for (auto& [m, c] : terms) {
            auto it = acc.find(m);
            if (it == acc.end()) acc.emplace(m, c);
            else it->second += c;
        }
        for (auto& [m, c] : acc)
            if (!artin::is_zero(c)) p.terms_.emplace_back(m, c);
        std::sort(p.terms_.begin(), p.terms_.end(),
                  [](const Term& a, const Term& b) { return degrevlex_greater(a.first, b.first); });
        return p;
    }

    std::size_t nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const std::vector<Term>& terms() const { return terms_; }

    const Monomial& leading_monomial() const { return terms_.front().first; }
    const K& leading_coefficient() const { return terms_.front().second; }

    int degree() const {
        int d = -1;
        for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
        return d;  // -1 for the zero polynomial
    }

    bool is_monomial() const { return terms_.size() == 1; }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first.is_one()); }

    K constant_term() const {
        for (const auto& [m, c] : terms_)
            if (m.is_one()) return c;
        return K(0);
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        a.check_ambient(b);
        std::vector<Term> ts = a.terms_;
        ts.insert(ts.end(), b.terms_.begin(), b.terms_.end());
        return from_terms(a.nvars_, std::move(ts));
    }

    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

    Polynomial operator-() const {
        Polynomial r(nvars_);
        r.terms_.reserve(terms_.size());
        for (const auto& [m, c] : terms_) r.terms_.emplace_back(m, -c);
        return r;
    }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        a.check_ambient(b);
        std::vector<Term> ts;
        ts.reserve(a.terms_.size() * b.terms_.size());
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) ts.emplace_back(ma * mb, ca * cb);
        return from_terms(a.nvars_, std::move(ts));
    }

    Polynomial scaled(const K& c) const {
        Polynomial r(nvars_);
        if (artin::is_zero(c)) return r;
        r.terms_.reserve(terms_.size());
        for (const auto& [m, k] : terms_) r.terms_.emplace_back(m, k * c);
        return r;
    }

    Polynomial times_monomial(const Monomial& m, const K& c) const {
        Polynomial r(nvars_);
        if (artin::is_zero(c)) return r;
        r.terms_.reserve(terms_.size());
        for (const auto& [mt, k] : terms_) r.terms_.emplace_back(mt * m, k * c);
        return r;
    }

    bool operator==(const Polynomial& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

    std::string str(const std::vector<std::string>& names) const {
        if (terms_.empty()) return "0";
        std::string out;
        for (const auto& [m, c] : terms_) {
            std::string cs = field_str(c);
            const bool neg = !cs.empty() && cs[0] == '-';
            if (out.empty()) {
                if (neg) { out += "-"; cs = cs.substr(1); }
            } else {
                out += neg ? " - " : " + ";
                if (neg) cs = cs.substr(1);
            }
            if (m.is_one()) out += cs;
            else if (cs == "1") out += m.str(names);
            else out += cs + "*" + m.str(names);
        }
        return out;
    }

    void check_ambient(const Polynomial& o) const {
        if (nvars_ != o.nvars_)
            throw AmbientMismatch("polynomials live in different ambient variable lists");
    }

private:
    std::size_t nvars_;
    std::vector<Term> terms_;
};

}  // namespace artin
