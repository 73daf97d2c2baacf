/// Finitely presented Artinian algebras over an exact field: standard
/// monomial bases, normal-form arithmetic, maximal ideals, residue fields and
/// minimal polynomials. Three presentation forms support Spec enumeration:
/// monomial-local quotients, structural finite products, and validated field
/// towers.
#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "artinseries/factor.hpp"
#include "artinseries/groebner.hpp"
#include "artinseries/linalg.hpp"
#include "artinseries/poly_parse.hpp"

namespace artin {

template <typename K>
class ArtinianAlgebra;

template <typename K>
using AlgebraPtr = std::shared_ptr<const ArtinianAlgebra<K>>;

template <typename K>
struct AlgebraElement;

enum class PresentationKind { MonomialLocal, FieldTower, General, Product };

enum class MaxIdealKind { LocalMonomial, ProductFactor, FieldZero };

template <typename K>
struct MaximalIdealDesc {
    AlgebraPtr<K> owner;
    std::vector<AlgebraElement<K>> generators;
    MaxIdealKind kind = MaxIdealKind::LocalMonomial;
    int factor_index = -1;
    std::shared_ptr<const MaximalIdealDesc<K>> inner;  // set for ProductFactor
};

template <typename K>
class ArtinianAlgebra : public std::enable_shared_from_this<ArtinianAlgebra<K>> {
public:
    /// Quotient k[vars]/(relations) with a finite standard-monomial basis.
    /// Throws NotArtinian when some variable has no pure power among the
    /// leading terms, or when the ideal collapses the ring.
    static AlgebraPtr<K> present(FieldContext<K> field, std::vector<std::string> vars,
                                 std::vector<Polynomial<K>> relations) {
        auto A = std::shared_ptr<ArtinianAlgebra>(new ArtinianAlgebra());
        A->field_ = field;
        A->vars_ = std::move(vars);
        A->init_presented(std::move(relations));
        return A;
    }

    /// Tower of single-generator extensions; minpolys[i] is univariate in
    /// vars[i] with prime-field coefficients. Validates that the result is a
    /// field and throws NotAField otherwise.
    static AlgebraPtr<K> present_tower(FieldContext<K> field, std::vector<std::string> vars,
                                       std::vector<Polynomial<K>> minpolys) {
        if (vars.size() != minpolys.size())
            throw UnsupportedPresentation("tower needs one minimal polynomial per generator");
        auto A = std::shared_ptr<ArtinianAlgebra>(new ArtinianAlgebra());
        A->field_ = field;
        A->vars_ = std::move(vars);
        A->validate_tower_relations(minpolys);
        A->init_presented(std::move(minpolys));
        A->certify_field();
        A->kind_ = PresentationKind::FieldTower;
        return A;
    }

    static AlgebraPtr<K> scalar_field(FieldContext<K> field) {
        return present_tower(field, {}, {});
    }

    /// Structural finite product; elements are concatenated factor tuples.
    static AlgebraPtr<K> product(std::vector<AlgebraPtr<K>> factors) {
        if (factors.empty()) throw UnsupportedPresentation("product needs at least one factor");
        auto A = std::shared_ptr<ArtinianAlgebra>(new ArtinianAlgebra());
        A->field_ = factors[0]->field_;
        for (const auto& f : factors)
            if (!(f->field_ == A->field_))
                throw UnsupportedPresentation("product factors over different fields");
        A->kind_ = PresentationKind::Product;
        A->factors_ = std::move(factors);
        A->dim_ = 0;
        for (const auto& f : A->factors_) A->dim_ += f->dim();
        return A;
    }

    PresentationKind kind() const { return kind_; }
    const FieldContext<K>& field() const { return field_; }
    std::size_t dim() const { return dim_; }
    const std::vector<std::string>& vars() const { return vars_; }
    const GroebnerBasis<K>& relations() const { return gb_; }
    const std::vector<Monomial>& basis() const { return basis_; }
    const std::vector<AlgebraPtr<K>>& factors() const { return factors_; }

    bool is_product() const { return kind_ == PresentationKind::Product; }

    // --- elements --------------------------------------------------------

    AlgebraElement<K> from_coords(Vec<K> c) const;
    AlgebraElement<K> zero() const;
    AlgebraElement<K> one() const;
    AlgebraElement<K> from_int(long long v) const;
    AlgebraElement<K> basis_element(std::size_t i) const;
    AlgebraElement<K> var_element(std::size_t i) const;
    AlgebraElement<K> from_polynomial(const Polynomial<K>& p) const;
    AlgebraElement<K> parse(const std::string& text) const;

    AlgebraElement<K> embed_factor(std::size_t j, const AlgebraElement<K>& x) const;
    AlgebraElement<K> extract_factor(std::size_t j, const AlgebraElement<K>& x) const;
    /// Unit idempotents of the factors, recursively flattened; empty unless
    /// this is a product.
    std::vector<AlgebraElement<K>> idempotents() const;

    Vec<K> mul_coords(const Vec<K>& a, const Vec<K>& b) const {
        Vec<K> out(dim_, field_.zero());
        if (kind_ == PresentationKind::Product) {
            std::size_t off = 0;
            for (const auto& f : factors_) {
                const std::size_t d = f->dim();
                Vec<K> fa(a.begin() + off, a.begin() + off + d);
                Vec<K> fb(b.begin() + off, b.begin() + off + d);
                Vec<K> fc = f->mul_coords(fa, fb);
                for (std::size_t i = 0; i < d; ++i) out[off + i] = std::move(fc[i]);
                off += d;
            }
            return out;
        }
        for (std::size_t i = 0; i < dim_; ++i) {
            if (is_zero(a[i])) continue;
            for (std::size_t j = 0; j < dim_; ++j) {
                if (is_zero(b[j])) continue;
                const K c = a[i] * b[j];
                for (const auto& [idx, coef] : basis_product(i, j)) out[idx] += c * coef;
            }
        }
        return out;
    }

    /// Coordinates of basis_i * basis_j in the basis. Monomial presentations
    /// are resolved directly; others go through a lazily built table whose
    /// contents match on-the-fly normal forms exactly.
    SparseVec<K> basis_product(std::size_t i, std::size_t j) const {
        if (kind_ == PresentationKind::MonomialLocal) {
            const Monomial m = basis_[i] * basis_[j];
            for (const auto& g : gb_.generators)
                if (g.leading_monomial().divides(m)) return {};
            auto it = basis_index_.find(m);
            if (it == basis_index_.end())
                throw InternalSelfCheck("standard monomial product escaped the basis");
            return {{it->second, field_.one()}};
        }
        std::call_once(table_once_, [this] { build_table(); });
        return table_[i * dim_ + j];
    }

    std::string element_str(const Vec<K>& c) const {
        if (kind_ == PresentationKind::Product) {
            std::string out = "(";
            std::size_t off = 0;
            for (std::size_t j = 0; j < factors_.size(); ++j) {
                const std::size_t d = factors_[j]->dim();
                if (j) out += ", ";
                out += factors_[j]->element_str(Vec<K>(c.begin() + off, c.begin() + off + d));
                off += d;
            }
            return out + ")";
        }
        std::vector<typename Polynomial<K>::Term> ts;
        for (std::size_t i = 0; i < dim_; ++i)
            if (!is_zero(c[i])) ts.emplace_back(basis_[i], c[i]);
        Polynomial<K> p = Polynomial<K>::from_terms(vars_.size(), std::move(ts));
        std::vector<std::string> lowered;
        lowered.reserve(vars_.size());
        for (const auto& v : vars_) {
            std::string s = v;
            if (!s.empty()) s[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(s[0])));
            lowered.push_back(s);
        }
        return p.str(lowered);
    }

    int var_index(const std::string& name) const {
        return detail::resolve_symbol(name, vars_);
    }

private:
    ArtinianAlgebra() = default;

    void init_presented(std::vector<Polynomial<K>> relations) {
        if (vars_.empty()) {
            if (!relations.empty()) throw UnsupportedPresentation("relations without variables");
            gb_ = GroebnerBasis<K>{{}, 0};
            basis_ = {Monomial(0)};
            basis_index_.emplace(Monomial(0), 0);
            dim_ = 1;
            kind_ = PresentationKind::FieldTower;
            return;
        }
        if (relations.empty())
            throw NotArtinian("a free polynomial ring is not Artinian");
        for (const auto& r : relations)
            if (r.nvars() != vars_.size())
                throw AmbientMismatch("relation ambient does not match the variable list");
        gb_ = buchberger(std::move(relations));
        for (const auto& g : gb_.generators)
            if (g.leading_monomial().is_one())
                throw NotArtinian("relations collapse the presentation to the zero ring");

        std::vector<int> bound(vars_.size(), -1);
        for (const auto& g : gb_.generators) {
            const Monomial& lm = g.leading_monomial();
            const auto sup = lm.support();
            if (sup.size() == 1) {
                const std::size_t v = sup[0];
                if (bound[v] < 0 || lm[v] < bound[v]) bound[v] = lm[v];
            }
        }
        for (std::size_t v = 0; v < vars_.size(); ++v)
            if (bound[v] < 0)
                throw NotArtinian("variable '" + vars_[v] + "' has no pure power among leading terms");

        // standard monomials live inside the exponent box cut out by the
        // pure powers; filter against all leading terms
        std::vector<int> e(vars_.size(), 0);
        std::vector<Monomial> found;
        auto rec = [&](auto&& self, std::size_t pos) -> void {
            if (pos == vars_.size()) {
                Monomial m(e);
                for (const auto& g : gb_.generators)
                    if (g.leading_monomial().divides(m)) return;
                found.push_back(std::move(m));
                return;
            }
            for (e[pos] = 0; e[pos] < bound[pos]; ++e[pos]) self(self, pos + 1);
            e[pos] = 0;
        };
        rec(rec, 0);
        std::sort(found.begin(), found.end(), degrevlex_less);
        basis_ = std::move(found);
        for (std::size_t i = 0; i < basis_.size(); ++i) basis_index_.emplace(basis_[i], i);
        dim_ = basis_.size();
        kind_ = gb_.all_monomial() ? PresentationKind::MonomialLocal : PresentationKind::General;
    }

    void validate_tower_relations(const std::vector<Polynomial<K>>& minpolys) const {
        for (std::size_t i = 0; i < minpolys.size(); ++i) {
            const auto& p = minpolys[i];
            if (p.nvars() != vars_.size())
                throw AmbientMismatch("tower minimal polynomial ambient mismatch");
            std::vector<K> coeffs;
            for (const auto& [m, c] : p.terms()) {
                const auto sup = m.support();
                if (!(sup.empty() || (sup.size() == 1 && sup[0] == i)))
                    throw UnsupportedPresentation(
                        "tower minimal polynomials must be univariate in their own generator");
            }
            const int deg = p.degree();
            if (deg < 1) throw NotAField("constant tower relation");
            coeffs.assign(static_cast<std::size_t>(deg) + 1, field_.zero());
            for (const auto& [m, c] : p.terms()) coeffs[static_cast<std::size_t>(m[i])] = c;
            if (!is_irreducible(coeffs, field_))
                throw NotAField("tower relation '" + p.str(vars_) + "' is reducible");
        }
    }

    void certify_field() const {
        if (dim_ == 1) return;
        if (field_.characteristic() > 0) {
            // with prime-field coefficients the tower is a tensor product of
            // F_{p^d}; it is a field iff the degrees are pairwise coprime
            std::vector<long long> degs;
            for (const auto& g : gb_.generators) degs.push_back(g.degree());
            for (std::size_t i = 0; i < degs.size(); ++i)
                for (std::size_t j = i + 1; j < degs.size(); ++j) {
                    long long a = degs[i], b = degs[j];
                    while (b) { long long t = a % b; a = b; b = t; }
                    if (a != 1) throw NotAField("tower degrees share a common factor");
                }
            return;
        }
        // characteristic zero: hunt for a primitive element a = sum c^i t_i;
        // the tower is a field iff some candidate has an irreducible minimal
        // polynomial of full degree
        const long long budget = static_cast<long long>(dim_) * static_cast<long long>(dim_) + 5;
        for (long long c = 1; c <= budget; ++c) {
            Vec<K> a(dim_, field_.zero());
            K w = field_.one();
            for (std::size_t v = 0; v < vars_.size(); ++v) {
                const Monomial mv = Monomial::var(vars_.size(), v);
                auto it = basis_index_.find(mv);
                if (it == basis_index_.end()) throw NotAField("tower generator reduced away");
                a[it->second] += w;
                w = w * field_.from_int(c);
            }
            std::vector<K> mp = minimal_polynomial_coords(a);
            if (mp.size() == dim_ + 1) {
                if (is_irreducible(mp, field_)) return;
                throw NotAField("tower is a nontrivial product of fields");
            }
        }
        throw NotAField("no primitive element found within budget; not a field");
    }

    void build_table() const {
        table_.assign(dim_ * dim_, {});
        for (std::size_t i = 0; i < dim_; ++i)
            for (std::size_t j = i; j < dim_; ++j) {
                Polynomial<K> prod = Polynomial<K>::monomial(basis_[i] * basis_[j], field_.one());
                Polynomial<K> nf = normal_form(prod, gb_);
                SparseVec<K> entry;
                for (const auto& [m, c] : nf.terms()) {
                    auto it = basis_index_.find(m);
                    if (it == basis_index_.end())
                        throw InternalSelfCheck("normal form left the standard basis");
                    entry.emplace_back(it->second, c);
                }
                std::sort(entry.begin(), entry.end(),
                          [](const auto& a, const auto& b) { return a.first < b.first; });
                table_[i * dim_ + j] = entry;
                table_[j * dim_ + i] = std::move(entry);
            }
    }

public:
    /// Coefficients (constant first) of the monic minimal polynomial of the
    /// element with the given coordinates.
    std::vector<K> minimal_polynomial_coords(const Vec<K>& a) const {
        std::vector<Vec<K>> powers;
        Vec<K> cur(dim_, field_.zero());
        cur = one_coords();
        powers.push_back(cur);
        for (std::size_t k = 1; k <= dim_; ++k) {
            cur = mul_coords(cur, a);
            LinearSolver<K> solver(powers, dim_);
            if (auto x = solver.solve(cur)) {
                std::vector<K> mp(k + 1, field_.zero());
                for (std::size_t i = 0; i < k; ++i) mp[i] = -(*x)[i];
                mp[k] = field_.one();
                return mp;
            }
            powers.push_back(cur);
        }
        throw InternalSelfCheck("no linear dependence among powers in a finite-dimensional algebra");
    }

    Vec<K> one_coords() const {
        Vec<K> c(dim_, field_.zero());
        if (kind_ == PresentationKind::Product) {
            std::size_t off = 0;
            for (const auto& f : factors_) {
                Vec<K> fo = f->one_coords();
                for (std::size_t i = 0; i < fo.size(); ++i) c[off + i] = std::move(fo[i]);
                off += f->dim();
            }
        } else {
            c[0] = field_.one();  // basis is sorted, 1 comes first
        }
        return c;
    }

private:
    FieldContext<K> field_;
    PresentationKind kind_ = PresentationKind::General;
    std::vector<std::string> vars_;
    GroebnerBasis<K> gb_;
    std::vector<Monomial> basis_;
    std::map<Monomial, std::size_t> basis_index_;
    std::vector<AlgebraPtr<K>> factors_;
    std::size_t dim_ = 0;

    mutable std::once_flag table_once_;
    mutable std::vector<SparseVec<K>> table_;
};

// --- elements ------------------------------------------------------------

template <typename K>
struct AlgebraElement {
    AlgebraPtr<K> owner;
    Vec<K> coords;

    bool is_zero() const {
        for (const K& c : coords)
            if (!artin::is_zero(c)) return false;
        return true;
    }

    bool is_one() const { return coords == owner->one_coords(); }

    friend AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b) {
        a.check_owner(b);
        Vec<K> c = a.coords;
        for (std::size_t i = 0; i < c.size(); ++i) c[i] += b.coords[i];
        return {a.owner, std::move(c)};
    }
    friend AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b) {
        a.check_owner(b);
        Vec<K> c = a.coords;
        for (std::size_t i = 0; i < c.size(); ++i) c[i] -= b.coords[i];
        return {a.owner, std::move(c)};
    }
    AlgebraElement operator-() const {
        Vec<K> c = coords;
        for (K& x : c) x = -x;
        return {owner, std::move(c)};
    }
    friend AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) {
        a.check_owner(b);
        return {a.owner, a.owner->mul_coords(a.coords, b.coords)};
    }
    AlgebraElement scaled(const K& k) const {
        Vec<K> c = coords;
        for (K& x : c) x = x * k;
        return {owner, std::move(c)};
    }
    AlgebraElement pow(std::size_t e) const {
        AlgebraElement r = owner->one();
        for (std::size_t i = 0; i < e; ++i) r = r * (*this);
        return r;
    }

    bool operator==(const AlgebraElement& o) const {
        return owner == o.owner && coords == o.coords;
    }
    bool operator!=(const AlgebraElement& o) const { return !(*this == o); }

    std::string str() const { return owner->element_str(coords); }

    void check_owner(const AlgebraElement& o) const {
        if (owner != o.owner)
            throw AmbientMismatch("elements belong to different algebras");
    }
};

template <typename K>
AlgebraElement<K> ArtinianAlgebra<K>::from_coords(Vec<K> c) const {
    if (c.size() != dim_) throw AmbientMismatch("coordinate length does not match the basis");
    return {this->shared_from_this(), std::move(c)};
}

template <typename K>
AlgebraElement<K> ArtinianAlgebra<K>::zero() const {
    return {this->shared_from_this(), Vec<K>(dim_, field_.zero())};
}

template <typename K>
AlgebraElement<K> ArtinianAlgebra<K>::one() const {
    return {this->shared_from_this(), one_coords()};
}

template <typename K>
AlgebraElement<K> ArtinianAlgebra<K>::from_int(long long v) const {
    return one().scaled(field_.from_int(v));
}

template <typename K>
AlgebraElement<K> ArtinianAlgebra<K>::basis_element(std::size_t i) const {
    Vec<K> c(dim_, field_.zero());
    c[i] = field_.one();
    return {this->shared_from_this(), std::move(c)};
}

template <typename K>
AlgebraElement<K> ArtinianAlgebra<K>::var_element(std::size_t i) const {
    return from_polynomial(Polynomial<K>::monomial(Monomial::var(vars_.size(), i), field_.one()));
}

template <typename K>
AlgebraElement<K> ArtinianAlgebra<K>::from_polynomial(const Polynomial<K>& p) const {
    if (kind_ == PresentationKind::Product)
        throw UnsupportedPresentation("products take elements factor-wise, not from polynomials");
    if (p.nvars() != vars_.size()) throw AmbientMismatch("polynomial ambient mismatch");
    Polynomial<K> nf = vars_.empty() ? p : normal_form(p, gb_);
    Vec<K> c(dim_, field_.zero());
    for (const auto& [m, coef] : nf.terms()) {
        auto it = basis_index_.find(m);
        if (it == basis_index_.end())
            throw InternalSelfCheck("normal form left the standard basis");
        c[it->second] = coef;
    }
    return {this->shared_from_this(), std::move(c)};
}

template <typename K>
AlgebraElement<K> ArtinianAlgebra<K>::parse(const std::string& text) const {
    if (kind_ == PresentationKind::Product) {
        // symbols e0, e1, ... denote factor unit idempotents
        std::vector<std::string> names;
        for (std::size_t j = 0; j < factors_.size(); ++j) names.push_back("e" + std::to_string(j));
        Polynomial<K> p = parse_polynomial<K>(text, names, field_);
        AlgebraElement<K> acc = zero();
        const auto idems = idempotents();
        for (const auto& [m, c] : p.terms()) {
            AlgebraElement<K> term = one();
            for (std::size_t j = 0; j < names.size(); ++j)
                for (int k = 0; k < m[j]; ++k) term = term * idems[j];
            acc = acc + term.scaled(c);
        }
        return acc;
    }
    return from_polynomial(parse_polynomial<K>(text, vars_, field_));
}

template <typename K>
AlgebraElement<K> ArtinianAlgebra<K>::embed_factor(std::size_t j, const AlgebraElement<K>& x) const {
    if (kind_ != PresentationKind::Product) throw UnsupportedPresentation("not a product");
    Vec<K> c(dim_, field_.zero());
    std::size_t off = 0;
    for (std::size_t k = 0; k < j; ++k) off += factors_[k]->dim();
    if (x.owner != factors_[j]) throw AmbientMismatch("element does not belong to the factor");
    for (std::size_t i = 0; i < x.coords.size(); ++i) c[off + i] = x.coords[i];
    return {this->shared_from_this(), std::move(c)};
}

template <typename K>
AlgebraElement<K> ArtinianAlgebra<K>::extract_factor(std::size_t j,
                                                     const AlgebraElement<K>& x) const {
    if (kind_ != PresentationKind::Product) throw UnsupportedPresentation("not a product");
    std::size_t off = 0;
    for (std::size_t k = 0; k < j; ++k) off += factors_[k]->dim();
    Vec<K> c(x.coords.begin() + off, x.coords.begin() + off + factors_[j]->dim());
    return {factors_[j], std::move(c)};
}

template <typename K>
std::vector<AlgebraElement<K>> ArtinianAlgebra<K>::idempotents() const {
    std::vector<AlgebraElement<K>> out;
    if (kind_ != PresentationKind::Product) return out;
    for (std::size_t j = 0; j < factors_.size(); ++j)
        out.push_back(embed_factor(j, factors_[j]->one()));
    return out;
}

// --- derived operations ----------------------------------------------------

/// Echelon span of the ideal generated by gens inside A, as coordinate rows.
template <typename K>
Echelon<K> ideal_span(const AlgebraPtr<K>& A, const std::vector<AlgebraElement<K>>& gens) {
    Echelon<K> ech;
    for (const auto& g : gens) {
        if (g.owner != A) throw AmbientMismatch("ideal generator from a different algebra");
        for (std::size_t j = 0; j < A->dim(); ++j) {
            Vec<K> prod = A->mul_coords(g.coords, A->basis_element(j).coords);
            ech.insert(to_sparse(prod));
            if (ech.rank() == A->dim()) return ech;
        }
    }
    return ech;
}

template <typename K>
bool in_ideal(const AlgebraElement<K>& x, const Echelon<K>& span) {
    return span.contains(to_sparse(x.coords));
}

/// Monic univariate minimal polynomial, returned over a fresh variable "t".
template <typename K>
Polynomial<K> minimal_polynomial(const AlgebraElement<K>& a) {
    const auto coeffs = a.owner->minimal_polynomial_coords(a.coords);
    std::vector<typename Polynomial<K>::Term> ts;
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        if (!is_zero(coeffs[i])) ts.emplace_back(Monomial::var(1, 0, static_cast<int>(i)), coeffs[i]);
    return Polynomial<K>::from_terms(1, std::move(ts));
}

template <typename K>
struct ZeroDivisorReport {
    bool is_zero_divisor = false;
    std::optional<AlgebraElement<K>> witness;  // nonzero b with ab = 0
    std::optional<AlgebraElement<K>> inverse;  // set when a is a unit
};

/// Regular elements of an Artinian algebra are units; the report carries
/// either an annihilator witness or the inverse.
template <typename K>
ZeroDivisorReport<K> is_zero_divisor(const AlgebraElement<K>& a) {
    const auto& A = a.owner;
    std::vector<Vec<K>> cols;
    cols.reserve(A->dim());
    for (std::size_t j = 0; j < A->dim(); ++j)
        cols.push_back(A->mul_coords(a.coords, A->basis_element(j).coords));
    LinearSolver<K> solver(std::move(cols), A->dim());
    ZeroDivisorReport<K> rep;
    if (!solver.kernel_basis().empty()) {
        rep.is_zero_divisor = true;
        rep.witness = A->from_coords(solver.kernel_basis()[0]);
        return rep;
    }
    auto inv = solver.solve(A->one_coords());
    if (!inv) throw InternalSelfCheck("injective multiplication map must be surjective");
    rep.inverse = A->from_coords(*inv);
    return rep;
}

/// Complete list of maximal ideals for the supported presentation forms.
template <typename K>
std::vector<MaximalIdealDesc<K>> maximal_ideals(const AlgebraPtr<K>& A) {
    std::vector<MaximalIdealDesc<K>> out;
    switch (A->kind()) {
        case PresentationKind::FieldTower: {
            out.push_back(MaximalIdealDesc<K>{A, {}, MaxIdealKind::FieldZero, -1, nullptr});
            break;
        }
        case PresentationKind::MonomialLocal: {
            std::vector<AlgebraElement<K>> gens;
            for (std::size_t v = 0; v < A->vars().size(); ++v) gens.push_back(A->var_element(v));
            MaximalIdealDesc<K> m{A, std::move(gens), MaxIdealKind::LocalMonomial, -1, nullptr};
            Echelon<K> span = ideal_span(A, m.generators);
            if (span.rank() + 1 != A->dim())
                throw InternalSelfCheck("monomial-local quotient is not one-dimensional");
            out.push_back(std::move(m));
            break;
        }
        case PresentationKind::Product: {
            for (std::size_t j = 0; j < A->factors().size(); ++j) {
                for (auto& inner : maximal_ideals(A->factors()[j])) {
                    std::vector<AlgebraElement<K>> gens;
                    for (const auto& g : inner.generators) gens.push_back(A->embed_factor(j, g));
                    for (std::size_t k = 0; k < A->factors().size(); ++k)
                        if (k != j) gens.push_back(A->embed_factor(k, A->factors()[k]->one()));
                    out.push_back(MaximalIdealDesc<K>{
                        A, std::move(gens), MaxIdealKind::ProductFactor, static_cast<int>(j),
                        std::make_shared<MaximalIdealDesc<K>>(std::move(inner))});
                }
            }
            break;
        }
        case PresentationKind::General:
            throw UnsupportedPresentation(
                "maximal ideals need a monomial-local, product, or field-tower presentation");
    }
    return out;
}

/// Residue field A/M with the quotient map realized on coordinates.
template <typename K>
struct ResidueMap {
    AlgebraPtr<K> residue;
    DenseMatrix<K> pi;  // residue->dim() x A->dim()

    AlgebraElement<K> apply(const AlgebraElement<K>& x) const {
        return residue->from_coords(pi.apply(x.coords));
    }
};

template <typename K>
ResidueMap<K> residue_field(const AlgebraPtr<K>& A, const MaximalIdealDesc<K>& M) {
    if (M.owner != A) throw IncompatibleIdeal("maximal ideal of a different algebra");
    switch (M.kind) {
        case MaxIdealKind::FieldZero: {
            DenseMatrix<K> id(A->dim(), A->dim(), A->field().zero());
            for (std::size_t i = 0; i < A->dim(); ++i) id.at(i, i) = A->field().one();
            return {A, std::move(id)};
        }
        case MaxIdealKind::LocalMonomial: {
            AlgebraPtr<K> k0 = ArtinianAlgebra<K>::scalar_field(A->field());
            DenseMatrix<K> pi(1, A->dim(), A->field().zero());
            pi.at(0, 0) = A->field().one();  // coefficient of the basis monomial 1
            return {k0, std::move(pi)};
        }
        case MaxIdealKind::ProductFactor: {
            const std::size_t j = static_cast<std::size_t>(M.factor_index);
            ResidueMap<K> inner = residue_field(A->factors()[j], *M.inner);
            std::size_t off = 0;
            for (std::size_t k = 0; k < j; ++k) off += A->factors()[k]->dim();
            DenseMatrix<K> pi(inner.residue->dim(), A->dim(), A->field().zero());
            for (std::size_t r = 0; r < pi.rows(); ++r)
                for (std::size_t c = 0; c < A->factors()[j]->dim(); ++c)
                    pi.at(r, off + c) = inner.pi.at(r, c);
            return {inner.residue, std::move(pi)};
        }
    }
    throw InternalSelfCheck("unreachable maximal ideal kind");
}

}  // namespace artin
