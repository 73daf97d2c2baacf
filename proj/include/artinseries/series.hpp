/// Truncated elements of the Artinian power series ring: coefficients live in
/// a declared subring of the directed family, all identities are exact below
/// the truncation degree. Also: the coefficientwise residue map, extension
/// ideals M S with their membership test, and minimal-prime enumeration.
#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "artinseries/family.hpp"

namespace artin {

template <typename K>
struct SeriesContext;

template <typename K>
using ContextPtr = std::shared_ptr<const SeriesContext<K>>;

template <typename K>
struct SeriesContext : std::enable_shared_from_this<SeriesContext<K>> {
    FamilyPtr<K> family;
    std::vector<std::string> vars;  // series indeterminates
    int trunc = 0;                  // identities are exact below this total degree

    static ContextPtr<K> create(FamilyPtr<K> family, std::vector<std::string> vars, int trunc) {
        if (trunc < 1) throw ContextMismatch("truncation degree must be at least 1");
        if (vars.empty()) throw ContextMismatch("need at least one series variable");
        auto ctx = std::make_shared<SeriesContext>();
        ctx->family = std::move(family);
        ctx->vars = std::move(vars);
        ctx->trunc = trunc;
        return ctx;
    }

    std::size_t nvars() const { return vars.size(); }
};

template <typename K>
class SeriesElement {
public:
    SeriesElement() = default;
    SeriesElement(ContextPtr<K> ctx, SubringHandle<K> sub)
        : ctx_(std::move(ctx)), sub_(std::move(sub)) {}

    const ContextPtr<K>& ctx() const { return ctx_; }
    const SubringHandle<K>& subring() const { return sub_; }
    const std::map<Monomial, AlgebraElement<K>>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }

    bool no_single_subring() const { return escaping_; }
    void mark_no_single_subring() { escaping_ = true; }

    /// Coefficient of a monomial, zero if absent.
    AlgebraElement<K> coeff(const Monomial& m) const {
        auto it = coeffs_.find(m);
        return it == coeffs_.end() ? sub_.algebra()->zero() : it->second;
    }
    AlgebraElement<K> constant_coeff() const { return coeff(Monomial(ctx_->nvars())); }

    void set_coeff(Monomial m, AlgebraElement<K> c) {
        if (m.degree() >= ctx_->trunc) return;  // beyond the window: unknown, dropped
        if (c.owner != sub_.algebra()) throw AmbientMismatch("coefficient outside declared subring");
        if (c.is_zero()) coeffs_.erase(m);
        else coeffs_.insert_or_assign(std::move(m), std::move(c));
    }

    void add_coeff(const Monomial& m, const AlgebraElement<K>& c) {
        if (m.degree() >= ctx_->trunc) return;
        auto it = coeffs_.find(m);
        if (it == coeffs_.end()) set_coeff(m, c);
        else {
            it->second = it->second + c;
            if (it->second.is_zero()) coeffs_.erase(it);
        }
    }

    int degree() const {
        int d = -1;
        for (const auto& [m, c] : coeffs_) d = std::max(d, m.degree());
        return d;
    }

    /// Rewitness into a larger subring of the same family.
    SeriesElement lifted(const SubringHandle<K>& target) const {
        if (target.family != sub_.family) throw FamilyMismatch("lift into a different family");
        SeriesElement out(ctx_, target);
        out.escaping_ = escaping_;
        for (const auto& [m, c] : coeffs_)
            out.coeffs_.emplace(m, sub_.family->embed(c, sub_.idx, target.idx));
        return out;
    }

    friend SeriesElement operator+(const SeriesElement& a, const SeriesElement& b) {
        a.check_ctx(b);
        SubringHandle<K> h = join(a.sub_, b.sub_);
        SeriesElement fa = a.lifted(h), fb = b.lifted(h);
        SeriesElement out(a.ctx_, h);
        out.escaping_ = a.escaping_ || b.escaping_;
        out.coeffs_ = std::move(fa.coeffs_);
        for (const auto& [m, c] : fb.coeffs_) out.add_coeff(m, c);
        return out;
    }

    friend SeriesElement operator-(const SeriesElement& a, const SeriesElement& b) {
        return a + (-b);
    }

    SeriesElement operator-() const {
        SeriesElement out(ctx_, sub_);
        out.escaping_ = escaping_;
        for (const auto& [m, c] : coeffs_) out.coeffs_.emplace(m, -c);
        return out;
    }

    /// Cauchy product, exact below the truncation degree.
    friend SeriesElement operator*(const SeriesElement& a, const SeriesElement& b) {
        a.check_ctx(b);
        SubringHandle<K> h = join(a.sub_, b.sub_);
        SeriesElement fa = a.lifted(h), fb = b.lifted(h);
        SeriesElement out(a.ctx_, h);
        out.escaping_ = a.escaping_ || b.escaping_;
        const int D = a.ctx_->trunc;
        for (const auto& [ma, ca] : fa.coeffs_)
            for (const auto& [mb, cb] : fb.coeffs_) {
                if (ma.degree() + mb.degree() >= D) continue;
                out.add_coeff(ma * mb, ca * cb);
            }
        return out;
    }

    SeriesElement scaled(const AlgebraElement<K>& c) const {
        SeriesElement constant(ctx_, sub_);
        // scale in whichever subring holds both
        SubringHandle<K> h = sub_;
        AlgebraElement<K> cc = c;
        if (c.owner != sub_.algebra())
            throw AmbientMismatch("scale coefficient from an unrelated algebra");
        SeriesElement out(ctx_, h);
        out.escaping_ = escaping_;
        for (const auto& [m, x] : coeffs_) out.add_coeff(m, x * cc);
        return out;
    }

    bool equals(const SeriesElement& o) const {
        check_ctx(o);
        SubringHandle<K> h = join(sub_, o.sub_);
        return lifted(h).coeffs_ == o.lifted(h).coeffs_;
    }

    std::string str() const {
        if (coeffs_.empty()) return "0";
        std::vector<Monomial> ms;
        for (const auto& [m, c] : coeffs_) ms.push_back(m);
        std::sort(ms.begin(), ms.end(), degrevlex_less);
        std::string out;
        for (const auto& m : ms) {
            std::string cs = coeffs_.at(m).str();
            if (cs.find(' ') != std::string::npos && !(cs.front() == '(' && cs.back() == ')'))
                cs = "(" + cs + ")";
            if (!out.empty()) out += " + ";
            if (m.is_one()) out += cs;
            else if (cs == "1") out += m.str(ctx_->vars);
            else out += cs + "*" + m.str(ctx_->vars);
        }
        return out;
    }

    void check_ctx(const SeriesElement& o) const {
        if (ctx_ != o.ctx_) throw ContextMismatch("series elements from different contexts");
    }

private:
    ContextPtr<K> ctx_;
    SubringHandle<K> sub_;
    std::map<Monomial, AlgebraElement<K>> coeffs_;
    bool escaping_ = false;
};

// --- constructors ----------------------------------------------------------

template <typename K>
SeriesElement<K> series_zero(const ContextPtr<K>& ctx, const SubringHandle<K>& h) {
    return SeriesElement<K>(ctx, h);
}

template <typename K>
SeriesElement<K> series_constant(const ContextPtr<K>& ctx, const SubringHandle<K>& h,
                                 const AlgebraElement<K>& c) {
    SeriesElement<K> f(ctx, h);
    f.set_coeff(Monomial(ctx->nvars()), c);
    return f;
}

template <typename K>
SeriesElement<K> series_one(const ContextPtr<K>& ctx, const SubringHandle<K>& h) {
    return series_constant(ctx, h, h.algebra()->one());
}

template <typename K>
SeriesElement<K> series_term(const ContextPtr<K>& ctx, const SubringHandle<K>& h,
                             const AlgebraElement<K>& c, Monomial m) {
    SeriesElement<K> f(ctx, h);
    f.set_coeff(std::move(m), c);
    return f;
}

/// Text form like `y + z0*X + 2*X^2`: series variables by exact name, ring
/// variables case-insensitively, factor idempotents as e0, e1, ...
template <typename K>
SeriesElement<K> parse_series(const ContextPtr<K>& ctx, const SubringHandle<K>& h,
                              const std::string& text) {
    AlgebraPtr<K> A = h.algebra();
    const std::size_t ns = ctx->nvars();
    std::vector<std::string> names = ctx->vars;
    std::vector<std::string> ring_syms;
    if (A->is_product())
        for (std::size_t j = 0; j < A->factors().size(); ++j)
            ring_syms.push_back("e" + std::to_string(j));
    else
        ring_syms = A->vars();
    names.insert(names.end(), ring_syms.begin(), ring_syms.end());

    Polynomial<K> p = parse_polynomial<K>(text, names, A->field());
    SeriesElement<K> out(ctx, h);
    const auto idems = A->idempotents();
    for (const auto& [m, c] : p.terms()) {
        Monomial sm(ns);
        for (std::size_t i = 0; i < ns; ++i) sm[i] = m[i];
        AlgebraElement<K> coef = A->one().scaled(c);
        if (A->is_product()) {
            for (std::size_t j = 0; j < ring_syms.size(); ++j)
                if (m[ns + j] > 0) coef = coef * idems[j];
        } else {
            Monomial rm(ring_syms.size());
            for (std::size_t j = 0; j < ring_syms.size(); ++j) rm[j] = m[ns + j];
            coef = coef * A->from_polynomial(Polynomial<K>::monomial(rm, A->field().one()));
        }
        out.add_coeff(sm, coef);
    }
    return out;
}

/// Smallest witness subring actually containing the coefficients. Never
/// required for correctness; the declared subring stays a valid witness.
template <typename K>
SeriesElement<K> minimize_subring(const SeriesElement<K>& f) {
    const auto& h = f.subring();
    AlgebraPtr<K> A = h.algebra();
    if (A->is_product()) return f;
    const auto vars = h.family->subring_vars(h.idx);
    const std::size_t nbase = h.family->base_spec().vars.size();
    std::set<std::size_t> used;
    for (const auto& [m, c] : f.coeffs()) {
        for (std::size_t b = 0; b < A->dim(); ++b) {
            if (is_zero(c.coords[b])) continue;
            for (std::size_t v : A->basis()[b].support())
                if (v >= nbase) used.insert(h.idx[v - nbase]);
        }
    }
    IndexSet idx(used.begin(), used.end());
    if (idx.size() == h.idx.size()) return f;
    SubringHandle<K> smaller = make_handle(h.family, idx);
    AlgebraPtr<K> B = smaller.algebra();
    const auto tvars = h.family->subring_vars(smaller.idx);
    SeriesElement<K> out(f.ctx(), smaller);
    for (const auto& [m, c] : f.coeffs()) {
        std::vector<typename Polynomial<K>::Term> ts;
        for (std::size_t b = 0; b < A->dim(); ++b) {
            if (is_zero(c.coords[b])) continue;
            const Monomial& bm = A->basis()[b];
            Monomial tm(tvars.size());
            for (std::size_t v = 0; v < vars.size(); ++v) {
                if (bm[v] == 0) continue;
                int j = detail::resolve_symbol(vars[v], tvars);
                if (j < 0) throw InternalSelfCheck("minimize_subring dropped a used variable");
                tm[static_cast<std::size_t>(j)] = bm[v];
            }
            ts.emplace_back(std::move(tm), c.coords[b]);
        }
        out.set_coeff(m, B->from_polynomial(Polynomial<K>::from_terms(tvars.size(), std::move(ts))));
    }
    return out;
}

// --- extension ideals M S and the residue map ------------------------------

namespace detail {

/// Structural address of a maximal ideal: the chain of product-factor
/// indices followed by the terminal kind.
template <typename K>
std::pair<std::vector<int>, MaxIdealKind> max_ideal_path(const MaximalIdealDesc<K>& m) {
    std::vector<int> path;
    const MaximalIdealDesc<K>* cur = &m;
    while (cur->kind == MaxIdealKind::ProductFactor) {
        path.push_back(cur->factor_index);
        cur = cur->inner.get();
    }
    return {path, cur->kind};
}

}  // namespace detail

template <typename K>
struct ExtIdealDesc {
    ContextPtr<K> ctx;
    SubringHandle<K> window;       // where the ideal was described
    MaximalIdealDesc<K> desc;      // M restricted to that window
    ContextPtr<K> residue_ctx;     // context over the residue-field family
    SubringHandle<K> residue_base; // witness handle for residue coefficients

    /// M cap R_beta for any window of the family.
    MaximalIdealDesc<K> restrict_to(const SubringHandle<K>& h) const {
        if (h.family != window.family) throw IncompatibleIdeal("window from a different family");
        const auto want = detail::max_ideal_path(desc);
        for (auto& cand : maximal_ideals(h.algebra()))
            if (detail::max_ideal_path(cand) == want) return cand;
        throw IncompatibleIdeal("no compatible restriction in the requested window");
    }
};

/// Coefficientwise membership in the extension ideal: f lies in M S iff every
/// coefficient lies in the restriction of M to f's witness subring.
template <typename K>
bool ext_membership(const SeriesElement<K>& f, const ExtIdealDesc<K>& E) {
    if (f.ctx() != E.ctx) throw IncompatibleIdeal("series and ideal from different contexts");
    const MaximalIdealDesc<K> M = E.restrict_to(f.subring());
    AlgebraPtr<K> A = f.subring().algebra();
    if (M.kind == MaxIdealKind::FieldZero) return f.is_zero();
    Echelon<K> span = ideal_span(A, M.generators);
    for (const auto& [m, c] : f.coeffs())
        if (!in_ideal(c, span)) return false;
    return true;
}

/// The residue map applied coefficientwise; the image lives in the series
/// context over the residue-field family.
template <typename K>
SeriesElement<K> residue_map(const SeriesElement<K>& f, const ExtIdealDesc<K>& E) {
    if (f.ctx() != E.ctx) throw IncompatibleIdeal("series and ideal from different contexts");
    const MaximalIdealDesc<K> M = E.restrict_to(f.subring());
    AlgebraPtr<K> A = f.subring().algebra();
    ResidueMap<K> pi = residue_field(A, M);

    SubringHandle<K> target = E.residue_base;
    if (M.kind == MaxIdealKind::FieldZero) {
        // residue family is the family itself; keep the witness window
        target = SubringHandle<K>{E.residue_ctx->family, f.subring().idx};
    }
    AlgebraPtr<K> killed = target.algebra();
    SeriesElement<K> out(E.residue_ctx, target);
    for (const auto& [m, c] : f.coeffs()) {
        AlgebraElement<K> img = pi.apply(c);
        if (img.owner != killed) {
            if (img.owner->dim() != killed->dim())
                throw InternalSelfCheck("residue algebra mismatch");
            img = killed->from_coords(img.coords);
        }
        out.add_coeff(m, img);
    }
    return out;
}

/// Builds the residue-field family and context matching a maximal ideal kind.
template <typename K>
ContextPtr<K> residue_context(const ContextPtr<K>& ctx, const MaximalIdealDesc<K>& M) {
    const auto [path, kind] = detail::max_ideal_path(M);
    if (kind == MaxIdealKind::FieldZero && path.empty()) return ctx;  // field windows map to themselves
    BaseSpec spec = BaseSpec::prime_field();
    if (kind == MaxIdealKind::FieldZero) {
        // a field factor inside a product keeps its own presentation
        const BaseSpec* cur = &ctx->family->base_spec();
        for (int j : path) cur = &cur->factors[static_cast<std::size_t>(j)];
        spec = *cur;
    }
    auto constant = DirectedFamily<K>::create(ctx->family->field(), spec,
                                              std::make_shared<TrivialStream>());
    return SeriesContext<K>::create(constant, ctx->vars, ctx->trunc);
}

/// One extension ideal per maximal ideal of the window; compatibility of the
/// restriction is checked against one strictly larger window.
template <typename K>
std::vector<ExtIdealDesc<K>> minimal_primes(const ContextPtr<K>& ctx,
                                            const SubringHandle<K>& window) {
    std::vector<ExtIdealDesc<K>> out;
    AlgebraPtr<K> A = window.algebra();
    for (auto& M : maximal_ideals(A)) {
        ExtIdealDesc<K> E;
        E.ctx = ctx;
        E.window = window;
        E.desc = M;
        E.residue_ctx = residue_context(ctx, M);
        E.residue_base = (detail::max_ideal_path(M).second == MaxIdealKind::FieldZero &&
                          detail::max_ideal_path(M).first.empty())
                             ? SubringHandle<K>{E.residue_ctx->family, window.idx}
                             : make_handle(E.residue_ctx->family, {});

        // compatibility: M_beta = M_gamma cap R_beta on a larger window
        if (!ctx->family->stream().finite()) {
            IndexSet larger = window.idx;
            larger.push_back(larger.empty() ? 0 : larger.back() + 1);
            SubringHandle<K> bigger = make_handle(ctx->family, larger);
            const MaximalIdealDesc<K> Mb = E.restrict_to(window);
            const MaximalIdealDesc<K> Mg = E.restrict_to(bigger);
            Echelon<K> small_span = ideal_span(A, Mb.generators);
            Echelon<K> big_span = ideal_span(bigger.algebra(), Mg.generators);
            for (std::size_t b = 0; b < A->dim(); ++b) {
                const AlgebraElement<K> x = A->basis_element(b);
                const AlgebraElement<K> xg = ctx->family->embed(x, window.idx, bigger.idx);
                if (in_ideal(x, small_span) != in_ideal(xg, big_span))
                    throw InternalSelfCheck("extension-ideal restrictions are incompatible");
            }
        }
        out.push_back(std::move(E));
    }
    return out;
}

// --- quotient presentation and the tensor dimension identity ---------------

template <typename K>
struct QuotientPresentation {
    ContextPtr<K> residue_ctx;
    std::size_t residue_degree = 0;   // [k_beta : k_0]
    std::size_t monomial_count = 0;   // monomials of degree < D
    std::size_t spanned_rank = 0;     // rank of the image of phi on a spanning set
    bool identity_holds = false;      // spanned_rank == residue_degree * monomial_count
};

/// Realizes S/MS as the residue-field series ring at truncation and verifies
/// the tensor dimension identity by an actual rank computation.
template <typename K>
QuotientPresentation<K> quotient_presentation(const ContextPtr<K>& ctx, const ExtIdealDesc<K>& E) {
    QuotientPresentation<K> rep;
    rep.residue_ctx = E.residue_ctx;

    const SubringHandle<K>& beta = E.window;
    AlgebraPtr<K> A = beta.algebra();
    const MaximalIdealDesc<K> M = E.restrict_to(beta);
    ResidueMap<K> pi = residue_field(A, M);
    const std::size_t kdim = pi.residue->dim();

    const auto mons = monomials_below(ctx->nvars(), ctx->trunc);
    rep.residue_degree = kdim;  // [k_beta : k_0], k_0 being the scalar field
    rep.monomial_count = mons.size();

    // rank of { phi(b_i X^mu) } inside the truncated residue module
    std::map<Monomial, std::size_t> mindex;
    for (std::size_t i = 0; i < mons.size(); ++i) mindex.emplace(mons[i], i);
    Echelon<K> ech;
    for (std::size_t b = 0; b < A->dim(); ++b) {
        const Vec<K> img = pi.pi.apply(A->basis_element(b).coords);
        SparseVec<K> simg = to_sparse(img);
        if (simg.empty()) continue;
        for (std::size_t mi = 0; mi < mons.size(); ++mi) {
            SparseVec<K> v;
            for (const auto& [i, c] : simg) v.emplace_back(mi * kdim + i, c);
            ech.insert(std::move(v));
        }
    }
    rep.spanned_rank = ech.rank();
    rep.identity_holds = (rep.spanned_rank == rep.residue_degree * rep.monomial_count);
    return rep;
}

// --- the non-Noetherian chain, now with the series-level constant-term check

struct ChainStepFull {
    bool strict_in_ring = false;
    bool stable_in_larger = false;
    bool strict_in_series = false;  // constant-term argument at truncation
};

template <typename K>
bool truncated_ideal_membership_constant(const ContextPtr<K>& ctx,
                                         const std::vector<AlgebraElement<K>>& gens,
                                         const AlgebraElement<K>& target,
                                         const SubringHandle<K>& window);

template <typename K>
std::vector<ChainStepFull> non_noetherian_chain(const ContextPtr<K>& ctx,
                                                const std::vector<std::string>& generator_names,
                                                std::size_t t) {
    const auto ring_steps = chain_strictness_in_ring(ctx->family, generator_names, t);
    std::vector<ChainStepFull> out;
    for (std::size_t i = 0; i < ring_steps.size(); ++i) {
        ChainStepFull step;
        step.strict_in_ring = ring_steps[i].strict_in_ring;
        step.stable_in_larger = ring_steps[i].stable_in_larger;

        IndexSet widx;
        for (std::size_t k = 0; k <= i + 1; ++k) widx.push_back(k);
        SubringHandle<K> window = make_handle(ctx->family, widx);
        AlgebraPtr<K> A = window.algebra();
        std::vector<AlgebraElement<K>> gens;
        for (std::size_t k = 0; k <= i; ++k) gens.push_back(A->parse(generator_names[k]));
        AlgebraElement<K> next = A->parse(generator_names[i + 1]);
        step.strict_in_series =
            !truncated_ideal_membership_constant(ctx, gens, next, window);
        out.push_back(step);
    }
    return out;
}

}  // namespace artin
