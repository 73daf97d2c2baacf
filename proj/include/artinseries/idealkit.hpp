/// Finitely generated ideals of the truncated series ring: membership by
/// exact linear algebra, regular-sequence certificates, the constructive
/// prime-avoidance replacement, monomial heights and associated primes,
/// unmixedness, classical grade, and prime chains.
#pragma once

#include <limits>
#include <optional>
#include <set>
#include <vector>

#include "artinseries/series.hpp"

namespace artin {

/// The finite-dimensional module R_gamma (x) K[X]/(X)^D underlying all
/// truncated ideal computations; series become flat coordinate vectors.
template <typename K>
class TruncatedModule {
public:
    TruncatedModule(ContextPtr<K> ctx, SubringHandle<K> window)
        : ctx_(std::move(ctx)),
          window_(std::move(window)),
          algebra_(window_.algebra()),
          mons_(monomials_below(ctx_->nvars(), ctx_->trunc)) {
        for (std::size_t i = 0; i < mons_.size(); ++i) mindex_.emplace(mons_[i], i);
    }

    const ContextPtr<K>& ctx() const { return ctx_; }
    const SubringHandle<K>& window() const { return window_; }
    const AlgebraPtr<K>& algebra() const { return algebra_; }
    const std::vector<Monomial>& monomials() const { return mons_; }
    std::size_t dim() const { return algebra_->dim() * mons_.size(); }

    std::size_t index(std::size_t mon_i, std::size_t basis_i) const {
        return mon_i * algebra_->dim() + basis_i;
    }

    Vec<K> to_vec(const SeriesElement<K>& f) const {
        SeriesElement<K> g = f.lifted(window_);
        Vec<K> v(dim(), algebra_->field().zero());
        for (const auto& [m, c] : g.coeffs()) {
            const std::size_t mi = mindex_.at(m);
            for (std::size_t b = 0; b < algebra_->dim(); ++b) v[index(mi, b)] = c.coords[b];
        }
        return v;
    }

    SeriesElement<K> from_vec(const Vec<K>& v) const {
        SeriesElement<K> f(ctx_, window_);
        for (std::size_t mi = 0; mi < mons_.size(); ++mi) {
            Vec<K> c(v.begin() + index(mi, 0), v.begin() + index(mi, 0) + algebra_->dim());
            f.set_coeff(mons_[mi], algebra_->from_coords(std::move(c)));
        }
        return f;
    }

    SeriesElement<K> module_basis_elem(std::size_t mon_i, std::size_t basis_i) const {
        return series_term(ctx_, window_, algebra_->basis_element(basis_i), mons_[mon_i]);
    }

    /// Echelon span of the ideal (gens) + (X)^D inside the module.
    Echelon<K> span_of_ideal(const std::vector<SeriesElement<K>>& gens) const {
        Echelon<K> ech;
        for (const auto& g : gens) {
            SeriesElement<K> gl = g.lifted(window_);
            for (std::size_t mi = 0; mi < mons_.size(); ++mi)
                for (std::size_t b = 0; b < algebra_->dim(); ++b) {
                    SeriesElement<K> prod = gl * module_basis_elem(mi, b);
                    if (prod.is_zero()) continue;
                    ech.insert(to_sparse(to_vec(prod)));
                    if (ech.rank() == dim()) return ech;
                }
        }
        return ech;
    }

private:
    ContextPtr<K> ctx_;
    SubringHandle<K> window_;
    AlgebraPtr<K> algebra_;
    std::vector<Monomial> mons_;
    std::map<Monomial, std::size_t> mindex_;
};

template <typename K>
struct FgIdeal {
    ContextPtr<K> ctx;
    std::vector<SeriesElement<K>> gens;

    SubringHandle<K> joined_subring() const {
        SubringHandle<K> h = make_handle(ctx->family, {});
        for (const auto& g : gens) h = join(h, g.subring());
        return h;
    }
};

template <typename K>
FgIdeal<K> make_ideal(const ContextPtr<K>& ctx, std::vector<SeriesElement<K>> gens) {
    for (const auto& g : gens)
        if (g.ctx() != ctx) throw ContextMismatch("ideal generator from a different context");
    return FgIdeal<K>{ctx, std::move(gens)};
}

/// Membership in I + (X)^D, decided exactly in the truncated module.
template <typename K>
bool truncated_membership(const SeriesElement<K>& f, const FgIdeal<K>& I) {
    if (f.ctx() != I.ctx) throw ContextMismatch("series and ideal from different contexts");
    SubringHandle<K> window = join(f.subring(), I.joined_subring());
    TruncatedModule<K> mod(I.ctx, window);
    Echelon<K> span = mod.span_of_ideal(I.gens);
    return span.contains(to_sparse(mod.to_vec(f)));
}

template <typename K>
bool truncated_ideal_membership_constant(const ContextPtr<K>& ctx,
                                         const std::vector<AlgebraElement<K>>& gens,
                                         const AlgebraElement<K>& target,
                                         const SubringHandle<K>& window) {
    std::vector<SeriesElement<K>> sgens;
    sgens.reserve(gens.size());
    for (const auto& g : gens) sgens.push_back(series_constant(ctx, window, g));
    return truncated_membership(series_constant(ctx, window, target), make_ideal(ctx, sgens));
}

// --- regular sequences ------------------------------------------------------

template <typename K>
struct RegularStep {
    bool certified = false;
    std::optional<SeriesElement<K>> zero_divisor_witness;
};

template <typename K>
struct RegularSequenceReport {
    std::vector<SeriesElement<K>> sequence;
    int certified_to_degree = 0;
    std::vector<RegularStep<K>> steps;

    bool all_certified() const {
        for (const auto& s : steps)
            if (!s.certified) return false;
        return true;
    }
    std::size_t certified_length() const {
        std::size_t n = 0;
        while (n < steps.size() && steps[n].certified) ++n;
        return n;
    }
};

namespace detail {

/// Certifies that f is a non-zero-divisor on the truncated quotient modulo
/// prefix_span: the multiplication map, restricted below degree D - deg(f),
/// has kernel inside the ideal. A failing step returns a witness class.
template <typename K>
RegularStep<K> regular_step(const TruncatedModule<K>& mod, const Echelon<K>& prefix_span,
                            const SeriesElement<K>& f) {
    RegularStep<K> out;
    const int D = mod.ctx()->trunc;
    const int d = std::max(f.degree(), 0);
    SeriesElement<K> fl = f.lifted(mod.window());

    std::vector<std::pair<std::size_t, std::size_t>> restricted;
    for (std::size_t mi = 0; mi < mod.monomials().size(); ++mi) {
        if (mod.monomials()[mi].degree() >= D - d) continue;
        for (std::size_t b = 0; b < mod.algebra()->dim(); ++b) restricted.emplace_back(mi, b);
    }

    std::vector<Vec<K>> cols;
    cols.reserve(restricted.size());
    for (const auto& [mi, b] : restricted) {
        SeriesElement<K> prod = fl * mod.module_basis_elem(mi, b);
        SparseVec<K> rem = prefix_span.reduce(to_sparse(mod.to_vec(prod)));
        cols.push_back(to_dense(rem, mod.dim()));
    }
    LinearSolver<K> solver(std::move(cols), mod.dim());
    for (const Vec<K>& x : solver.kernel_basis()) {
        Vec<K> candidate(mod.dim(), mod.algebra()->field().zero());
        for (std::size_t k = 0; k < restricted.size(); ++k) {
            if (is_zero(x[k])) continue;
            const auto [mi, b] = restricted[k];
            candidate[mod.index(mi, b)] += x[k];
        }
        if (!prefix_span.contains(to_sparse(candidate))) {
            out.certified = false;
            out.zero_divisor_witness = mod.from_vec(candidate);
            return out;
        }
    }
    out.certified = true;
    return out;
}

template <typename K>
void reject_unit_generators(const TruncatedModule<K>& mod,
                            const std::vector<SeriesElement<K>>& fs) {
    for (const auto& f : fs) {
        AlgebraElement<K> c0 = f.lifted(mod.window()).constant_coeff();
        if (c0.is_zero()) continue;
        if (!is_zero_divisor(c0).is_zero_divisor)
            throw UnitGenerator("generator with unit constant term generates the whole ring");
    }
}

}  // namespace detail

/// Step-by-step certificate that fs is a regular sequence on the truncated
/// ring; "certified to degree D" is necessary for regularity in the full
/// series ring, not sufficient.
template <typename K>
RegularSequenceReport<K> is_regular_sequence(const ContextPtr<K>& ctx,
                                             const std::vector<SeriesElement<K>>& fs) {
    for (const auto& f : fs)
        if (f.ctx() != ctx) throw ContextMismatch("sequence entries from different contexts");
    RegularSequenceReport<K> rep;
    rep.sequence = fs;
    rep.certified_to_degree = ctx->trunc;
    if (fs.empty()) return rep;

    SubringHandle<K> window = make_handle(ctx->family, {});
    for (const auto& f : fs) window = join(window, f.subring());
    TruncatedModule<K> mod(ctx, window);
    detail::reject_unit_generators(mod, fs);

    std::vector<SeriesElement<K>> prefix;
    for (const auto& f : fs) {
        Echelon<K> span = mod.span_of_ideal(prefix);
        rep.steps.push_back(detail::regular_step(mod, span, f));
        prefix.push_back(f);
        if (!rep.steps.back().certified) {
            // later steps are not meaningful past a failed link
            for (std::size_t k = prefix.size(); k < fs.size(); ++k)
                rep.steps.push_back(RegularStep<K>{});
            break;
        }
    }
    return rep;
}

// --- monomial-slice heights and associated primes ---------------------------

/// Minimum size of a variable subset meeting the support of every generator;
/// exhaustive over subsets (n <= 12).
inline int monomial_height(const std::vector<Monomial>& gens, std::size_t nvars) {
    if (gens.empty()) return 0;
    if (nvars > 12) throw NotMonomial("monomial height capped at 12 variables");
    for (const auto& m : gens)
        if (m.is_one()) throw NotProper("a unit generator makes the ideal improper");
    int best = static_cast<int>(nvars) + 1;
    const std::size_t total = std::size_t(1) << nvars;
    for (std::size_t mask = 0; mask < total; ++mask) {
        const int size = __builtin_popcountll(mask);
        if (size >= best) continue;
        bool covers = true;
        for (const auto& m : gens) {
            bool hit = false;
            for (std::size_t v : m.support())
                if (mask & (std::size_t(1) << v)) { hit = true; break; }
            if (!hit) { covers = false; break; }
        }
        if (covers) best = size;
    }
    return best;
}

namespace detail {

/// The series monomial of a unit-coefficient monomial generator; throws
/// NotMonomial otherwise.
template <typename K>
Monomial unit_monomial_of(const SeriesElement<K>& g) {
    if (g.coeffs().size() != 1) throw NotMonomial("generator is not a single monomial");
    const auto& [m, c] = *g.coeffs().begin();
    if (!c.is_one()) throw NotMonomial("generator coefficient is not 1");
    return m;
}

template <typename K>
std::vector<Monomial> unit_monomials(const std::vector<SeriesElement<K>>& gens) {
    std::vector<Monomial> out;
    out.reserve(gens.size());
    for (const auto& g : gens) out.push_back(unit_monomial_of(g));
    return out;
}

}  // namespace detail

/// Height of the monomial ideal over the component's residue series ring.
template <typename K>
int height_monomial(const std::vector<SeriesElement<K>>& gens, const ExtIdealDesc<K>& component) {
    for (const auto& g : gens)
        if (g.ctx() != component.ctx) throw ContextMismatch("generator outside the component context");
    return monomial_height(detail::unit_monomials(gens), component.ctx->nvars());
}

template <typename K>
struct MonomialPrime {
    std::vector<std::size_t> vars;  // MS + (X_v : v in vars)
    std::size_t height() const { return vars.size(); }

    bool contains_monomial(const Monomial& m) const {
        for (std::size_t v : m.support())
            if (std::find(vars.begin(), vars.end(), v) != vars.end()) return true;
        return false;
    }
    bool operator==(const MonomialPrime& o) const { return vars == o.vars; }
    bool operator<(const MonomialPrime& o) const {
        if (vars.size() != o.vars.size()) return vars.size() < o.vars.size();
        return vars < o.vars;
    }
};

/// Complete set of associated primes of the monomial ideal over a component,
/// by colon enumeration against witnesses below the exponent box.
template <typename K>
std::vector<MonomialPrime<K>> associated_primes_monomial(const std::vector<SeriesElement<K>>& gens,
                                                         const ExtIdealDesc<K>& component) {
    const std::vector<Monomial> ms = detail::unit_monomials(gens);
    const std::size_t n = component.ctx->nvars();
    for (const auto& m : ms)
        if (m.is_one()) throw NotProper("a unit generator makes the ideal improper");
    std::set<MonomialPrime<K>> primes;
    if (ms.empty()) return {};

    std::vector<int> box(n, 0);
    for (const auto& m : ms)
        for (std::size_t v = 0; v < n; ++v) box[v] = std::max(box[v], m[v]);

    std::vector<int> e(n, 0);
    auto visit = [&](const Monomial& a) {
        // colon (I : a) of the monomial ideal
        std::vector<Monomial> colon;
        colon.reserve(ms.size());
        for (const auto& m : ms) colon.push_back(m / gcd(m, a));
        // minimal generators
        std::vector<Monomial> minimal;
        for (std::size_t i = 0; i < colon.size(); ++i) {
            bool redundant = false;
            for (std::size_t j = 0; j < colon.size(); ++j) {
                if (i == j) continue;
                if (colon[j].divides(colon[i]) && !(colon[i] == colon[j] && j > i)) {
                    redundant = true;
                    break;
                }
            }
            if (!redundant) minimal.push_back(colon[i]);
        }
        // a itself in I gives colon (1): not prime
        for (const auto& m : minimal)
            if (m.is_one()) return;
        // prime iff generated by plain variables
        std::vector<std::size_t> vars;
        for (const auto& m : minimal) {
            if (m.degree() != 1) return;
            vars.push_back(m.support()[0]);
        }
        std::sort(vars.begin(), vars.end());
        primes.insert(MonomialPrime<K>{vars});
    };
    auto rec = [&](auto&& self, std::size_t pos) -> void {
        if (pos == n) {
            visit(Monomial(e));
            return;
        }
        for (e[pos] = 0; e[pos] <= box[pos]; ++e[pos]) self(self, pos + 1);
        e[pos] = 0;
    };
    rec(rec, 0);
    return {primes.begin(), primes.end()};
}

/// Inclusion-minimal variable covers: the minimal primes over the monomial
/// ideal, enumerated independently of the colon route.
template <typename K>
std::vector<MonomialPrime<K>> minimal_primes_monomial(const std::vector<SeriesElement<K>>& gens,
                                                      const ExtIdealDesc<K>& component) {
    const std::vector<Monomial> ms = detail::unit_monomials(gens);
    const std::size_t n = component.ctx->nvars();
    std::vector<std::vector<std::size_t>> covers;
    const std::size_t total = std::size_t(1) << n;
    for (std::size_t mask = 0; mask < total; ++mask) {
        bool cov = true;
        for (const auto& m : ms) {
            bool hit = false;
            for (std::size_t v : m.support())
                if (mask & (std::size_t(1) << v)) { hit = true; break; }
            if (!hit) { cov = false; break; }
        }
        if (!cov) continue;
        std::vector<std::size_t> vars;
        for (std::size_t v = 0; v < n; ++v)
            if (mask & (std::size_t(1) << v)) vars.push_back(v);
        covers.push_back(std::move(vars));
    }
    std::vector<MonomialPrime<K>> out;
    for (const auto& a : covers) {
        bool minimal = true;
        for (const auto& b : covers) {
            if (a == b) continue;
            if (std::includes(a.begin(), a.end(), b.begin(), b.end())) { minimal = false; break; }
        }
        if (minimal) out.push_back(MonomialPrime<K>{a});
    }
    std::sort(out.begin(), out.end());
    return out;
}

template <typename K>
struct UnmixedComponentReport {
    std::size_t component = 0;
    int ideal_height = 0;
    std::vector<MonomialPrime<K>> associated;
    std::vector<MonomialPrime<K>> minimal;
    bool unmixed = false;
    bool max_equals_min = false;
};

template <typename K>
struct UnmixednessReport {
    std::vector<UnmixedComponentReport<K>> components;
    bool all_unmixed = true;
};

/// Every prime divisor of a height-generated monomial ideal has the ideal's
/// height, on every component; rejects non-height-generated input.
template <typename K>
UnmixednessReport<K> verify_unmixed(const std::vector<SeriesElement<K>>& gens,
                                    const std::vector<ExtIdealDesc<K>>& components) {
    UnmixednessReport<K> rep;
    for (std::size_t ci = 0; ci < components.size(); ++ci) {
        const auto& E = components[ci];
        UnmixedComponentReport<K> cr;
        cr.component = ci;
        cr.ideal_height = height_monomial(gens, E);
        if (static_cast<std::size_t>(cr.ideal_height) != gens.size())
            throw NotHeightGenerated("component " + std::to_string(ci) + ": height " +
                                     std::to_string(cr.ideal_height) + " but " +
                                     std::to_string(gens.size()) + " generators");
        cr.associated = associated_primes_monomial(gens, E);
        cr.minimal = minimal_primes_monomial(gens, E);
        cr.unmixed = true;
        for (const auto& p : cr.associated)
            if (static_cast<int>(p.height()) != cr.ideal_height) cr.unmixed = false;
        cr.max_equals_min = (cr.associated == cr.minimal);
        rep.all_unmixed = rep.all_unmixed && cr.unmixed && cr.max_equals_min;
        rep.components.push_back(std::move(cr));
    }
    return rep;
}

// --- classical grade --------------------------------------------------------

template <typename K>
struct CgradeReport {
    std::size_t grade = 0;
    int height = 0;
    std::vector<SeriesElement<K>> sequence;
    RegularSequenceReport<K> certificate;
    bool grade_equals_height = false;
};

/// Greedy maximal regular sequence inside a monomial-slice ideal, each step
/// certified on the truncated quotient; candidates are generators and then
/// subset sums, mirroring prime avoidance.
template <typename K>
CgradeReport<K> cgrade(const FgIdeal<K>& I, const std::vector<ExtIdealDesc<K>>& components) {
    CgradeReport<K> rep;
    if (I.gens.empty()) {
        rep.grade_equals_height = true;
        return rep;
    }
    std::vector<Monomial> ms;
    try {
        ms = detail::unit_monomials(I.gens);
    } catch (const NotMonomial&) {
        throw NotSupportedSlice("classical grade needs unit-coefficient monomial generators");
    }
    int height = monomial_height(ms, I.ctx->nvars());
    for (const auto& E : components) height = std::min(height, height_monomial(I.gens, E));
    rep.height = height;

    SubringHandle<K> window = I.joined_subring();
    TruncatedModule<K> mod(I.ctx, window);

    // candidate elements of I: single generators, then subset sums
    std::vector<SeriesElement<K>> candidates;
    const std::size_t g = I.gens.size();
    for (std::size_t size = 1; size <= g; ++size) {
        for (std::size_t mask = 1; mask < (std::size_t(1) << g); ++mask) {
            if (static_cast<std::size_t>(__builtin_popcountll(mask)) != size) continue;
            SeriesElement<K> sum = series_zero(I.ctx, window);
            for (std::size_t i = 0; i < g; ++i)
                if (mask & (std::size_t(1) << i)) sum = sum + I.gens[i];
            candidates.push_back(std::move(sum));
        }
    }

    std::vector<SeriesElement<K>> seq;
    while (static_cast<int>(seq.size()) < height) {
        Echelon<K> span = mod.span_of_ideal(seq);
        bool found = false;
        for (const auto& cand : candidates) {
            if (span.contains(to_sparse(mod.to_vec(cand)))) continue;  // already in the ideal
            auto step = detail::regular_step(mod, span, cand);
            if (step.certified) {
                seq.push_back(cand);
                found = true;
                break;
            }
        }
        if (!found) break;
    }
    rep.grade = seq.size();
    rep.sequence = seq;
    rep.certificate = is_regular_sequence(I.ctx, seq);
    rep.grade_equals_height = (static_cast<int>(rep.grade) == rep.height) &&
                              rep.certificate.all_certified();
    return rep;
}

// --- prime-avoidance replacement --------------------------------------------

/// Certified regular generators h_1..h_t for a height-generated ideal,
/// searching each coset f + sum g_j f_j over a fixed small space.
template <typename K>
std::pair<FgIdeal<K>, RegularSequenceReport<K>> replace_with_regular(
    const FgIdeal<K>& I, const std::vector<ExtIdealDesc<K>>& components) {
    if (I.gens.empty())
        return {I, RegularSequenceReport<K>{{}, I.ctx->trunc, {}}};

    SubringHandle<K> window = I.joined_subring();
    TruncatedModule<K> mod(I.ctx, window);
    detail::reject_unit_generators(mod, I.gens);

    // target length: the height, certified per component on residue images
    std::optional<int> height;
    {
        bool monomial_images = true;
        int h = std::numeric_limits<int>::max();
        for (const auto& E : components) {
            std::vector<Monomial> img;
            for (const auto& f : I.gens) {
                SeriesElement<K> r = residue_map(f, E);
                if (r.is_zero()) continue;
                if (r.coeffs().size() != 1) { monomial_images = false; break; }
                img.push_back(r.coeffs().begin()->first);
            }
            if (!monomial_images) break;
            h = std::min(h, monomial_height(img, I.ctx->nvars()));
        }
        if (monomial_images && !components.empty()) height = h;
    }
    if (!height) {
        auto rep = is_regular_sequence(I.ctx, I.gens);
        if (rep.all_certified()) return {I, std::move(rep)};
        throw NotHeightGenerated("height certification unavailable outside the monomial slice");
    }
    const std::size_t t = static_cast<std::size_t>(*height);
    if (t == 0 && !I.gens.empty())
        throw NotHeightGenerated("nonzero ideal of height 0 cannot be height-generated");

    // addable coefficients: 0, +-1, factor idempotents; times 1 or X_i
    AlgebraPtr<K> A = window.algebra();
    std::vector<AlgebraElement<K>> coeffs{A->one(), -A->one()};
    for (const auto& e : A->idempotents()) coeffs.push_back(e);
    std::vector<SeriesElement<K>> multipliers;
    for (const auto& c : coeffs) {
        multipliers.push_back(series_constant(I.ctx, window, c));
        for (std::size_t v = 0; v < I.ctx->nvars(); ++v)
            multipliers.push_back(series_term(I.ctx, window, c, Monomial::var(I.ctx->nvars(), v)));
    }

    std::vector<SeriesElement<K>> accepted;
    std::vector<SeriesElement<K>> remaining = I.gens;
    while (accepted.size() < t) {
        Echelon<K> span = mod.span_of_ideal(accepted);
        std::optional<SeriesElement<K>> chosen;
        std::size_t chosen_base = remaining.size();
        // 1. a remaining generator as-is, lowest index first
        for (std::size_t k = 0; k < remaining.size() && !chosen; ++k) {
            if (span.contains(to_sparse(mod.to_vec(remaining[k])))) continue;
            if (detail::regular_step(mod, span, remaining[k]).certified) {
                chosen = remaining[k];
                chosen_base = k;
            }
        }
        // 2. coset search: f_k + g * other, one addend at a time, then pairs
        if (!chosen) {
            std::vector<SeriesElement<K>> addable;
            auto collect_addable = [&](std::size_t skip) {
                addable.clear();
                for (std::size_t j = 0; j < remaining.size(); ++j)
                    if (j != skip) addable.push_back(remaining[j]);
                for (const auto& h : accepted) addable.push_back(h);
            };
            for (std::size_t k = 0; k < remaining.size() && !chosen; ++k) {
                collect_addable(k);
                for (std::size_t j = 0; j < addable.size() && !chosen; ++j)
                    for (const auto& mult : multipliers) {
                        SeriesElement<K> cand = remaining[k] + mult * addable[j];
                        if (cand.is_zero()) continue;
                        if (span.contains(to_sparse(mod.to_vec(cand)))) continue;
                        if (detail::regular_step(mod, span, cand).certified) {
                            chosen = cand;
                            chosen_base = k;
                            break;
                        }
                    }
                for (std::size_t j1 = 0; j1 < addable.size() && !chosen; ++j1)
                    for (std::size_t j2 = j1 + 1; j2 < addable.size() && !chosen; ++j2)
                        for (const auto& m1 : multipliers) {
                            for (const auto& m2 : multipliers) {
                                SeriesElement<K> cand =
                                    remaining[k] + m1 * addable[j1] + m2 * addable[j2];
                                if (cand.is_zero()) continue;
                                if (span.contains(to_sparse(mod.to_vec(cand)))) continue;
                                if (detail::regular_step(mod, span, cand).certified) {
                                    chosen = cand;
                                    chosen_base = k;
                                    break;
                                }
                            }
                            if (chosen) break;
                        }
            }
        }
        if (!chosen)
            throw SearchExhausted("no regular element found in the prime-avoidance search space");
        accepted.push_back(*chosen);
        if (chosen_base < remaining.size())
            remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(chosen_base));
    }

    FgIdeal<K> J = make_ideal(I.ctx, accepted);
    // mutual generation at truncation
    for (const auto& g : I.gens)
        if (!truncated_membership(g, J))
            throw NotHeightGenerated(
                "replacement produced a strictly smaller ideal; input is not height-generated");
    for (const auto& h : accepted)
        if (!truncated_membership(h, I))
            throw InternalSelfCheck("replacement left the original ideal");
    return {J, is_regular_sequence(I.ctx, accepted)};
}

// --- prime chains and catenarity ---------------------------------------------

/// Membership in MS + (X_v : v in added): coefficients on monomials avoiding
/// the added variables must lie in M.
template <typename K>
bool chain_ideal_membership(const SeriesElement<K>& f, const ExtIdealDesc<K>& E,
                            const std::vector<std::size_t>& added) {
    if (f.ctx() != E.ctx) throw IncompatibleIdeal("series and ideal from different contexts");
    const MaximalIdealDesc<K> M = E.restrict_to(f.subring());
    AlgebraPtr<K> A = f.subring().algebra();
    std::optional<Echelon<K>> span;
    if (M.kind != MaxIdealKind::FieldZero) span = ideal_span(A, M.generators);
    for (const auto& [m, c] : f.coeffs()) {
        bool in_added = false;
        for (std::size_t v : m.support())
            if (std::find(added.begin(), added.end(), v) != added.end()) { in_added = true; break; }
        if (in_added) continue;
        const bool ok = span ? in_ideal(c, *span) : c.is_zero();
        if (!ok) return false;
    }
    return true;
}

template <typename K>
struct ChainLink {
    std::vector<std::size_t> added;  // variables adjoined so far
    bool proper_step = true;         // next variable escapes the current ideal
    bool quotient_ok = true;         // quotient presents as a residue series ring
};

template <typename K>
struct PrimeChainReport {
    std::vector<ChainLink<K>> links;
    bool catenary_check = true;
    std::size_t length = 0;
};

namespace detail {

/// All saturated chains of variable subsets between bot and top have length
/// |top| - |bot|; chains are enumerated exhaustively and saturation of each
/// step is decided by searching for a strictly intermediate subset.
inline bool saturated_chains_equal_length(const std::vector<std::size_t>& bot,
                                          const std::vector<std::size_t>& top) {
    std::vector<std::size_t> extra;
    for (std::size_t v : top)
        if (std::find(bot.begin(), bot.end(), v) == bot.end()) extra.push_back(v);
    const std::size_t expected = extra.size();

    // every chain is an ordered partition of `extra` into nonempty blocks
    std::vector<std::size_t> saturated_lengths;
    std::vector<std::vector<std::size_t>> blocks;
    auto step_has_intermediate = [](const std::vector<std::size_t>& block) {
        // an intermediate prime exists iff a proper nonempty subset of the
        // added block does
        const std::size_t m = block.size();
        for (std::size_t mask = 1; mask + 1 < (std::size_t(1) << m); ++mask) return true;
        return false;
    };
    auto rec = [&](auto&& self, std::vector<std::size_t> rest) -> void {
        if (rest.empty()) {
            bool saturated = true;
            for (const auto& b : blocks)
                if (step_has_intermediate(b)) saturated = false;
            if (saturated) saturated_lengths.push_back(blocks.size());
            return;
        }
        const std::size_t m = rest.size();
        for (std::size_t mask = 1; mask < (std::size_t(1) << m); ++mask) {
            std::vector<std::size_t> block, next;
            for (std::size_t i = 0; i < m; ++i)
                (mask & (std::size_t(1) << i) ? block : next).push_back(rest[i]);
            blocks.push_back(std::move(block));
            self(self, next);
            blocks.pop_back();
        }
    };
    rec(rec, extra);
    if (saturated_lengths.empty()) return expected == 0;
    for (std::size_t len : saturated_lengths)
        if (len != expected) return false;
    return true;
}

}  // namespace detail

/// The chain MS < MS+(X_1) < ... < MS+(X_1..X_n), each link certified proper
/// at truncation and each quotient certified to present as a residue-field
/// series ring in the remaining variables.
template <typename K>
PrimeChainReport<K> prime_chain(const ExtIdealDesc<K>& E, std::size_t n) {
    const ContextPtr<K>& ctx = E.ctx;
    if (n > ctx->nvars())
        throw UnsupportedPresentation("chain length exceeds the number of series variables");
    PrimeChainReport<K> rep;
    SubringHandle<K> window = E.window;

    for (std::size_t i = 0; i <= n; ++i) {
        ChainLink<K> link;
        for (std::size_t v = 0; v < i; ++v) link.added.push_back(v);
        if (i < n) {
            SeriesElement<K> xnext = series_term(ctx, window, window.algebra()->one(),
                                                 Monomial::var(ctx->nvars(), i));
            link.proper_step = !chain_ideal_membership(xnext, E, link.added);
        }
        // quotient of the current link: residue series ring in the remaining
        // variables (a residue field when none remain)
        if (i < ctx->nvars()) {
            std::vector<std::string> rest(ctx->vars.begin() + static_cast<std::ptrdiff_t>(i),
                                          ctx->vars.end());
            auto sub_ctx = SeriesContext<K>::create(ctx->family, rest, ctx->trunc);
            auto sub_primes = minimal_primes(sub_ctx, window);
            bool ok = false;
            const auto want = detail::max_ideal_path(E.desc);
            for (const auto& P : sub_primes) {
                if (detail::max_ideal_path(P.desc) != want) continue;
                ok = quotient_presentation(sub_ctx, P).identity_holds;
            }
            link.quotient_ok = ok;
        } else {
            ResidueMap<K> pi = residue_field(window.algebra(), E.restrict_to(window));
            link.quotient_ok = pi.residue->dim() >= 1;
        }
        rep.links.push_back(std::move(link));
    }
    rep.length = n;

    if (ctx->nvars() <= 4) {
        std::vector<std::size_t> all;
        for (std::size_t v = 0; v < ctx->nvars(); ++v) all.push_back(v);
        rep.catenary_check = detail::saturated_chains_equal_length({}, all);
        if (ctx->nvars() >= 1)
            rep.catenary_check =
                rep.catenary_check && detail::saturated_chains_equal_length({0}, all);
    }
    return rep;
}

}  // namespace artin
