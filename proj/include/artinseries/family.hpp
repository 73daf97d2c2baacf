/// Directed families of Artinian subrings: a base algebra, a generator
/// stream, and the lattice of finitely generated subrings it spans. Every
/// adjoined generator is integral over the base; each finite index set yields
/// a cached Artinian presentation.
#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <vector>

#include "artinseries/algebra.hpp"

namespace artin {

/// Name-based polynomial, instantiable over any ambient variable list.
struct SymTerm {
    Rational coef;
    std::vector<std::pair<std::string, int>> powers;
};
using SymPoly = std::vector<SymTerm>;

inline SymPoly sym_poly(std::initializer_list<SymTerm> ts) { return SymPoly(ts); }

template <typename K>
Polynomial<K> instantiate(const SymPoly& sp, const std::vector<std::string>& vars,
                          const FieldContext<K>& field) {
    std::vector<typename Polynomial<K>::Term> ts;
    for (const auto& t : sp) {
        Monomial m(vars.size());
        for (const auto& [name, e] : t.powers) {
            int idx = detail::resolve_symbol(name, vars);
            if (idx < 0) throw AmbientMismatch("symbolic polynomial references unknown '" + name + "'");
            m[static_cast<std::size_t>(idx)] += e;
        }
        ts.emplace_back(std::move(m), field.from_rational(t.coef));
    }
    return Polynomial<K>::from_terms(vars.size(), std::move(ts));
}

struct StreamItem {
    std::string var;
    std::vector<SymPoly> relations;  // reference only base variables and `var`
};

/// Produces the generators that define R over R_0. Tower streams adjoin
/// irreducible minimal polynomials instead of monomial-style relations.
class GeneratorStream {
public:
    virtual ~GeneratorStream() = default;
    virtual std::string name() const = 0;
    virtual bool finite() const = 0;
    virtual std::size_t length() const { return 0; }
    virtual StreamItem produce(std::size_t i) const = 0;
    virtual bool tower() const { return false; }
};

class TrivialStream final : public GeneratorStream {
public:
    std::string name() const override { return "trivial"; }
    bool finite() const override { return true; }
    StreamItem produce(std::size_t) const override {
        throw StreamFinite("trivial stream has no generators");
    }
};

/// Z_i with Z_i^2 = 0 and Y Z_i = 0 over Q[Y]/(Y^2).
class ExampleRingStream final : public GeneratorStream {
public:
    std::string name() const override { return "example-ring"; }
    bool finite() const override { return false; }
    StreamItem produce(std::size_t i) const override {
        const std::string z = "Z" + std::to_string(i);
        SymPoly zsq{SymTerm{Rational(1), {{z, 2}}}};
        SymPoly yz{SymTerm{Rational(1), {{"Y", 1}, {z, 1}}}};
        return StreamItem{z, {zsq, yz}};
    }
};

/// Adjoins square roots of successive primes over Q.
class QuadraticTowerStream final : public GeneratorStream {
public:
    std::string name() const override { return "quadratic-tower"; }
    bool finite() const override { return false; }
    bool tower() const override { return true; }
    StreamItem produce(std::size_t i) const override {
        const std::string t = "t" + std::to_string(i);
        SymPoly mp{SymTerm{Rational(1), {{t, 2}}}, SymTerm{Rational(-nth_prime(i)), {}}};
        return StreamItem{t, {mp}};
    }

    static long long nth_prime(std::size_t i) {
        std::vector<long long> primes;
        long long c = 2;
        while (primes.size() <= i) {
            bool ok = true;
            for (long long p : primes) {
                if (p * p > c) break;
                if (c % p == 0) { ok = false; break; }
            }
            if (ok) primes.push_back(c);
            ++c;
        }
        return primes[i];
    }
};

using IndexSet = std::vector<std::size_t>;

inline IndexSet canonical_index_set(IndexSet idx) {
    std::sort(idx.begin(), idx.end());
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    return idx;
}

/// The base-ring presentation, mirroring the scenario file forms.
struct BaseSpec {
    enum class Kind { Plain, Product, Tower };
    Kind kind = Kind::Plain;
    std::vector<std::string> vars;
    std::vector<SymPoly> relations;  // Plain
    std::vector<SymPoly> minpolys;   // Tower
    std::vector<BaseSpec> factors;   // Product

    static BaseSpec prime_field() { return BaseSpec{Kind::Tower, {}, {}, {}, {}}; }
};

template <typename K>
class DirectedFamily : public std::enable_shared_from_this<DirectedFamily<K>> {
public:
    static std::shared_ptr<const DirectedFamily> create(FieldContext<K> field, BaseSpec base,
                                                        std::shared_ptr<const GeneratorStream> stream) {
        auto F = std::shared_ptr<DirectedFamily>(new DirectedFamily());
        F->field_ = field;
        F->base_ = std::move(base);
        F->stream_ = std::move(stream);
        if (!F->stream_->finite() && F->base_.kind == BaseSpec::Kind::Product)
            throw UnsupportedPresentation("generator streams over product bases are not supported");
        if (F->stream_->tower() && F->base_.kind != BaseSpec::Kind::Tower)
            throw UnsupportedPresentation("tower streams need a tower base");
        F->subring({});  // validate the base eagerly
        return F;
    }

    const FieldContext<K>& field() const { return field_; }
    const GeneratorStream& stream() const { return *stream_; }

    /// The Artinian algebra generated over the base by the indexed stream
    /// generators. Deterministic; concurrent first calls race benignly on
    /// identical data.
    AlgebraPtr<K> subring(IndexSet idx) const {
        idx = canonical_index_set(std::move(idx));
        {
            std::lock_guard<std::mutex> lock(mutex_);
            auto it = cache_.find(idx);
            if (it != cache_.end()) return it->second;
        }
        AlgebraPtr<K> A = build(idx);
        std::lock_guard<std::mutex> lock(mutex_);
        auto [it, inserted] = cache_.emplace(idx, std::move(A));
        return it->second;
    }

    /// Variable list of subring(idx), base variables first.
    std::vector<std::string> subring_vars(const IndexSet& idx) const {
        std::vector<std::string> vars = base_.vars;
        for (std::size_t i : idx) vars.push_back(stream_->produce(i).var);
        return vars;
    }

    /// Coordinate-respecting embedding along idx_from <= idx_to.
    AlgebraElement<K> embed(const AlgebraElement<K>& x, const IndexSet& from,
                            const IndexSet& to) const {
        const IndexSet cfrom = canonical_index_set(from);
        const IndexSet cto = canonical_index_set(to);
        if (!std::includes(cto.begin(), cto.end(), cfrom.begin(), cfrom.end()))
            throw FamilyMismatch("embedding needs an inclusion of index sets");
        AlgebraPtr<K> A = subring(cfrom), B = subring(cto);
        if (x.owner != A) throw AmbientMismatch("element does not live in subring(from)");
        if (A == B) return x;
        if (A->is_product() || B->is_product())
            throw UnsupportedPresentation("product subrings only embed along equal index sets");
        const auto vf = subring_vars(cfrom);
        const auto vt = subring_vars(cto);
        std::vector<std::size_t> pos(vf.size());
        for (std::size_t i = 0; i < vf.size(); ++i) {
            int j = detail::resolve_symbol(vf[i], vt);
            if (j < 0) throw InternalSelfCheck("subring variable lost under enlargement");
            pos[i] = static_cast<std::size_t>(j);
        }
        std::vector<typename Polynomial<K>::Term> ts;
        for (std::size_t b = 0; b < A->dim(); ++b) {
            if (is_zero(x.coords[b])) continue;
            const Monomial& m = A->basis()[b];
            Monomial mt(vt.size());
            for (std::size_t i = 0; i < vf.size(); ++i) mt[pos[i]] = m[i];
            ts.emplace_back(std::move(mt), x.coords[b]);
        }
        return B->from_polynomial(Polynomial<K>::from_terms(vt.size(), std::move(ts)));
    }

    const BaseSpec& base_spec() const { return base_; }

private:
    DirectedFamily() = default;

    AlgebraPtr<K> build_base(const BaseSpec& spec) const {
        switch (spec.kind) {
            case BaseSpec::Kind::Plain: {
                std::vector<Polynomial<K>> rels;
                rels.reserve(spec.relations.size());
                for (const auto& sp : spec.relations)
                    rels.push_back(instantiate(sp, spec.vars, field_));
                return ArtinianAlgebra<K>::present(field_, spec.vars, std::move(rels));
            }
            case BaseSpec::Kind::Tower: {
                std::vector<Polynomial<K>> mps;
                mps.reserve(spec.minpolys.size());
                for (const auto& sp : spec.minpolys)
                    mps.push_back(instantiate(sp, spec.vars, field_));
                return ArtinianAlgebra<K>::present_tower(field_, spec.vars, std::move(mps));
            }
            case BaseSpec::Kind::Product: {
                std::vector<AlgebraPtr<K>> factors;
                factors.reserve(spec.factors.size());
                for (const auto& f : spec.factors) factors.push_back(build_base(f));
                return ArtinianAlgebra<K>::product(std::move(factors));
            }
        }
        throw InternalSelfCheck("unreachable base kind");
    }

    AlgebraPtr<K> build(const IndexSet& idx) const {
        if (idx.empty()) return build_base(base_);
        std::vector<std::string> vars = base_.vars;
        std::vector<SymPoly> rels = stream_->tower() ? base_.minpolys : base_.relations;
        for (std::size_t i : idx) {
            StreamItem item = stream_->produce(i);
            vars.push_back(item.var);
            for (auto& r : item.relations) rels.push_back(std::move(r));
        }
        std::vector<Polynomial<K>> polys;
        polys.reserve(rels.size());
        for (const auto& sp : rels) polys.push_back(instantiate(sp, vars, field_));
        return stream_->tower() ? ArtinianAlgebra<K>::present_tower(field_, vars, std::move(polys))
                                : ArtinianAlgebra<K>::present(field_, vars, std::move(polys));
    }

    FieldContext<K> field_;
    BaseSpec base_;
    std::shared_ptr<const GeneratorStream> stream_;
    mutable std::mutex mutex_;
    mutable std::map<IndexSet, AlgebraPtr<K>> cache_;
};

template <typename K>
using FamilyPtr = std::shared_ptr<const DirectedFamily<K>>;

template <typename K>
struct SubringHandle {
    FamilyPtr<K> family;
    IndexSet idx;

    AlgebraPtr<K> algebra() const { return family->subring(idx); }

    bool operator==(const SubringHandle& o) const { return family == o.family && idx == o.idx; }
};

template <typename K>
SubringHandle<K> make_handle(FamilyPtr<K> family, IndexSet idx) {
    return SubringHandle<K>{std::move(family), canonical_index_set(std::move(idx))};
}

template <typename K>
SubringHandle<K> join(const SubringHandle<K>& a, const SubringHandle<K>& b) {
    if (a.family != b.family) throw FamilyMismatch("join needs handles from one family");
    IndexSet merged = a.idx;
    merged.insert(merged.end(), b.idx.begin(), b.idx.end());
    return make_handle(a.family, std::move(merged));
}

/// Monic polynomial over the base-field coordinates that the element
/// satisfies; the integrality witness for the extension over R_0.
template <typename K>
Polynomial<K> integrality_witness(const FamilyPtr<K>& family, const IndexSet& idx,
                                  const AlgebraElement<K>& element) {
    if (element.owner != family->subring(idx))
        throw FamilyMismatch("element does not live in the requested subring");
    return minimal_polynomial(element);
}

struct ChainStep {
    bool strict_in_ring = false;    // r_{i+1} outside the window ideal
    bool stable_in_larger = false;  // same verdict after enlarging the window
};

/// Ring-level strictness of the chain (r_0) < (r_0,r_1) < ... inside windows
/// of the family; each step is re-checked in a strictly larger window.
template <typename K>
std::vector<ChainStep> chain_strictness_in_ring(const FamilyPtr<K>& family,
                                                const std::vector<std::string>& generator_names,
                                                std::size_t t) {
    std::vector<ChainStep> steps;
    for (std::size_t i = 0; i + 1 <= t; ++i) {
        if (i + 1 >= generator_names.size())
            throw StreamFinite("chain needs " + std::to_string(t + 1) + " designated generators");
        auto verdict = [&](const IndexSet& w) {
            AlgebraPtr<K> A = family->subring(w);
            std::vector<AlgebraElement<K>> gens;
            for (std::size_t k = 0; k <= i; ++k) gens.push_back(A->parse(generator_names[k]));
            AlgebraElement<K> next = A->parse(generator_names[i + 1]);
            return !in_ideal(next, ideal_span(A, gens));
        };
        // window large enough for r_0..r_{i+1}; grown if the designated
        // elements mention later stream generators
        IndexSet window;
        for (std::size_t k = 0; k <= i + 1; ++k) window.push_back(k);
        ChainStep step;
        for (int attempt = 0;; ++attempt) {
            try {
                step.strict_in_ring = verdict(window);
                break;
            } catch (const ParseError&) {
                if (attempt >= 4) throw;
                for (int g = 0; g < 4; ++g) window.push_back(window.back() + 1);
            }
        }
        IndexSet larger = window;
        larger.push_back(larger.back() + 1);
        step.stable_in_larger = (verdict(larger) == step.strict_in_ring);
        steps.push_back(step);
    }
    return steps;
}

// --- built-in families over Q ---------------------------------------------

inline FamilyPtr<Rational> example_ring_family() {
    BaseSpec base;
    base.kind = BaseSpec::Kind::Plain;
    base.vars = {"Y"};
    base.relations = {SymPoly{SymTerm{Rational(1), {{"Y", 2}}}}};
    return DirectedFamily<Rational>::create(FieldContext<Rational>{}, std::move(base),
                                            std::make_shared<ExampleRingStream>());
}

inline FamilyPtr<Rational> quadratic_tower_family() {
    return DirectedFamily<Rational>::create(FieldContext<Rational>{}, BaseSpec::prime_field(),
                                            std::make_shared<QuadraticTowerStream>());
}

inline FamilyPtr<Rational> qxq_family() {
    BaseSpec base;
    base.kind = BaseSpec::Kind::Product;
    base.factors = {BaseSpec::prime_field(), BaseSpec::prime_field()};
    return DirectedFamily<Rational>::create(FieldContext<Rational>{}, std::move(base),
                                            std::make_shared<TrivialStream>());
}

}  // namespace artin
