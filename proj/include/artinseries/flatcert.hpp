/// The equational flatness criterion as an executable certificate: from a
/// relation sum r_i m_i = 0 over a window, produce b_ij in the window algebra
/// and series y_j with sum_i r_i b_ij = 0 and m_i = sum_j b_ij y_j. Also the
/// lying-over survival check and a deterministic relation sampler.
#pragma once

#include <cstdint>
#include <vector>

#include "artinseries/idealkit.hpp"

namespace artin {

/// Deterministic 64-bit generator; the seed fully determines every sample.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t below(std::uint64_t bound) { return bound ? next() % bound : 0; }

    long long int_in(long long lo, long long hi) {
        return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

private:
    std::uint64_t state_;
};

template <typename K>
struct RelationInstance {
    ContextPtr<K> ctx;
    SubringHandle<K> window;
    std::vector<AlgebraElement<K>> r;
    std::vector<SeriesElement<K>> m;
};

template <typename K>
bool relation_holds(const RelationInstance<K>& inst) {
    if (inst.r.size() != inst.m.size() || inst.r.empty()) return false;
    SeriesElement<K> acc = series_zero(inst.ctx, inst.window);
    for (std::size_t i = 0; i < inst.r.size(); ++i)
        acc = acc + series_constant(inst.ctx, inst.window, inst.r[i]) * inst.m[i];
    return acc.is_zero();
}

template <typename K>
struct FlatCertificate {
    SubringHandle<K> beta;
    std::vector<std::vector<AlgebraElement<K>>> b;  // b[i][j], entries over beta
    std::vector<SeriesElement<K>> y;                // y[j]
};

/// Independent re-check of both certificate identities by direct arithmetic.
template <typename K>
bool verify_certificate(const RelationInstance<K>& inst, const FlatCertificate<K>& cert) {
    const std::size_t n = inst.r.size();
    const std::size_t s = cert.y.size();
    AlgebraPtr<K> A = cert.beta.algebra();
    const auto& fam = inst.ctx->family;
    for (std::size_t j = 0; j < s; ++j) {
        AlgebraElement<K> acc = A->zero();
        for (std::size_t i = 0; i < n; ++i) {
            AlgebraElement<K> ri = fam->embed(inst.r[i], inst.window.idx, cert.beta.idx);
            acc = acc + ri * cert.b[i][j];
        }
        if (!acc.is_zero()) return false;
    }
    for (std::size_t i = 0; i < n; ++i) {
        SeriesElement<K> acc = series_zero(inst.ctx, cert.beta);
        for (std::size_t j = 0; j < s; ++j)
            acc = acc + series_constant(inst.ctx, cert.beta, cert.b[i][j]) * cert.y[j];
        if (!acc.equals(inst.m[i])) return false;
    }
    return true;
}

/// Produces a certificate for a verified relation. The syzygies of r over the
/// joined window are a base-field kernel computation; the y_j then solve the
/// coefficient systems degree by degree. Unsolvability would contradict the
/// flatness of the window's series ring and is raised as a self-check
/// failure.
template <typename K>
FlatCertificate<K> solve(const RelationInstance<K>& inst) {
    if (inst.r.empty() || inst.r.size() != inst.m.size())
        throw ConstraintViolated("relation needs matching nonempty r and m");
    if (!relation_holds(inst))
        throw ConstraintViolated("sum r_i m_i != 0 at truncation");

    SubringHandle<K> beta = inst.window;
    for (const auto& mi : inst.m) beta = join(beta, mi.subring());
    AlgebraPtr<K> A = beta.algebra();
    const auto& fam = inst.ctx->family;
    const std::size_t n = inst.r.size();
    const std::size_t dim = A->dim();

    std::vector<AlgebraElement<K>> r;
    r.reserve(n);
    for (const auto& ri : inst.r) r.push_back(fam->embed(ri, inst.window.idx, beta.idx));

    // kernel of (x_1..x_n) -> sum r_i x_i as a map of K-spaces
    std::vector<Vec<K>> cols;
    cols.reserve(n * dim);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t bidx = 0; bidx < dim; ++bidx)
            cols.push_back(A->mul_coords(r[i].coords, A->basis_element(bidx).coords));
    LinearSolver<K> syz(std::move(cols), dim);
    const auto& kernel = syz.kernel_basis();
    const std::size_t s = kernel.size();

    FlatCertificate<K> cert;
    cert.beta = beta;
    cert.b.assign(n, {});
    for (std::size_t i = 0; i < n; ++i) {
        cert.b[i].reserve(s);
        for (std::size_t j = 0; j < s; ++j) {
            Vec<K> coords(kernel[j].begin() + static_cast<std::ptrdiff_t>(i * dim),
                          kernel[j].begin() + static_cast<std::ptrdiff_t>((i + 1) * dim));
            cert.b[i].push_back(A->from_coords(std::move(coords)));
        }
    }

    // each coefficient tuple of (m_1..m_n) is itself a syzygy of r; express
    // it in the kernel basis to get scalar series y_j
    std::vector<SeriesElement<K>> m;
    m.reserve(n);
    for (const auto& mi : inst.m) m.push_back(mi.lifted(beta));
    std::set<Monomial> support;
    for (const auto& mi : m)
        for (const auto& [mon, c] : mi.coeffs()) support.insert(mon);

    std::vector<Vec<K>> kernel_cols = kernel;  // columns of the expression system
    LinearSolver<K> expr(std::move(kernel_cols), n * dim);
    std::vector<SeriesElement<K>> y(s, series_zero(inst.ctx, beta));
    for (const auto& mon : support) {
        Vec<K> rhs(n * dim, A->field().zero());
        for (std::size_t i = 0; i < n; ++i) {
            const AlgebraElement<K> c = m[i].coeff(mon);
            for (std::size_t k = 0; k < dim; ++k) rhs[i * dim + k] = c.coords[k];
        }
        auto sol = expr.solve(rhs);
        if (!sol)
            throw InternalSelfCheck(
                "NoSolution: a coefficient tuple escaped the syzygy span; flatness violated");
        for (std::size_t j = 0; j < s; ++j)
            if (!is_zero((*sol)[j]))
                y[j].add_coeff(mon, A->one().scaled((*sol)[j]));
    }
    cert.y = std::move(y);
    return cert;
}

/// P S != S at truncation: the unit 1 (and any unit-constant-term element)
/// must fail extension-ideal membership.
template <typename K>
bool survival_check(const ExtIdealDesc<K>& E) {
    SubringHandle<K> h = E.window;
    return !ext_membership(series_one(E.ctx, h), E);
}

struct RelationSamplerParams {
    std::size_t n = 2;           // relation length
    int max_degree = -1;         // sampled monomial degree cap; -1 means D-1
    long long coeff_range = 2;   // coordinates drawn from [-range, range]
    std::size_t retry_budget = 100;
};

/// Deterministic pseudo-random relation: sample r and m_1..m_{n-1} freely,
/// then solve for a consistent m_n coefficientwise, resampling on failure.
template <typename K>
RelationInstance<K> random_relation(std::uint64_t seed, const ContextPtr<K>& ctx,
                                    const SubringHandle<K>& window,
                                    const RelationSamplerParams& params) {
    SplitMix64 rng(seed * 0x2545F4914F6CDD1DULL + 0x9E3779B97F4A7C15ULL);
    AlgebraPtr<K> A = window.algebra();
    const std::size_t dim = A->dim();
    const auto& field = A->field();
    const int D = ctx->trunc;
    const int maxdeg = params.max_degree < 0 ? D - 1 : std::min(params.max_degree, D - 1);
    const auto mons = monomials_below(ctx->nvars(), maxdeg + 1);

    auto random_element = [&]() {
        Vec<K> c(dim, field.zero());
        for (std::size_t i = 0; i < dim; ++i)
            c[i] = field.from_int(rng.int_in(-params.coeff_range, params.coeff_range));
        return A->from_coords(std::move(c));
    };
    auto random_series = [&]() {
        SeriesElement<K> f(ctx, window);
        for (const auto& m : mons)
            if (rng.below(2) == 0) f.add_coeff(m, random_element());
        return f;
    };

    const std::size_t n = params.n;
    for (std::size_t attempt = 0; attempt < params.retry_budget; ++attempt) {
        RelationInstance<K> inst;
        inst.ctx = ctx;
        inst.window = window;
        for (std::size_t i = 0; i < n; ++i) inst.r.push_back(random_element());
        for (std::size_t i = 0; i + 1 < n; ++i) inst.m.push_back(random_series());

        // solve r_n m_n = -(sum_{i<n} r_i m_i) coefficientwise
        SeriesElement<K> rhs = series_zero(ctx, window);
        for (std::size_t i = 0; i + 1 < n; ++i)
            rhs = rhs - series_constant(ctx, window, inst.r[i]) * inst.m[i];

        std::vector<Vec<K>> cols;
        cols.reserve(dim);
        for (std::size_t bidx = 0; bidx < dim; ++bidx)
            cols.push_back(A->mul_coords(inst.r[n - 1].coords, A->basis_element(bidx).coords));
        LinearSolver<K> mul(std::move(cols), dim);

        SeriesElement<K> mn(ctx, window);
        bool ok = true;
        if (n == 1) {
            // m_1 ranges over the coefficientwise kernel of multiplication
            const auto& ker = mul.kernel_basis();
            for (const auto& m : mons) {
                if (rng.below(2)) continue;
                Vec<K> c(dim, field.zero());
                for (const auto& kv : ker) {
                    const K w = field.from_int(rng.int_in(-params.coeff_range, params.coeff_range));
                    if (is_zero(w)) continue;
                    for (std::size_t i = 0; i < dim; ++i) c[i] += w * kv[i];
                }
                mn.add_coeff(m, A->from_coords(std::move(c)));
            }
        } else {
            for (const auto& [mon, c] : rhs.coeffs()) {
                AlgebraElement<K> cw = ctx->family->embed(c, rhs.subring().idx, window.idx);
                auto sol = mul.solve(cw.coords);
                if (!sol) { ok = false; break; }
                mn.add_coeff(mon, A->from_coords(std::move(*sol)));
            }
        }
        if (!ok) continue;
        inst.m.push_back(std::move(mn));
        if (!relation_holds(inst))
            throw InternalSelfCheck("sampler produced an invalid relation");
        return inst;
    }
    throw SamplingExhausted("no consistent relation found within the retry budget");
}

}  // namespace artin
