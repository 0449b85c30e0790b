#include "bps/groebner.hpp"

#include <algorithm>
#include <cassert>
#include <optional>
#include <set>
#include <utility>

#include "bps/errors.hpp"

namespace bps {
namespace {

// Polynomial with its expression in terms of the original generators.
// Invariant: p == sum coords[k] * gen_k.  coords is empty when the caller
// does not need cofactors; every operation below preserves that.
struct Tracked {
    Poly p;
    std::vector<Poly> coords;
};

void axpy(Tracked& f, const Poly& scale, const Tracked& g) {
    f.p -= scale * g.p;
    for (std::size_t k = 0; k < f.coords.size(); ++k)
        f.coords[k] -= scale * g.coords[k];
}

// Reduce every reducible monomial of f against the family, highest first.
void reduce_full(Tracked& f, const std::vector<Tracked>& family) {
again:
    for (auto it = f.p.terms().rbegin(); it != f.p.terms().rend(); ++it) {
        for (const Tracked& g : family) {
            if (g.p.is_zero()) continue;
            Mono lg = g.p.leading_mono();
            if (!mono_divides(lg, it->first)) continue;
            Poly scale = Poly::term(mono_div(it->first, lg),
                                    it->second / g.p.leading_coeff());
            axpy(f, scale, g);
            goto again;
        }
    }
}

Poly spoly_scale(const Poly& f, const Mono& lcm) {
    return Poly::term(mono_div(lcm, f.leading_mono()),
                      Rational(1) / f.leading_coeff());
}

struct Pair {
    Mono lcm;
    std::size_t i, j;
};

struct PairLess {
    bool operator()(const Pair& a, const Pair& b) const {
        MonoLexLess less;
        if (less(a.lcm, b.lcm)) return true;
        if (less(b.lcm, a.lcm)) return false;
        return std::tie(a.i, a.j) < std::tie(b.i, b.j);
    }
};

// Buchberger with the coprime-leading-term criterion and the chain
// criterion (a pair is dropped when a third leading term divides its lcm
// and both side pairs have already been treated).  Normal selection:
// smallest lcm first.  Returns a basis that generates the same ideal and
// whose leading terms generate the leading-term ideal; not yet reduced.
std::vector<Tracked> buchberger(const std::vector<Poly>& gens, bool track,
                                const Poly** early_unit = nullptr) {
    std::vector<Tracked> G;
    for (std::size_t k = 0; k < gens.size(); ++k) {
        if (gens[k].is_zero()) continue;
        Tracked t{gens[k], {}};
        if (track) {
            t.coords.assign(gens.size(), Poly::zero());
            t.coords[k] = Poly::one();
        }
        G.push_back(std::move(t));
    }

    std::set<Pair, PairLess> pending;
    std::set<std::pair<std::size_t, std::size_t>> treated;
    auto queue_pairs_with = [&](std::size_t j) {
        for (std::size_t i = 0; i < j; ++i)
            pending.insert({mono_lcm(G[i].p.leading_mono(), G[j].p.leading_mono()), i, j});
    };
    for (std::size_t j = 0; j < G.size(); ++j) queue_pairs_with(j);

    while (!pending.empty()) {
        Pair pr = *pending.begin();
        pending.erase(pending.begin());
        treated.insert({pr.i, pr.j});

        Mono li = G[pr.i].p.leading_mono();
        Mono lj = G[pr.j].p.leading_mono();
        if (pr.lcm.ex == li.ex + lj.ex && pr.lcm.ey == li.ey + lj.ey)
            continue;  // coprime leading terms
        bool chained = false;
        for (std::size_t k = 0; k < G.size() && !chained; ++k) {
            if (k == pr.i || k == pr.j) continue;
            if (!mono_divides(G[k].p.leading_mono(), pr.lcm)) continue;
            auto key = [](std::size_t a, std::size_t b) {
                return std::make_pair(std::min(a, b), std::max(a, b));
            };
            chained = treated.count(key(pr.i, k)) && treated.count(key(k, pr.j));
        }
        if (chained) continue;

        Tracked s{Poly::zero(), {}};
        if (track) s.coords.assign(gens.size(), Poly::zero());
        axpy(s, -spoly_scale(G[pr.i].p, pr.lcm), G[pr.i]);
        axpy(s, spoly_scale(G[pr.j].p, pr.lcm), G[pr.j]);
        reduce_full(s, G);
        if (s.p.is_zero()) continue;

        G.push_back(std::move(s));
        if (early_unit && G.back().p.is_constant()) {
            *early_unit = &G.back().p;
            return G;
        }
        queue_pairs_with(G.size() - 1);
    }
    return G;
}

std::vector<Poly> reduce_basis(std::vector<Tracked> G) {
    // Minimalize: drop elements whose leading term another element divides.
    std::vector<bool> redundant(G.size(), false);
    for (std::size_t i = 0; i < G.size(); ++i) {
        for (std::size_t j = 0; j < G.size() && !redundant[i]; ++j) {
            if (i == j) continue;
            Mono li = G[i].p.leading_mono(), lj = G[j].p.leading_mono();
            if (!mono_divides(lj, li)) continue;
            // Equal leading monomials: keep the earlier element only.
            redundant[i] = !(li.ex == lj.ex && li.ey == lj.ey) || j < i;
        }
    }
    std::vector<Tracked> minimal;
    for (std::size_t i = 0; i < G.size(); ++i)
        if (!redundant[i]) minimal.push_back(std::move(G[i]));
    // Auto-reduce tails and scale monic.
    std::vector<Poly> out;
    for (std::size_t i = 0; i < minimal.size(); ++i) {
        std::vector<Tracked> others;
        for (std::size_t j = 0; j < minimal.size(); ++j)
            if (j != i) others.push_back({minimal[j].p, {}});
        Tracked f{minimal[i].p, {}};
        reduce_full(f, others);
        assert(!f.p.is_zero());
        out.push_back(f.p.monic());
    }
    std::sort(out.begin(), out.end(), [](const Poly& a, const Poly& b) {
        return MonoLexLess{}(a.leading_mono(), b.leading_mono());
    });
    return out;
}

}  // namespace

IdealPresentation IdealPresentation::of(std::vector<Poly> gens) {
    std::vector<Poly> kept;
    for (Poly& g : gens)
        if (!g.is_zero()) kept.push_back(std::move(g));
    if (kept.empty()) kept.push_back(Poly::zero());
    std::sort(kept.begin(), kept.end(),
              [](const Poly& a, const Poly& b) { return Poly::compare(a, b) < 0; });
    return IdealPresentation{std::move(kept)};
}

Poly normal_form(const Poly& f, const std::vector<Poly>& family) {
    std::vector<Tracked> fam;
    for (const Poly& g : family)
        if (!g.is_zero()) fam.push_back({g, {}});
    Tracked t{f, {}};
    reduce_full(t, fam);
    return t.p;
}

GroebnerBasis reduced_basis(const IdealPresentation& I) {
    return GroebnerBasis{reduce_basis(buchberger(I.generators, false))};
}

bool is_unit_ideal(const IdealPresentation& I) {
    GroebnerBasis B = reduced_basis(I);
    return B.elements.size() == 1 && B.elements[0] == Poly::one();
}

UnitCertificate unit_cofactors(const IdealPresentation& I) {
    const Poly* early = nullptr;
    std::vector<Tracked> G = buchberger(I.generators, true, &early);

    const Tracked* hit = nullptr;
    for (const Tracked& g : G)
        if (g.p.is_constant() && !g.p.is_zero()) hit = &g;
    if (!hit) throw Error(Errc::NotUnitIdeal, "ideal does not contain 1");

    Rational inv = Rational(1) / hit->p.constant_value();
    UnitCertificate cert;
    for (const Poly& c : hit->coords) cert.cofactors.push_back(c.scaled(inv));

    Poly check = Poly::zero();
    for (std::size_t k = 0; k < cert.cofactors.size(); ++k)
        check += cert.cofactors[k] * I.generators[k];
    assert(check == Poly::one());
    return cert;
}

bool ideal_equal(const IdealPresentation& A, const IdealPresentation& B) {
    return reduced_basis(A) == reduced_basis(B);
}

}  // namespace bps
