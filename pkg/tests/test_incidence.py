import random
from fractions import Fraction

import pytest

from nonassoc.catalog import catalog_get
from nonassoc.incidence import (HigherDerivationSeq, Poset, SigmaMap,
                                all_posets_up_to, antichain_poset,
                                chain_constant_check, chain_poset, crown_poset,
                                exhaustive_sigma_equiv, hd_basic_inner,
                                hd_compose, hd_identity, hd_inner, hd_inverse,
                                hd_factorization_verify,
                                higher_derivation_check, incidence_algebra,
                                incidence_unit_vector,
                                poisson_sigma_equiv_test, sigma_bracket,
                                sigma_tilde, check_higher_transitive)
from nonassoc.linalg import identity_matrix, mat_eq, mat_mul
from nonassoc.operators import derivation_space
from nonassoc.scalars import GF, QQ, DomainError
from nonassoc.varieties import check_variety, minus_algebra


def test_poset_rejects_preorders():
    with pytest.raises(DomainError):
        Poset(["a", "b"], [["a", "b"], ["b", "a"]])


def test_poset_closure_and_chains():
    P = Poset(["a", "b", "c"], [["a", "b"], ["b", "c"]])
    assert P.le("a", "c")
    assert P.maximal_chains() == [(0, 1, 2)]
    cr = crown_poset()
    chains = cr.maximal_chains()
    assert len(chains) == 4 and all(len(c) == 2 for c in chains)


def test_incidence_matches_uppertri():
    for n in (2, 3, 4):
        A = incidence_algebra(chain_poset(n))
        B = catalog_get("uppertri", {"n": n})
        assert A.dim == B.dim
        assert A.op("mul") == B.op("mul")


def test_incidence_associative_unital():
    for P in [crown_poset(), antichain_poset(3),
              Poset(["a", "b", "c", "d"], [["a", "b"], ["a", "c"], ["b", "d"], ["c", "d"]])]:
        A = incidence_algebra(P)
        assert check_variety(A, "associative")["holds"]
        delta = incidence_unit_vector(A)
        t = A.op("mul")
        for j in range(A.dim):
            ej = A.basis_vector(j)
            assert t.apply([delta, ej]) == ej
            assert t.apply([ej, delta]) == ej


def test_antichain_diagonal():
    A = incidence_algebra(antichain_poset(4))
    assert A.dim == 4
    t = A.op("mul")
    for i in range(4):
        assert t.basis_product((i, i)) == {i: 1}
        for j in range(4):
            if i != j:
                assert t.basis_product((i, j)) == {}


def test_crown_dim():
    assert incidence_algebra(crown_poset()).dim == 8


def test_sigma_bracket_is_commutator_when_constant_one():
    P = chain_poset(3)
    A = incidence_algebra(P)
    sig = SigmaMap(P, {p: 1 for p in P.strict_pairs()})
    B = sigma_bracket(P, sig)
    assert B == minus_algebra(A).op("mul")


def test_sigma_zero_bracket():
    P = chain_poset(3)
    sig = SigmaMap(P, {p: 0 for p in P.strict_pairs()})
    assert sigma_bracket(P, sig).is_zero()


def test_crown_bracket_not_standard():
    """sigma supported on a single crown pair gives a nonzero bracket that
    is no scalar multiple of the commutator (so not a standard structure)."""
    cr = crown_poset()
    vals = {p: 0 for p in cr.strict_pairs()}
    vals[("1", "3")] = 1
    sig = SigmaMap(cr, vals)
    B = sigma_bracket(cr, sig)
    assert not B.is_zero()
    A = incidence_algebra(cr)
    comm = minus_algebra(A).op("mul")
    for lam in (Fraction(1), Fraction(-1), Fraction(1, 2), Fraction(2)):
        assert B != comm.scale(lam)
    # and it is a Poisson structure: the crown has height one
    rep = poisson_sigma_equiv_test(cr, sig)
    assert rep["poisson"] and rep["agree"]


def test_chain_constant_check():
    P = chain_poset(3)
    sig = SigmaMap(P, {("1", "2"): 1, ("2", "3"): 0, ("1", "3"): 0})
    ok, wit = chain_constant_check(P, sig)
    assert not ok and wit["chain"] == ["1", "2", "3"]
    sig = SigmaMap(P, {p: 7 for p in P.strict_pairs()})
    assert chain_constant_check(P, sig)[0]
    # on the crown every sigma is constant on chains (height one)
    cr = crown_poset()
    sig = SigmaMap(cr, {p: i for i, p in enumerate(cr.strict_pairs())})
    assert chain_constant_check(cr, sig)[0]


def test_equivalence_direct():
    P = chain_poset(3)
    sig = SigmaMap(P, {p: Fraction(5) for p in P.strict_pairs()})
    rep = poisson_sigma_equiv_test(P, sig)
    assert rep["agree"] and rep["poisson"] and rep["chain_constant"]
    sig = SigmaMap(P, {("1", "2"): 1, ("2", "3"): 0, ("1", "3"): 0})
    rep = poisson_sigma_equiv_test(P, sig)
    assert rep["agree"] and not rep["poisson"] and not rep["chain_constant"]
    cr = crown_poset()
    sig = SigmaMap(cr, {p: Fraction(i - 2, 3) for i, p in
                        enumerate(cr.strict_pairs())})
    rep = poisson_sigma_equiv_test(cr, sig)
    assert rep["agree"] and rep["poisson"]


def test_sweep_cross_validates_direct_route():
    rng = random.Random(7)
    g3 = GF(3)
    for P in [chain_poset(3), crown_poset(),
              Poset(["a", "b", "c", "d"], [["a", "b"], ["c", "d"]])]:
        sw = exhaustive_sigma_equiv(P, 3)
        assert sw["agree"]
        for _ in range(4):
            vals = {p: g3.from_int(rng.randint(0, 2)) for p in P.strict_pairs()}
            sig = SigmaMap(P, vals, g3)
            rep = poisson_sigma_equiv_test(P, sig, g3)
            assert rep["agree"]
            # the sweep and the direct route count the same verdicts
            assert rep["poisson"] == rep["chain_constant"]


def test_sweep_counts_on_chain():
    # on a chain every sigma must be globally constant: p^1 of them pass
    r = exhaustive_sigma_equiv(chain_poset(4), 3)
    assert r["total"] == 3 ** 6
    assert r["chain_constant_count"] == 3
    assert r["poisson_count"] == 3
    assert r["agree"]


def _random_poset(rng, n):
    """Random poset on n elements: transitive closure of random upper pairs."""
    rel = set()
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < 0.35:
                rel.add((i, j))
    changed = True
    while changed:
        changed = False
        for (a, b) in list(rel):
            for (c, d) in list(rel):
                if b == c and (a, d) not in rel:
                    rel.add((a, d))
                    changed = True
    covers = []
    for (a, b) in rel:
        if not any((a, c) in rel and (c, b) in rel for c in range(n)):
            covers.append([str(a), str(b)])
    return Poset([str(i) for i in range(n)], covers)


def test_biconditional_on_random_rational_sigmas():
    """Random rational sigma on 20 random posets with <= 7 elements
    agree in both directions."""
    rng = random.Random(20240812)
    for trial in range(20):
        P = _random_poset(rng, rng.choice([6, 7]))
        strict = P.strict_pairs()
        if trial % 2 == 0 and P.maximal_chains():
            # constant sigma: the Poisson side must come out true
            c = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
            sig = SigmaMap(P, {p: c for p in strict})
        else:
            sig = SigmaMap(P, {p: Fraction(rng.randint(-4, 4), rng.randint(1, 3))
                               for p in strict})
        rep = poisson_sigma_equiv_test(P, sig)
        assert rep["agree"], (P.to_json(), sig.to_json())


def test_poset_enumeration_counts():
    posets = all_posets_up_to(5)
    from collections import Counter
    counts = Counter(p.n for p in posets)
    assert counts == {1: 1, 2: 2, 3: 5, 4: 16, 5: 63}


def test_sweep_rejects_char_two():
    with pytest.raises(DomainError):
        exhaustive_sigma_equiv(chain_poset(3), 2)


def test_sweep_resource_bound():
    with pytest.raises(DomainError):
        exhaustive_sigma_equiv(chain_poset(7), 3)  # 3^21 assignments


def test_sweep_gf5():
    r = exhaustive_sigma_equiv(chain_poset(3), 5)
    assert r["agree"] and r["chain_constant_count"] == 5


# ---------------------------------------------------------------------------
# higher derivations
# ---------------------------------------------------------------------------

def _factorial_sequence(A, d, N):
    mats = [identity_matrix(A.dim, QQ)]
    cur = identity_matrix(A.dim, QQ)
    fact = 1
    for n in range(1, N + 1):
        cur = mat_mul(cur, d, QQ)
        fact *= n
        mats.append([[x / fact for x in row] for row in cur])
    return HigherDerivationSeq(A, mats)


def test_factorial_sequences_are_higher_derivations():
    for name, params in [("uppertri", {"n": 2}), ("uppertri", {"n": 3})]:
        A = catalog_get(name, params)
        for d in derivation_space(A).matrices():
            seq = _factorial_sequence(A, d, 4)
            ok, wit = higher_derivation_check(A, seq)
            assert ok, (name, wit)


def test_hd_group_axioms_random():
    rng = random.Random(23)
    A = catalog_get("uppertri", {"n": 2})
    ders = derivation_space(A).matrices()

    def random_hd():
        # product of factorial sequences and inner sequences is a valid HD
        seq = _factorial_sequence(A, ders[rng.randrange(len(ders))], 4)
        r = [Fraction(rng.randint(-2, 2)) for _ in range(A.dim)]
        seq = hd_compose(seq, hd_basic_inner(A, r, rng.randint(1, 3), 4))
        return seq

    e = hd_identity(A, 4)
    for _ in range(6):
        d1, d2, d3 = random_hd(), random_hd(), random_hd()
        assert higher_derivation_check(A, d1)[0]
        # associativity and identity
        lhs = hd_compose(hd_compose(d1, d2), d3)
        rhs = hd_compose(d1, hd_compose(d2, d3))
        assert all(mat_eq(a, b, QQ) for a, b in zip(lhs.mats, rhs.mats))
        assert all(mat_eq(a, b, QQ) for a, b in
                   zip(hd_compose(d1, e).mats, d1.mats))
        assert all(mat_eq(a, b, QQ) for a, b in
                   zip(hd_compose(e, d1).mats, d1.mats))
        inv = hd_inverse(d1)
        prod = hd_compose(d1, inv)
        assert all(mat_eq(a, b, QQ) for a, b in zip(prod.mats, e.mats))
        prod = hd_compose(inv, d1)
        assert all(mat_eq(a, b, QQ) for a, b in zip(prod.mats, e.mats))
        # (d' * d'')_1 = d'_1 + d''_1
        sum1 = [[x + y for x, y in zip(r1, r2)]
                for r1, r2 in zip(d1.mats[1], d2.mats[1])]
        assert mat_eq(hd_compose(d1, d2).mats[1], sum1, QQ)


def test_hd_check_rejects_non_derivation():
    A = catalog_get("uppertri", {"n": 2})
    E11 = [[Fraction(1), Fraction(0), Fraction(0)],
           [Fraction(0), Fraction(0), Fraction(0)],
           [Fraction(0), Fraction(0), Fraction(0)]]
    zero = [[Fraction(0)] * 3 for _ in range(3)]
    seq = HigherDerivationSeq(A, [identity_matrix(3, QQ), E11, zero])
    ok, wit = higher_derivation_check(A, seq)
    assert not ok and wit["n"] == 1


def test_inner_first_component_is_ad():
    A = catalog_get("uppertri", {"n": 2})
    r = [Fraction(0), Fraction(1), Fraction(0)]  # e12
    seq = hd_inner(A, [r, [Fraction(0)] * 3, [Fraction(0)] * 3,
                       [Fraction(0)] * 3], 4)
    from nonassoc.incidence import _left_mult, _right_mult
    ad = [[_left_mult(A, r)[i][j] - _right_mult(A, r)[i][j]
           for j in range(3)] for i in range(3)]
    assert mat_eq(seq.mats[1], ad, QQ)
    assert higher_derivation_check(A, seq)[0]


def _random_transitive_map(P, A, rng, N):
    """On a chain: sigma from products of interval generating series."""
    elems = P.elements
    m = len(elems)
    gens = {}
    for k in range(m - 1):
        gens[k] = [Fraction(1)] + [Fraction(rng.randint(-3, 3))
                                   for _ in range(N)]
    def series(x, y):
        # product of gens over the covered steps, truncated
        out = [Fraction(1)] + [Fraction(0)] * N
        for k in range(x, y):
            g = gens[k]
            new = [Fraction(0)] * (N + 1)
            for i in range(N + 1):
                for j in range(N + 1 - i):
                    new[i + j] += out[i] * g[j]
            out = new
        return out
    levels = []
    for n in range(N + 1):
        level = {}
        for (a, b) in A.incidence_pairs:
            x, y = elems.index(a), elems.index(b)
            level[(a, b)] = series(x, y)[n]
        levels.append(level)
    return levels


def test_lemma_26_sigma_tilde_on_chains():
    rng = random.Random(5)
    for m in (2, 3, 4):
        P = chain_poset(m)
        A = incidence_algebra(P)
        for _ in range(5):
            levels = _random_transitive_map(P, A, rng, 4)
            assert check_higher_transitive(P, levels)[0]
            st = sigma_tilde(A, levels)
            ok, wit = higher_derivation_check(A, st)
            assert ok, wit


def test_factorization_verify():
    rng = random.Random(9)
    P = chain_poset(3)
    A = incidence_algebra(P)
    levels = _random_transitive_map(P, A, rng, 4)
    st = sigma_tilde(A, levels)
    rho = [[Fraction(rng.randint(-2, 2)) for _ in range(A.dim)]
           for _ in range(4)]
    d = hd_compose(hd_inner(A, rho, 4), st)
    assert higher_derivation_check(A, d)[0]
    ok, _ = hd_factorization_verify(A, d, rho, levels)
    assert ok
    # a mismatched rho is rejected
    rho_bad = [list(r) for r in rho]
    rho_bad[0] = [x + 1 for x in rho_bad[0]]
    ok, _ = hd_factorization_verify(A, d, rho_bad, levels)
    assert not ok


def test_trivial_factorization_cases():
    P = chain_poset(3)
    A = incidence_algebra(P)
    # d = sigma~ with rho = 0
    rng = random.Random(2)
    levels = _random_transitive_map(P, A, rng, 3)
    st = sigma_tilde(A, levels)
    zero_rho = [[Fraction(0)] * A.dim for _ in range(3)]
    assert hd_factorization_verify(A, st, zero_rho, levels)[0]
    # d = Delta_rho with trivial sigma
    trivial = [{p: 1 for p in A.incidence_pairs}] + \
              [{p: 0 for p in A.incidence_pairs} for _ in range(3)]
    rho = [[Fraction(rng.randint(-2, 2)) for _ in range(A.dim)]
           for _ in range(3)]
    inner = hd_inner(A, rho, 3)
    assert hd_factorization_verify(A, inner, rho, trivial)[0]


def test_sigma_tilde_rejects_non_transitive():
    P = chain_poset(3)
    A = incidence_algebra(P)
    bad = [{p: 1 for p in A.incidence_pairs},
           {p: 1 for p in A.incidence_pairs}]
    # sigma_1 constant 1 fails transitivity on the long pair (needs 2)
    assert not check_higher_transitive(P, bad)[0]
    with pytest.raises(DomainError):
        sigma_tilde(A, bad)
