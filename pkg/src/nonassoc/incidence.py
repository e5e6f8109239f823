"""Finite posets, incidence algebras, sigma-brackets, higher derivations.

Only finite posets are supported, so the incidence algebra and the finitary
incidence algebra coincide.  Preorders that are not partial orders are
rejected.  The Poisson/sigma correspondence is checked two ways: a direct
per-sigma test, and an exhaustive GF(p) sweep that prefilters with a
vectorized Leibniz system before running the full axiom check on survivors.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

import numpy as np

from .linalg import identity_matrix, mat_eq, mat_mul, mat_vec
from .poisson import check_poisson_family
from .scalars import GF, QQ, DomainError
from .structure import Algebra, StructureTensor


class Poset:
    """Finite poset from covering pairs; relation is the closure."""

    def __init__(self, elements, covers):
        self.elements = list(elements)
        if len(set(self.elements)) != len(self.elements):
            raise DomainError("duplicate poset elements")
        self.index = {e: i for i, e in enumerate(self.elements)}
        n = len(self.elements)
        leq = [[False] * n for _ in range(n)]
        for i in range(n):
            leq[i][i] = True
        cov = set()
        for a, b in covers:
            if a not in self.index or b not in self.index:
                raise DomainError(f"cover ({a!r},{b!r}) uses unknown elements")
            cov.add((self.index[a], self.index[b]))
            leq[self.index[a]][self.index[b]] = True
        changed = True
        while changed:
            changed = False
            for i in range(n):
                for j in range(n):
                    if leq[i][j]:
                        for k in range(n):
                            if leq[j][k] and not leq[i][k]:
                                leq[i][k] = True
                                changed = True
        for i in range(n):
            for j in range(n):
                if i != j and leq[i][j] and leq[j][i]:
                    raise DomainError(
                        "relation is not antisymmetric (preorders are rejected)")
        self.leq = leq
        self.covers = cov
        self.n = n

    def le(self, a, b):
        return self.leq[self.index[a]][self.index[b]]

    def pairs(self):
        """All (x, y) with x <= y, in canonical index order."""
        return [(self.elements[i], self.elements[j])
                for i in range(self.n) for j in range(self.n)
                if self.leq[i][j]]

    def strict_pairs(self):
        return [(self.elements[i], self.elements[j])
                for i in range(self.n) for j in range(self.n)
                if i != j and self.leq[i][j]]

    def covers_of(self, i):
        out = []
        for j in range(self.n):
            if j != i and self.leq[i][j]:
                if not any(k != i and k != j and self.leq[i][k] and self.leq[k][j]
                           for k in range(self.n)):
                    out.append(j)
        return out

    def maximal_chains(self):
        """All maximal chains, as tuples of element indices."""
        minimal = [i for i in range(self.n)
                   if not any(j != i and self.leq[j][i] for j in range(self.n))]
        chains = []

        def extend(chain):
            nxt = self.covers_of(chain[-1])
            if not nxt:
                chains.append(tuple(chain))
                return
            for j in nxt:
                extend(chain + [j])

        for i in minimal:
            extend([i])
        return chains

    @staticmethod
    def from_json(doc):
        return Poset(doc["elements"], doc.get("covers", []))

    def to_json(self):
        return {"elements": list(self.elements),
                "covers": [[self.elements[a], self.elements[b]]
                           for a, b in sorted(self.covers)]}

    def __repr__(self):
        return f"Poset({self.elements}, covers={sorted(self.covers)})"


def crown_poset():
    """The 4-element crown: 1,2 below 3,4 with all four strict relations."""
    return Poset(["1", "2", "3", "4"],
                 [["1", "3"], ["1", "4"], ["2", "3"], ["2", "4"]])


def chain_poset(n):
    return Poset([str(i + 1) for i in range(n)],
                 [[str(i + 1), str(i + 2)] for i in range(n - 1)])


def antichain_poset(n):
    return Poset([str(i + 1) for i in range(n)], [])


class SigmaMap:
    """Scalar labels on the strict pairs of a poset."""

    def __init__(self, poset, values, dom=QQ):
        self.poset = poset
        self.dom = dom
        vals = {}
        for (a, b) in poset.strict_pairs():
            if (a, b) not in values:
                raise DomainError(f"sigma missing value for {a!r}<{b!r}")
            vals[(a, b)] = dom.coerce(values[(a, b)])
        self.values = vals

    @staticmethod
    def from_json(poset, doc, dom=QQ):
        values = {}
        for key, v in doc.items():
            a, _, b = key.partition("<")
            values[(a, b)] = dom.parse(v)
        return SigmaMap(poset, values, dom)

    def to_json(self):
        return {f"{a}<{b}": self.dom.to_str(c)
                for (a, b), c in sorted(self.values.items())}


def incidence_algebra(P, dom=QQ):
    """I(P, F): basis e_xy for x <= y, convolution product."""
    pairs = P.pairs()
    idx = {p: a for a, p in enumerate(pairs)}
    table = {}
    one = dom.one()
    for (x, y) in pairs:
        for (u, v) in pairs:
            if y == u:
                table[(idx[(x, y)], idx[(u, v)])] = {idx[(x, v)]: one}
    A = Algebra(f"I({','.join(P.elements)})", len(pairs),
                {"mul": StructureTensor(len(pairs), 2, table, dom)}, dom)
    A.incidence_pairs = pairs
    A.poset = P
    return A


def incidence_unit_vector(A):
    """The identity element sum of e_xx (not a basis vector in general)."""
    dom = A.dom
    v = [dom.zero()] * A.dim
    for a, (x, y) in enumerate(A.incidence_pairs):
        if x == y:
            v[a] = dom.one()
    return v


def sigma_bracket(P, sigma, dom=QQ):
    """B(f,g)(x,y) = sigma(x,y) [f,g](x,y) for x<y, zero on the diagonal."""
    pairs = P.pairs()
    idx = {p: a for a, p in enumerate(pairs)}
    table = {}

    def sig(x, y):
        if x == y:
            return dom.zero()
        return sigma.values[(x, y)]

    for (x, y) in pairs:
        for (u, v) in pairs:
            row = {}
            # [e_xy, e_uv] = delta_{yu} e_xv - delta_{vx} e_uy
            if y == u:
                c = sig(x, v)
                if not dom.is_zero(c):
                    row[idx[(x, v)]] = row.get(idx[(x, v)], dom.zero()) + c
            if v == x:
                c = sig(u, y)
                if not dom.is_zero(c):
                    row[idx[(u, y)]] = row.get(idx[(u, y)], dom.zero()) - c
            row = {k: c for k, c in row.items() if not dom.is_zero(c)}
            if row:
                table[(idx[(x, y)], idx[(u, v)])] = row
    return StructureTensor(len(pairs), 2, table, dom)


def chain_constant_check(P, sigma):
    """sigma constant on chains?  Checked on maximal chains (sufficient)."""
    for chain in P.maximal_chains():
        vals = []
        elems = [P.elements[i] for i in chain]
        for a in range(len(elems)):
            for b in range(a + 1, len(elems)):
                vals.append(((elems[a], elems[b]),
                             sigma.values[(elems[a], elems[b])]))
        for (p, v) in vals[1:]:
            if not sigma.dom.is_zero(v - vals[0][1]):
                return False, {"chain": elems, "pair": p,
                               "expected": vals[0][1], "got": v}
    return True, None


def poisson_sigma_equiv_test(P, sigma, dom=None):
    """Both sides of the sigma/Poisson correspondence, with the biconditional.

    A mismatch between the chain-constancy verdict and the Poisson verdict
    is a failure of the artifact, reported as agree=False.
    """
    dom = dom or sigma.dom
    const, wit = chain_constant_check(P, sigma)
    A = incidence_algebra(P, dom)
    B = sigma_bracket(P, sigma, dom)
    pair = Algebra(A.name, A.dim, {"mul": A.op("mul"), "bracket": B}, dom)
    # incidence algebras are noncommutative: Poisson structure in the
    # Kubo sense (associative product, Lie bracket, Leibniz rule)
    rep = check_poisson_family(pair, "poisson-structure")
    return {"chain_constant": const, "chain_witness": wit,
            "poisson": rep["holds"], "poisson_report": rep,
            "agree": const == rep["holds"]}


# ---------------------------------------------------------------------------
# exhaustive GF(p) sweep
# ---------------------------------------------------------------------------

def _leibniz_jacobi_forms(P):
    """Symbolic axiom defects as forms in the sigma values.

    Returns (linear_rows, quadratic_rows): linear rows are {s: int} maps
    from the Leibniz rule, quadratic rows {(s1,s2): int} from Jacobi, with
    s indexing strict pairs.
    """
    pairs = P.pairs()
    idx = {p: a for a, p in enumerate(pairs)}
    strict = P.strict_pairs()
    sidx = {p: a for a, p in enumerate(strict)}

    def br(p, q):
        # [e_p, e_q] with symbolic sigma: list of (basis_index, sigma_index, sign)
        (x, y), (u, v) = p, q
        out = []
        if y == u and x != v:
            out.append((idx[(x, v)], sidx[(x, v)], 1))
        if v == x and u != y:
            out.append((idx[(u, y)], sidx[(u, y)], -1))
        return out

    def mulp(p, q):
        (x, y), (u, v) = p, q
        if y == u:
            return idx[(x, v)]
        return None

    linear = set()
    quadratic = set()
    nb = len(pairs)
    for f in pairs:
        for g in pairs:
            for h in pairs:
                # Leibniz: B(f, g h) - B(f,g) h - g B(f,h)
                acc = {}
                gh = mulp(g, h)
                if gh is not None:
                    for out, s, sign in br(f, pairs[gh]):
                        acc[(out, s)] = acc.get((out, s), 0) + sign
                for mid, s, sign in br(f, g):
                    prod = mulp(pairs[mid], h)
                    if prod is not None:
                        acc[(prod, s)] = acc.get((prod, s), 0) - sign
                for mid, s, sign in br(f, h):
                    prod = mulp(g, pairs[mid])
                    if prod is not None:
                        acc[(prod, s)] = acc.get((prod, s), 0) - sign
                rows = {}
                for (out, s), c in acc.items():
                    if c:
                        rows.setdefault(out, {})[s] = c
                for row in rows.values():
                    linear.add(tuple(sorted(row.items())))
                # Jacobi: B(B(f,g),h) + B(B(g,h),f) + B(B(h,f),g)
                acc = {}
                for (a, b, c) in ((f, g, h), (g, h, f), (h, f, g)):
                    for mid, s1, sign1 in br(a, b):
                        for out, s2, sign2 in br(pairs[mid], c):
                            key = (out, (min(s1, s2), max(s1, s2)))
                            acc[key] = acc.get(key, 0) + sign1 * sign2
                rows = {}
                for (out, ss), c in acc.items():
                    if c:
                        rows.setdefault(out, {})[ss] = c
                for row in rows.values():
                    quadratic.add(tuple(sorted(row.items())))
    return [dict(r) for r in linear], [dict(r) for r in quadratic]


def exhaustive_sigma_equiv(P, p=3):
    """Test the sigma/Poisson biconditional for every sigma over GF(p).

    The Leibniz system is evaluated for all p^s assignments at once with
    numpy; assignments passing it get the full exact Poisson check.  Returns
    counts and the first disagreement, if any.
    """
    if p == 2:
        raise DomainError("the sweep needs an odd prime (alternating bracket)")
    strict = P.strict_pairs()
    s = len(strict)
    if p ** s > 4_000_000:
        raise DomainError(
            f"sweep size p^s = {p}^{s} exceeds the resource bound; "
            "sample sigmas individually instead")
    dom = GF(p)
    linear, quadratic = _leibniz_jacobi_forms(P)
    total = p ** s
    if s == 0:
        sigma = SigmaMap(P, {}, dom)
        rep = poisson_sigma_equiv_test(P, sigma, dom)
        return {"poset": P.to_json(), "p": p, "total": 1,
                "chain_constant_count": int(rep["chain_constant"]),
                "poisson_count": int(rep["poisson"]),
                "agree": rep["agree"], "counterexample": None}
    digits = np.zeros((total, s), dtype=np.int64)
    r = np.arange(total)
    for k in range(s):
        digits[:, k] = (r // (p ** k)) % p
    if linear:
        L = np.zeros((len(linear), s), dtype=np.int64)
        for i, row in enumerate(linear):
            for j, c in row.items():
                L[i, j] = c % p
        leib_ok = ((digits @ L.T) % p == 0).all(axis=1)
    else:
        leib_ok = np.ones(total, dtype=bool)
    # chain-constancy mask
    const_ok = np.ones(total, dtype=bool)
    sidx = {q: a for a, q in enumerate(strict)}
    for chain in P.maximal_chains():
        elems = [P.elements[i] for i in chain]
        cpairs = [sidx[(elems[a], elems[b])]
                  for a in range(len(elems)) for b in range(a + 1, len(elems))]
        for other in cpairs[1:]:
            const_ok &= digits[:, cpairs[0]] == digits[:, other]
    poisson_ok = np.zeros(total, dtype=bool)
    survivors = np.nonzero(leib_ok)[0]
    for t in survivors:
        vec = digits[t]
        ok = True
        for row in quadratic:
            val = 0
            for (s1, s2), c in row.items():
                val += c * int(vec[s1]) * int(vec[s2])
            if val % p != 0:
                ok = False
                break
        poisson_ok[t] = ok
    agree = bool((poisson_ok == const_ok).all())
    counterexample = None
    if not agree:
        t = int(np.nonzero(poisson_ok != const_ok)[0][0])
        counterexample = {strict[k]: int(digits[t, k]) for k in range(s)}
    return {"poset": P.to_json(), "p": p, "total": total,
            "chain_constant_count": int(const_ok.sum()),
            "poisson_count": int(poisson_ok.sum()),
            "agree": agree, "counterexample": counterexample}


def all_posets_up_to(nmax):
    """All posets with <= nmax elements, up to isomorphism.

    Every poset is isomorphic to one whose strict order is contained in the
    natural order on 0..n-1, so candidates are transitive subsets of the
    upper triangle, deduplicated by canonical permutation form.
    """
    out = []
    for n in range(1, nmax + 1):
        upper = [(i, j) for i in range(n) for j in range(i + 1, n)]
        seen = set()
        for bits in range(1 << len(upper)):
            rel = {upper[k] for k in range(len(upper)) if bits >> k & 1}
            ok = True
            for (a, b) in rel:
                for (c, d) in rel:
                    if b == c and (a, d) not in rel:
                        ok = False
                        break
                if not ok:
                    break
            if not ok:
                continue
            canon = min(
                tuple(sorted((p[a], p[b]) for (a, b) in rel))
                for p in itertools.permutations(range(n)))
            if canon in seen:
                continue
            seen.add(canon)
            covers = []
            for (a, b) in rel:
                if not any((a, c) in rel and (c, b) in rel for c in range(n)):
                    covers.append([str(a), str(b)])
            out.append(Poset([str(i) for i in range(n)], covers))
    return out


# ---------------------------------------------------------------------------
# higher derivations
# ---------------------------------------------------------------------------

class HigherDerivationSeq:
    """d_0 = id, d_1, ..., d_N as matrices over the algebra's domain."""

    def __init__(self, A, mats):
        self.A = A
        dom = A.dom
        self.mats = [[[dom.coerce(x) for x in row] for row in m] for m in mats]
        if not self.mats:
            raise DomainError("need at least d_0")
        if not mat_eq(self.mats[0], identity_matrix(A.dim, dom), dom):
            raise DomainError("d_0 must be the identity")

    @property
    def order(self):
        return len(self.mats) - 1

    def truncate(self, N):
        if N + 1 > len(self.mats):
            raise DomainError("sequence shorter than requested order")
        return HigherDerivationSeq(self.A, self.mats[:N + 1])


def hd_identity(A, N):
    dom = A.dom
    zero = [[dom.zero()] * A.dim for _ in range(A.dim)]
    return HigherDerivationSeq(A, [identity_matrix(A.dim, dom)] + [zero] * N)


def higher_derivation_check(A, seq, op="mul"):
    """d_n(rs) = sum_{i+j=n} d_i(r) d_j(s) for 1 <= n <= N on basis pairs."""
    t = A.op(op)
    dom = A.dom
    n_dim = A.dim
    for n in range(1, seq.order + 1):
        for a in range(n_dim):
            for b in range(n_dim):
                prod = [dom.zero()] * n_dim
                for k, c in t.basis_product((a, b)).items():
                    prod[k] = c
                lhs = mat_vec(seq.mats[n], prod, dom)
                rhs = [dom.zero()] * n_dim
                for i in range(n + 1):
                    da = [seq.mats[i][r][a] for r in range(n_dim)]
                    db = [seq.mats[n - i][r][b] for r in range(n_dim)]
                    val = t.apply([da, db])
                    rhs = [x + y for x, y in zip(rhs, val)]
                if any(not dom.is_zero(x - y) for x, y in zip(lhs, rhs)):
                    return False, {"n": n, "pair": (a, b)}
    return True, None


def hd_compose(d1, d2):
    """(d' * d'')_n = sum_{i+j=n} d'_i o d''_j."""
    if d1.order != d2.order:
        raise DomainError("truncation orders differ")
    A = d1.A
    dom = A.dom
    out = []
    for n in range(d1.order + 1):
        acc = [[dom.zero()] * A.dim for _ in range(A.dim)]
        for i in range(n + 1):
            prod = mat_mul(d1.mats[i], d2.mats[n - i], dom)
            acc = [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(acc, prod)]
        out.append(acc)
    return HigherDerivationSeq(A, out)


def hd_inverse(d):
    """The *-inverse, solved recursively from lower terms."""
    A = d.A
    dom = A.dom
    inv = [identity_matrix(A.dim, dom)]
    for n in range(1, d.order + 1):
        acc = [[dom.zero()] * A.dim for _ in range(A.dim)]
        for i in range(1, n + 1):
            prod = mat_mul(d.mats[i], inv[n - i], dom)
            acc = [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(acc, prod)]
        inv.append([[-x for x in row] for row in acc])
    return HigherDerivationSeq(A, inv)


def _left_mult(A, vec, op="mul"):
    t = A.op(op)
    dom = A.dom
    sv = {i: c for i, c in enumerate(vec) if not dom.is_zero(c)}
    cols = []
    for j in range(A.dim):
        out = t.apply_sparse([sv, {j: dom.one()}])
        col = [dom.zero()] * A.dim
        for k, c in out.items():
            col[k] = c
        cols.append(col)
    return [[cols[j][i] for j in range(A.dim)] for i in range(A.dim)]


def _right_mult(A, vec, op="mul"):
    t = A.op(op)
    dom = A.dom
    sv = {i: c for i, c in enumerate(vec) if not dom.is_zero(c)}
    cols = []
    for j in range(A.dim):
        out = t.apply_sparse([{j: dom.one()}, sv])
        col = [dom.zero()] * A.dim
        for k, c in out.items():
            col[k] = c
        cols.append(col)
    return [[cols[j][i] for j in range(A.dim)] for i in range(A.dim)]


def hd_basic_inner(A, r, k, N, op="mul"):
    """[r,k]: zero off multiples of k; at n = k*l the map x -> r^l x - r^{l-1} x r.

    r^0 acts as the identity, so no unit is needed in A.
    """
    dom = A.dom
    t = A.op(op)
    left_pows = [identity_matrix(A.dim, dom)]
    cur = list(r)
    for _ in range(N):
        left_pows.append(_left_mult(A, cur, op))
        cur = t.apply([cur, r])
    R_r = _right_mult(A, r, op)
    zero = [[dom.zero()] * A.dim for _ in range(A.dim)]
    mats = [identity_matrix(A.dim, dom)]
    for n in range(1, N + 1):
        if n % k != 0:
            mats.append(zero)
            continue
        l = n // k
        tail = mat_mul(left_pows[l - 1], R_r, dom)
        mats.append([[left_pows[l][i][j] - tail[i][j] for j in range(A.dim)]
                     for i in range(A.dim)])
    return HigherDerivationSeq(A, mats)


def hd_inner(A, r_seq, N, op="mul"):
    """Delta_r = [r_1,1] * [r_2,2] * ... * [r_N,N], truncated at N."""
    out = hd_identity(A, N)
    for k, r in enumerate(r_seq[:N], start=1):
        out = hd_compose(out, hd_basic_inner(A, r, k, N, op))
    return out


# --- higher transitive maps ------------------------------------------------

def check_higher_transitive(P, sigma_seq):
    """sigma_0 = 1 and sigma_n(x,y) = sum_{i+j=n} sigma_i(x,z) sigma_j(z,y)."""
    pairs = P.pairs()
    N = len(sigma_seq) - 1
    dom = QQ
    for (x, y) in pairs:
        if sigma_seq[0].get((x, y), None) != 1:
            return False, {"n": 0, "pair": (x, y)}
    for n in range(1, N + 1):
        for (x, y) in pairs:
            for z in P.elements:
                if not (P.le(x, z) and P.le(z, y)):
                    continue
                rhs = sum(Fraction(sigma_seq[i][(x, z)]) *
                          Fraction(sigma_seq[n - i][(z, y)])
                          for i in range(n + 1))
                if Fraction(sigma_seq[n][(x, y)]) != rhs:
                    return False, {"n": n, "pair": (x, y), "via": z}
    return True, None


def sigma_tilde(A, sigma_seq):
    """The diagonal higher derivation induced by a higher transitive map."""
    P = A.poset
    dom = A.dom
    ok, wit = check_higher_transitive(P, sigma_seq)
    if not ok:
        raise DomainError(f"not a higher transitive map: {wit}")
    mats = []
    for n, level in enumerate(sigma_seq):
        m = [[dom.zero()] * A.dim for _ in range(A.dim)]
        for a, (x, y) in enumerate(A.incidence_pairs):
            m[a][a] = dom.coerce(level[(x, y)])
        mats.append(m)
    return HigherDerivationSeq(A, mats)


def hd_factorization_verify(A, d, rho, sigma_seq):
    """Does d equal Delta_rho * sigma~ up to the truncation order?"""
    N = d.order
    inner = hd_inner(A, rho, N)
    st = sigma_tilde(A, sigma_seq).truncate(N)
    prod = hd_compose(inner, st)
    for n in range(N + 1):
        if not mat_eq(prod.mats[n], d.mats[n], A.dom):
            return False, {"n": n}
    return True, None
