"""Degeneration certificates and Skjelbred-Sund-style central extensions.

A degeneration certificate is an invertible matrix g(t) over Q(t); the
verifier computes the transported structure constants (g * mu) symbolically
and evaluates the limit at t = 0.  Cocycle spaces are the linear half of
the central-extension method: Z2 is cut out by the variety's polarized
identities, B2 by coboundaries f(xy).
"""

from __future__ import annotations

import itertools

from .identities import polarize, term_vars
from .linalg import Subspace, inverse, mat_vec
from .operators import derivation_space
from .scalars import QQ, QT, DomainError, RatFunc, parse_ratfunc
from .structure import Algebra, StructureTensor
from .varieties import BINARY_VARIETIES, variety_identities


def certificate_from_json(rows):
    """Parse a matrix of Q(t) expression strings."""
    return [[parse_ratfunc(x) if isinstance(x, str) else RatFunc.const(x)
             for x in row] for row in rows]


def _to_qt(A):
    return Algebra(A.name, A.dim,
                   {name: t.map_domain(QT, lambda c: RatFunc.const(c))
                    for name, t in A.ops.items()}, QT)


def degeneration_verify(A, B, g):
    """Check a degeneration certificate A -> B.

    g has entries in Q(t).  Returns a report with the transported tensors,
    whether the t->0 limit exists, and whether it equals B's table exactly
    (users wanting "up to isomorphism" pre-compose a constant basis change).
    """
    if A.dim != B.dim:
        raise DomainError("dimension mismatch")
    n = A.dim
    g = [[QT.coerce(x) for x in row] for row in g]
    try:
        ginv = inverse(g, QT)
    except DomainError:
        raise DomainError("certificate matrix is singular over Q(t)")
    At = _to_qt(A)
    cols = [[ginv[i][j] for i in range(n)] for j in range(n)]
    transformed = {}
    limit_exists = True
    limit_tables = {}
    for name, t in At.ops.items():
        table = {}
        limit_table = {}
        for args in itertools.product(range(n), repeat=t.arity):
            val = t.apply([cols[i] for i in args])
            out = mat_vec(g, val, QT)
            row = {}
            lrow = {}
            for k, c in enumerate(out):
                if QT.is_zero(c):
                    continue
                row[k] = c
                if c.has_pole_at_zero():
                    limit_exists = False
                else:
                    v0 = c.eval_at_zero()
                    if v0:
                        lrow[k] = v0
            if row:
                table[args] = row
            if lrow:
                limit_table[args] = lrow
        transformed[name] = StructureTensor(n, t.arity, table, QT)
        limit_tables[name] = limit_table
    equals_b = False
    if limit_exists:
        equals_b = True
        for name, t in B.ops.items():
            if name not in limit_tables:
                equals_b = False
                break
            lim = StructureTensor(n, t.arity, limit_tables[name], QQ)
            if lim != t:
                equals_b = False
                break
        if set(limit_tables) != set(B.ops):
            equals_b = False
    return {"transformed": transformed, "limit_exists": limit_exists,
            "equals_B": equals_b,
            "limit": {name: StructureTensor(n, A.ops[name].arity, tab, QQ)
                      for name, tab in limit_tables.items()} if limit_exists else None}


# ---------------------------------------------------------------------------
# semicontinuity obstructions
# ---------------------------------------------------------------------------

def invariant_profile(A, op=None):
    """Invariants consumed by the degeneration obstruction rule set."""
    from .identities import check_identity, parse_identity
    from .invariants import structure_report
    rep = structure_report(A, op=op)
    om = {"*": op or A.op_names()[0]}
    return {
        "power_dims": rep["power_dims"],
        "derived_dims": rep["derived_dims"],
        "ann_dim": rep["annihilator"]["two_sided"],
        "center_dim": rep["center_dim"],
        "der_dim": derivation_space(A, 1, op=op or A.op_names()[0]).dim,
        "nilpotent": rep["nilpotent"],
        "solvable": rep["solvable"],
        "commutative": check_identity(A, parse_identity("x*y - y*x"), opmap=om)[0],
        "anticommutative": check_identity(A, parse_identity("x*x"), opmap=om)[0],
    }


def degeneration_obstruction(A, B, op=None):
    """Violated necessary conditions for A -> B; empty list proves nothing."""
    if A.dim != B.dim:
        raise DomainError("dimension mismatch")
    from .identities import check_identity, parse_identity
    from .invariants import structure_report
    violations = []
    repA = structure_report(A, op=op)
    repB = structure_report(B, op=op)
    pa, pb = repA["power_dims"], repB["power_dims"]
    for k in range(max(len(pa), len(pb))):
        da = pa[k] if k < len(pa) else pa[-1]
        db = pb[k] if k < len(pb) else pb[-1]
        if da < db:
            violations.append(
                f"dim A^{k + 1} = {da} < dim B^{k + 1} = {db}")
    if repA["annihilator"]["two_sided"] > repB["annihilator"]["two_sided"]:
        violations.append(
            f"dim Ann(A) = {repA['annihilator']['two_sided']} > "
            f"dim Ann(B) = {repB['annihilator']['two_sided']}")
    dA = derivation_space(A, 1, op=op or A.op_names()[0]).dim
    dB = derivation_space(B, 1, op=op or B.op_names()[0]).dim
    if dA > dB:
        violations.append(f"dim Der(A) = {dA} > dim Der(B) = {dB}")
    comm = parse_identity("x*y - y*x")
    anti = parse_identity("x*x")
    omA = {"*": op or A.op_names()[0]}
    omB = {"*": op or B.op_names()[0]}
    if check_identity(A, comm, opmap=omA)[0] and not check_identity(B, comm, opmap=omB)[0]:
        violations.append("A is commutative but B is not")
    if check_identity(A, anti, opmap=omA)[0] and not check_identity(B, anti, opmap=omB)[0]:
        violations.append("A is anticommutative but B is not")
    return violations


# ---------------------------------------------------------------------------
# central extensions
# ---------------------------------------------------------------------------

class Cocycle:
    """theta: A x A -> V given by s component bilinear forms (n x n each)."""

    def __init__(self, comps, dom=QQ):
        self.dom = dom
        self.comps = [[[dom.coerce(x) for x in row] for row in m]
                      for m in comps]
        self.s = len(self.comps)
        self.n = len(self.comps[0]) if self.comps else 0

    def value(self, i, j):
        return [m[i][j] for m in self.comps]


def central_extension(A, theta, op=None):
    """A_theta of dim n+s: (x+v)(y+w) = xy + theta(x,y), V annihilating.

    V always lies inside Ann(A_theta); the annihilator-component check of
    the extension method asks that Ann(A_theta) meet the embedded copy of A
    trivially (equivalently Ann(A) and the radical of theta intersect in 0),
    which is what rules out split directions.
    """
    opn = op or A.op_names()[0]
    t = A.op(opn)
    if t.arity != 2:
        raise DomainError("central extensions need a binary operation")
    dom = A.dom
    n, s = A.dim, theta.s
    if theta.n != n:
        raise DomainError("cocycle dimension mismatch")
    table = {}
    for i in range(n):
        for j in range(n):
            row = {k: c for k, c in t.basis_product((i, j)).items()}
            for a, c in enumerate(theta.value(i, j)):
                if not dom.is_zero(c):
                    row[n + a] = c
            if row:
                table[(i, j)] = row
    ext = Algebra(f"{A.name}+F^{s}", n + s,
                  {opn: StructureTensor(n + s, 2, table, dom)}, dom)
    from .invariants import annihilator_subspace
    ann = annihilator_subspace(ext, "two_sided", op=opn)
    v_basis = []
    for a in range(s):
        v = [dom.zero()] * (n + s)
        v[n + a] = dom.one()
        v_basis.append(v)
    a_basis = []
    for a in range(n):
        v = [dom.zero()] * (n + s)
        v[a] = dom.one()
        a_basis.append(v)
    meet_a = ann.intersect(Subspace(a_basis, n + s, dom))
    report = {"V_in_annihilator": all(ann.contains_vector(v) for v in v_basis),
              "annihilator_component_trivial": meet_a.dim == 0,
              "ann_dim": ann.dim}
    return ext, report


def cocycle_space(A, variety, s=1, op=None):
    """Z2/B2/H2 for the given variety (a LINEAR condition since V kills A_theta).

    Z2 is returned per extension coordinate (the s-fold space is the s-th
    power); B2 is spanned by the coboundaries f(xy).
    """
    variety_n = variety
    if variety_n not in BINARY_VARIETIES:
        from .varieties import VARIETY_ALIASES
        variety_n = VARIETY_ALIASES.get(variety_n, variety_n)
    if variety_n not in BINARY_VARIETIES:
        raise DomainError(f"unknown variety {variety!r}")
    idents = variety_identities(variety_n)
    if any(sum(term_vars(t).values()) < 2 for ident in idents
           for _, t in ident.terms):
        raise DomainError("variety identities must have degree >= 2")
    opn = op or A.op_names()[0]
    t = A.op(opn)
    dom = A.dom
    n = A.dim
    rows = []
    for ident in idents:
        for lin in polarize(ident, char=dom.char or 0):
            vs = lin.variables
            for combo in itertools.product(range(n), repeat=len(vs)):
                assignment = {v: {i: dom.one()} for v, i in zip(vs, combo)}
                row = {}
                consistent_defect = {}
                for coeff, term in lin.terms:
                    coeff = dom.coerce(coeff)
                    top = _top_split(A, term, assignment, opn)
                    if top is None:
                        continue
                    uvec, vvec, avec = top
                    # theta-component: coeff * theta(u, v); A-component check
                    for (iu, cu) in uvec.items():
                        for (iv, cv) in vvec.items():
                            key = iu * n + iv
                            row[key] = row.get(key, dom.zero()) + coeff * cu * cv
                    for k, c in avec.items():
                        consistent_defect[k] = consistent_defect.get(k, dom.zero()) + coeff * c
                if any(not dom.is_zero(c) for c in consistent_defect.values()):
                    raise DomainError(
                        f"base algebra does not satisfy the {variety!r} identities")
                row = {k: c for k, c in row.items() if not dom.is_zero(c)}
                if row:
                    rows.append(row)
    from .operators import _nullspace_rows
    z2_vecs = _nullspace_rows(rows, n * n, dom)
    Z2 = Subspace(z2_vecs, n * n, dom)
    b2_vecs = []
    for k in range(n):
        v = [dom.zero()] * (n * n)
        nonzero = False
        for i in range(n):
            for j in range(n):
                c = t.basis_product((i, j)).get(k, dom.zero())
                if not dom.is_zero(c):
                    v[i * n + j] = c
                    nonzero = True
        if nonzero:
            b2_vecs.append(v)
    B2 = Subspace(b2_vecs, n * n, dom)
    if not Z2.contains(B2):
        raise DomainError("coboundaries are not cocycles: inconsistent setup")
    return {"Z2": Z2, "B2": B2, "H2_dim": (Z2.dim - B2.dim) * s,
            "Z2_dim": Z2.dim * s, "B2_dim": B2.dim * s, "s": s}


def _top_split(A, term, assignment, opn):
    """Evaluate a term's top product in A; (left-value, right-value, A-value).

    Returns None when the term is a bare variable (impossible for degree >= 2
    identities) -- those contribute nothing to the extension's V-part.
    """
    if term[0] == "v":
        return None
    t = A.op(opn)
    left = _eval_in_A(A, term[1][0], assignment, opn)
    right = _eval_in_A(A, term[1][1], assignment, opn)
    avec = t.apply_sparse([left, right])
    return left, right, avec


def _eval_in_A(A, term, assignment, opn):
    if term[0] == "v":
        return assignment[term[1]]
    t = A.op(opn)
    return t.apply_sparse([_eval_in_A(A, term[1][0], assignment, opn),
                           _eval_in_A(A, term[1][1], assignment, opn)])


def cocycle_from_vector(vec, n, s=1, dom=QQ):
    """One flattened bilinear form -> a Cocycle with s identical slots or s=1."""
    comp = [[vec[i * n + j] for j in range(n)] for i in range(n)]
    return Cocycle([comp], dom)
