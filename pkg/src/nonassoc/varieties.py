"""Variety catalog and membership checking.

Binary varieties are defined by DSL identity strings (see ``identities``);
n-ary families are generated programmatically for the requested arity.
Special routes: "nary-jordan" needs a derivation-space computation,
"hom-leibniz-3" needs a supplied automorphism, and "terminal" is
cross-checked against the conservativity route.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .identities import Identity, check_identity, parse_identity
from .scalars import DomainError
from .structure import Algebra, StructureTensor

# identity texts for the binary varieties (meaning: each expression = 0)
BINARY_VARIETIES = {
    "(-1,1)": ["(x*y)*y - x*(y*y)", "(x,y,z) + (z,x,y) + (y,z,x)"],
    "alternative": ["(x,y,z) + (y,x,z)", "(x,y,z) + (x,z,y)"],
    "antiassociative": ["(x*y)*z + x*(y*z)"],
    "associative": ["(x*y)*z - x*(y*z)"],
    "assosymmetric": ["(x,y,z) - (y,x,z)", "(x,y,z) - (x,z,y)"],
    "bicommutative": ["x*(y*z) - y*(x*z)", "(x*y)*z - (x*z)*y"],
    "binary-lie": ["x*x", "((x*y)*y)*x - ((x*y)*x)*y"],
    "cd": [
        "((x*y)*a)*b - ((x*y)*b)*a - ((x*a)*b)*y + ((x*b)*a)*y - x*((y*a)*b) + x*((y*b)*a)",
        "(a*(x*y))*b - a*((x*y)*b) - ((a*x)*b)*y + (a*(x*b))*y - x*((a*y)*b) + x*(a*(y*b))",
        "a*(b*(x*y)) - b*(a*(x*y)) - (a*(b*x))*y + (b*(a*x))*y - x*(a*(b*y)) + x*(b*(a*y))",
    ],
    "cd-anticommutative": [
        "x*x",
        "((x*y)*a)*b - ((x*y)*b)*a - ((x*a)*b)*y + ((x*b)*a)*y + ((y*a)*b)*x - ((y*b)*a)*x",
    ],
    "commutative": ["x*y - y*x"],
    "commutative-associative": ["x*y - y*x", "(x*y)*z - x*(y*z)"],
    "almost-jordan": ["x*y - y*x",
                      "2 ((y*x)*x)*x + y*((x*x)*x) - 3 (y*(x*x))*x"],
    "dual-mock-lie": ["x*x", "(x*y)*z + x*(y*z)"],
    "flexible": ["(x*y)*x - x*(y*x)"],
    "jordan": ["x*y - y*x", "((x*x)*y)*x - (x*x)*(y*x)"],
    "left-symmetric": ["(x,y,z) - (y,x,z)"],
    "leibniz": ["(x*y)*z - (x*z)*y - x*(y*z)"],
    "lie": ["x*x", "(x*y)*z + (y*z)*x + (z*x)*y"],
    "malcev": ["x*x",
               "(x*y)*(x*z) + (y*(x*z))*x + ((x*z)*x)*y - ((x*y)*z)*x - ((y*z)*x)*x - ((z*x)*y)*x"],
    "mock-lie": ["x*y - y*x", "(x*y)*z + (y*z)*x + (z*x)*y"],
    "noncommutative-jordan": ["(x*y)*x - x*(y*x)", "((x*x)*y)*x - (x*x)*(y*x)"],
    "novikov": ["(x*y)*z - (x*z)*y", "(x,y,z) - (y,x,z)"],
    "right-alternative": ["(x,y,z) + (x,z,y)"],
    "right-commutative": ["(x*y)*z - (x*z)*y"],
    "symmetric-leibniz": ["x*(y*z) - (x*y)*z - y*(x*z)",
                          "(x*y)*z - (x*z)*y - x*(y*z)"],
    "terminal": [
        "3 b*(a*(x*y)) - 3 b*((a*x)*y) - 3 b*(x*(a*y))"
        " - 3 a*((b*x)*y) + 3 (a*(b*x))*y + 3 (b*x)*(a*y)"
        " - 3 a*(x*(b*y)) + 3 (a*x)*(b*y) + 3 x*(a*(b*y))"
        " + (2 a*b + b*a)*(x*y) - ((2 a*b + b*a)*x)*y - x*((2 a*b + b*a)*y)"
    ],
    "tortkara": ["x*x",
                 "(x*y)*(z*y) - ((x*y)*z)*y - ((y*z)*x)*y - ((z*x)*y)*y"],
    "weakly-associative": [
        "(x*y)*z - x*(y*z) + (y*z)*x - y*(z*x) - (y*x)*z + y*(x*z)"],
    "zinbiel": ["(x*y)*z - x*(y*z + z*y)"],
}

# aliases seen in the literature
VARIETY_ALIASES = {
    "cd-commutative": "almost-jordan",
    "minus-one-one": "(-1,1)",
}

_PARSED = {}


def variety_identities(name):
    if name in _PARSED:
        return _PARSED[name]
    texts = BINARY_VARIETIES[name]
    out = [parse_identity(t) for t in texts]
    _PARSED[name] = out
    return out


def _nary_var_terms(sym, names):
    return (sym, tuple(("v", v) for v in names))


def nary_alternating_identities(m):
    """[..,x,..,x,..] = 0 for every pair of slots (full alternation)."""
    out = []
    sig = {"[]": m}
    for a in range(m):
        for b in range(a + 1, m):
            names = []
            fresh = 0
            for s in range(m):
                if s == a or s == b:
                    names.append("x")
                else:
                    names.append(f"y{fresh}")
                    fresh += 1
            out.append(Identity([(Fraction(1), _nary_var_terms("[]", names))], sig))
    return out


def nary_commutative_identities(m):
    """[x_1..x_m] invariant under adjacent transpositions."""
    out = []
    sig = {"[]": m}
    base = [f"x{i}" for i in range(m)]
    for a in range(m - 1):
        sw = list(base)
        sw[a], sw[a + 1] = sw[a + 1], sw[a]
        out.append(Identity([(Fraction(1), _nary_var_terms("[]", base)),
                             (Fraction(-1), _nary_var_terms("[]", sw))], sig))
    return out


def filippov_identity(m):
    """[[x_1..x_m],y_2..y_m] = sum_i [x_1,..,[x_i,y_2..y_m],..,x_m]."""
    sig = {"[]": m}
    xs = [f"x{i}" for i in range(m)]
    ys = [f"y{i}" for i in range(1, m)]
    inner = _nary_var_terms("[]", xs)
    lhs = ("[]", (inner,) + tuple(("v", y) for y in ys))
    terms = [(Fraction(1), lhs)]
    for i in range(m):
        repl = ("[]", (("v", xs[i]),) + tuple(("v", y) for y in ys))
        args = tuple(repl if j == i else ("v", xs[j]) for j in range(m))
        terms.append((Fraction(-1), ("[]", args)))
    return Identity(terms, sig)


def hom_leibniz3_identity():
    """[phi(x1),phi(x2),[y1,y2,y3]] = sum of left actions (trivial grading)."""
    sig = {"[]": 3, "phi": 1}
    P = lambda v: ("phi", (("v", v),))
    V = lambda v: ("v", v)
    lhs = ("[]", (P("x1"), P("x2"), ("[]", (V("y1"), V("y2"), V("y3")))))
    r1 = ("[]", (("[]", (V("x1"), V("x2"), V("y1"))), P("y2"), P("y3")))
    r2 = ("[]", (P("y1"), ("[]", (V("x1"), V("x2"), V("y2"))), P("y3")))
    r3 = ("[]", (P("y1"), P("y2"), ("[]", (V("x1"), V("x2"), V("y3")))))
    return Identity([(Fraction(1), lhs), (Fraction(-1), r1),
                     (Fraction(-1), r2), (Fraction(-1), r3)], sig)


def list_varieties():
    names = sorted(BINARY_VARIETIES)
    names += ["n-lie", "n-leibniz", "nary-commutative", "nary-jordan",
              "hom-leibniz-3"]
    return names


def minus_algebra(A, op=None):
    """Commutator algebra: [x,y] = xy - yx."""
    t = A.op(op)
    if t.arity != 2:
        raise DomainError("minus functor needs a binary operation")
    dom = A.dom
    table = {}
    for i in range(A.dim):
        for j in range(A.dim):
            row = {}
            for k, c in t.basis_product((i, j)).items():
                row[k] = row.get(k, dom.zero()) + c
            for k, c in t.basis_product((j, i)).items():
                row[k] = row.get(k, dom.zero()) - c
            row = {k: c for k, c in row.items() if not dom.is_zero(c)}
            if row:
                table[(i, j)] = row
    return Algebra(f"{A.name}^-", A.dim,
                   {"mul": StructureTensor(A.dim, 2, table, dom)}, dom)


def plus_algebra(A, op=None):
    """Symmetrized algebra x o y = xy + yx (no 1/2 normalization)."""
    t = A.op(op)
    if t.arity != 2:
        raise DomainError("plus functor needs a binary operation")
    dom = A.dom
    table = {}
    for i in range(A.dim):
        for j in range(A.dim):
            row = {}
            for k, c in t.basis_product((i, j)).items():
                row[k] = row.get(k, dom.zero()) + c
            for k, c in t.basis_product((j, i)).items():
                row[k] = row.get(k, dom.zero()) + c
            row = {k: c for k, c in row.items() if not dom.is_zero(c)}
            if row:
                table[(i, j)] = row
    return Algebra(f"{A.name}^+", A.dim,
                   {"mul": StructureTensor(A.dim, 2, table, dom)}, dom)


def check_variety(A, name, op=None, phi=None):
    """Evaluate all defining identities of a variety on A.

    Returns a report dict: holds, failures (one witness per failed
    identity), and any precondition problems.  ``phi`` supplies the
    automorphism required by hom-leibniz-3 (a dense matrix).
    """
    name = VARIETY_ALIASES.get(name, name)
    m_ary = __import__("re").fullmatch(r"(\d+)-(lie|leibniz)", name)
    if m_ary:
        want = int(m_ary.group(1))
        if A.op(op).arity != want:
            raise DomainError(
                f"variety {name!r} needs a {want}-ary operation")
        name = f"n-{m_ary.group(2)}"
    report = {"variety": name, "holds": None, "failures": [],
              "preconditions": []}

    if name in BINARY_VARIETIES:
        tensor = A.op(op)
        if tensor.arity != 2:
            report["preconditions"].append("binary operation required")
            report["holds"] = False
            return report
        idents = variety_identities(name)
        opmap = {"*": op or A.op_names()[0]}
        holds = True
        for ident in idents:
            ok, wit = check_identity(A, ident, opmap=opmap)
            if not ok:
                holds = False
                report["failures"].append(wit)
        if name == "terminal":
            from .kantor import conservativity_test
            cons = conservativity_test(A, op=op)
            report["conservativity_terminal"] = cons.terminal
            if cons.terminal != holds:
                report["cross_check_mismatch"] = True
                raise DomainError(
                    "terminal identity route and conservativity route disagree; "
                    "flagged for review")
        report["holds"] = holds
        return report

    tensor = A.op(op)
    m = tensor.arity
    opmap = {"[]": op or A.op_names()[0]}

    if name in ("n-lie", "n-leibniz", "nary-commutative"):
        idents = [filippov_identity(m)]
        if name == "n-lie":
            idents = nary_alternating_identities(m) + idents
        if name == "nary-commutative":
            idents = nary_commutative_identities(m)
        holds = True
        for ident in idents:
            ok, wit = check_identity(A, ident, opmap=opmap)
            if not ok:
                holds = False
                report["failures"].append(wit)
        report["holds"] = holds
        return report

    if name == "nary-jordan":
        for ident in nary_commutative_identities(m):
            ok, wit = check_identity(A, ident, opmap=opmap)
            if not ok:
                report["failures"].append(wit)
                report["preconditions"].append("not totally commutative")
                report["holds"] = False
                return report
        from .operators import derivation_space, multiplication_operator
        der = derivation_space(A, delta=1, op=op or A.op_names()[0])
        holds = True
        for left in itertools.product(range(A.dim), repeat=m - 1):
            R1 = multiplication_operator(A, left, op=op)
            for right in itertools.product(range(A.dim), repeat=m - 1):
                R2 = multiplication_operator(A, right, op=op)
                from .linalg import mat_mul, mat_sub
                comm = mat_sub(mat_mul(R1, R2, A.dom), mat_mul(R2, R1, A.dom))
                if not der.contains_matrix(comm):
                    holds = False
                    report["failures"].append(
                        {"left_tuple": list(left), "right_tuple": list(right)})
                    report["holds"] = False
                    return report
        report["holds"] = holds
        return report

    if name == "hom-leibniz-3":
        if m != 3:
            report["preconditions"].append("ternary operation required")
            report["holds"] = False
            return report
        if phi is None:
            report["preconditions"].append("automorphism phi required")
            report["holds"] = False
            return report
        if not _is_automorphism(A, phi, op):
            report["preconditions"].append("phi is not an algebra automorphism")
            report["holds"] = False
            return report
        ident = hom_leibniz3_identity()
        ok, wit = check_identity(A, ident, opmap=opmap, unary_maps={"phi": phi})
        report["holds"] = ok
        if not ok:
            report["failures"].append(wit)
        return report

    raise DomainError(f"unknown variety {name!r}")


def _is_automorphism(A, phi, op=None):
    from .linalg import is_invertible, mat_vec
    dom = A.dom
    if not is_invertible(phi, dom):
        return False
    t = A.op(op)
    cols = [[phi[i][j] for i in range(A.dim)] for j in range(A.dim)]
    for args in itertools.product(range(A.dim), repeat=t.arity):
        lhs = t.apply([cols[i] for i in args])
        prod = [dom.zero()] * A.dim
        for k, c in t.basis_product(args).items():
            prod[k] = c
        rhs = mat_vec(phi, prod, dom)
        if any(not dom.is_zero(a - b) for a, b in zip(lhs, rhs)):
            return False
    return True
