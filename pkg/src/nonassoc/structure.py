"""Structure tensors and algebras presented by structure constants.

An algebra is a finite-dimensional vector space with one or more named
multilinear operations, each stored as a sparse table mapping basis index
tuples to coefficient vectors.  All values are immutable after construction
and every function here is pure.
"""

from __future__ import annotations

import json

from .linalg import inverse, mat_vec
from .scalars import QQ, DomainError, domain_from_name


class StructureTensor:
    """Sparse arity-m multiplication table on an n-dimensional space."""

    def __init__(self, dim, arity, table, dom=QQ):
        self.dim = dim
        self.arity = arity
        self.dom = dom
        tab = {}
        for args, out in table.items():
            args = tuple(args)
            if len(args) != arity:
                raise DomainError(f"argument tuple {args} has wrong length")
            if any(not (0 <= i < dim) for i in args):
                raise DomainError(f"basis index out of range in {args}")
            if isinstance(out, dict):
                items = out.items()
            else:
                items = out
            cleaned = {}
            for k, c in items:
                c = dom.coerce(c)
                if not (0 <= k < dim):
                    raise DomainError(f"output index {k} out of range")
                if not dom.is_zero(c):
                    cleaned[k] = c
            if cleaned:
                tab[args] = cleaned
        self.table = tab

    def basis_product(self, args):
        """Sparse product of basis vectors, as {index: coeff}."""
        return self.table.get(tuple(args), {})

    def apply_sparse(self, svecs):
        """Evaluate on sparse vectors ({index: coeff} each); sparse result."""
        dom = self.dom
        out = {}
        if all(len(v) == 1 for v in svecs):
            idx = tuple(next(iter(v)) for v in svecs)
            coef = dom.one()
            for v in svecs:
                coef = coef * next(iter(v.values()))
            for k, c in self.table.get(idx, {}).items():
                s = out.get(k, dom.zero()) + coef * c
                if dom.is_zero(s):
                    out.pop(k, None)
                else:
                    out[k] = s
            return out
        for args, coeffs in self.table.items():
            prod = dom.one()
            dead = False
            for v, i in zip(svecs, args):
                c = v.get(i)
                if c is None:
                    dead = True
                    break
                prod = prod * c
            if dead:
                continue
            for k, c in coeffs.items():
                s = out.get(k, dom.zero()) + prod * c
                if dom.is_zero(s):
                    out.pop(k, None)
                else:
                    out[k] = s
        return out

    def apply(self, vectors):
        """Evaluate on dense vectors; dense result of length dim."""
        svecs = [{i: c for i, c in enumerate(v) if not self.dom.is_zero(c)}
                 for v in vectors]
        sparse = self.apply_sparse(svecs)
        out = [self.dom.zero()] * self.dim
        for k, c in sparse.items():
            out[k] = c
        return out

    def is_zero(self):
        return not self.table

    def scale(self, c):
        c = self.dom.coerce(c)
        return StructureTensor(
            self.dim, self.arity,
            {args: {k: c * v for k, v in row.items()}
             for args, row in self.table.items()}, self.dom)

    def add(self, other):
        if (other.dim, other.arity) != (self.dim, self.arity):
            raise DomainError("tensor shape mismatch")
        table = {args: dict(row) for args, row in self.table.items()}
        dom = self.dom
        for args, row in other.table.items():
            dst = table.setdefault(args, {})
            for k, c in row.items():
                s = dst.get(k, dom.zero()) + c
                if dom.is_zero(s):
                    dst.pop(k, None)
                else:
                    dst[k] = s
        return StructureTensor(self.dim, self.arity, table, dom)

    def __eq__(self, other):
        if not isinstance(other, StructureTensor):
            return NotImplemented
        if (self.dim, self.arity) != (other.dim, other.arity):
            return False
        keys = set(self.table) | set(other.table)
        dom = self.dom
        for args in keys:
            a = self.table.get(args, {})
            b = other.table.get(args, {})
            for k in set(a) | set(b):
                if not dom.is_zero(a.get(k, dom.zero()) - b.get(k, dom.zero())):
                    return False
        return True

    def __hash__(self):
        return hash((self.dim, self.arity, len(self.table)))

    def map_domain(self, dom, convert):
        return StructureTensor(
            self.dim, self.arity,
            {args: {k: convert(c) for k, c in row.items()}
             for args, row in self.table.items()}, dom)

    def __repr__(self):
        return f"StructureTensor(dim={self.dim}, arity={self.arity}, entries={len(self.table)})"


class Algebra:
    """A named algebra: shared dimension, ordered named operations.

    Optional extras: a designated unit basis index, a designated vector u
    (basis index), and a bilinear form used by form-defined products.
    """

    def __init__(self, name, dim, ops, dom=QQ, unit=None, u=None, form=None):
        self.name = name
        self.dim = dim
        self.dom = dom
        self.ops = dict(ops)
        for t in self.ops.values():
            if t.dim != dim:
                raise DomainError("operation dimension mismatch")
        self.unit = unit
        self.u = u
        self.form = form

    def op(self, name=None):
        if name is None:
            return next(iter(self.ops.values()))
        if name not in self.ops:
            raise DomainError(f"algebra {self.name!r} has no operation {name!r}")
        return self.ops[name]

    def op_names(self):
        return list(self.ops)

    def product(self, vectors, op=None):
        return self.op(op).apply(vectors)

    def basis_vector(self, i):
        v = [self.dom.zero()] * self.dim
        v[i] = self.dom.one()
        return v

    def unit_vector(self):
        if self.unit is None:
            return None
        return self.basis_vector(self.unit)

    def with_ops(self, name, ops):
        return Algebra(name, self.dim, ops, self.dom,
                       unit=self.unit, u=self.u, form=self.form)

    def __repr__(self):
        ops = ", ".join(f"{k}/{t.arity}" for k, t in self.ops.items())
        return f"Algebra({self.name!r}, dim={self.dim}, ops=[{ops}])"


def change_basis(A, P):
    """Group action (P * mu)(x1,...,xm) = P mu(P^-1 x1, ..., P^-1 xm).

    P is given over A's scalar domain and must be invertible.
    """
    dom = A.dom
    P = [[dom.coerce(x) for x in row] for row in P]
    if len(P) != A.dim or any(len(r) != A.dim for r in P):
        raise DomainError("basis-change matrix has wrong shape")
    Pinv = inverse(P, dom)
    cols = [[Pinv[i][j] for i in range(A.dim)] for j in range(A.dim)]
    new_ops = {}
    for name, t in A.ops.items():
        table = {}
        import itertools
        for args in itertools.product(range(A.dim), repeat=t.arity):
            val = t.apply([cols[i] for i in args])
            out = mat_vec(P, val, dom)
            row = {k: c for k, c in enumerate(out) if not dom.is_zero(c)}
            if row:
                table[args] = row
        new_ops[name] = StructureTensor(A.dim, t.arity, table, dom)
    unit = _transported_index(A, P, A.unit)
    u = _transported_index(A, P, A.u)
    return Algebra(A.name, A.dim, new_ops, dom, unit=unit, u=u, form=None)


def _transported_index(A, P, idx):
    # designated elements move by x -> Px; keep only if still a basis vector
    if idx is None:
        return None
    dom = A.dom
    img = [row[idx] for row in P]
    hits = [i for i, c in enumerate(img) if not dom.is_zero(c)]
    if len(hits) == 1 and img[hits[0]] == dom.one():
        return hits[0]
    return None


# ---------------------------------------------------------------------------
# JSON wire format (bit-exact contract shared by every module and the CLI)
# ---------------------------------------------------------------------------

def algebra_to_json(A):
    ops = []
    for name, t in A.ops.items():
        entries = []
        for args in sorted(t.table):
            out = [[k, A.dom.to_str(c)] for k, c in sorted(t.table[args].items())]
            entries.append({"args": list(args), "out": out})
        ops.append({"name": name, "arity": t.arity, "table": entries})
    doc = {"name": A.name, "field": A.dom.name, "dim": A.dim, "ops": ops}
    if A.unit is not None:
        doc["unit"] = A.unit
    if A.u is not None:
        doc["u"] = A.u
    if A.form is not None:
        doc["form"] = [[A.dom.to_str(c) for c in row] for row in A.form]
    return doc


def algebra_from_json(doc):
    dom = domain_from_name(doc["field"])
    dim = doc["dim"]
    ops = {}
    for op in doc["ops"]:
        table = {}
        for entry in op["table"]:
            args = tuple(entry["args"])
            table[args] = {int(k): dom.parse(c) for k, c in entry["out"]}
        ops[op["name"]] = StructureTensor(dim, op["arity"], table, dom)
    form = None
    if "form" in doc and doc["form"] is not None:
        form = [[dom.parse(c) for c in row] for row in doc["form"]]
    return Algebra(doc["name"], dim, ops, dom,
                   unit=doc.get("unit"), u=doc.get("u"), form=form)


def save_algebra(A, path):
    with open(path, "w") as fh:
        json.dump(algebra_to_json(A), fh, indent=1, sort_keys=True)
        fh.write("\n")


def load_algebra(path):
    with open(path) as fh:
        return algebra_from_json(json.load(fh))


def tensor_from_dense(dense, dom=QQ):
    """Build a binary tensor from dense n x n coefficient-vector nesting."""
    n = len(dense)
    table = {}
    for i in range(n):
        for j in range(n):
            row = {k: dom.coerce(c) for k, c in enumerate(dense[i][j])
                   if not dom.is_zero(dom.coerce(c))}
            if row:
                table[(i, j)] = row
    return StructureTensor(n, 2, table, dom)
