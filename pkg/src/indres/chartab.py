"""Exact character tables via eigenvalue splitting of class-sum matrices.

Character values are elements of Z[zeta_m], m the group exponent, stored in
canonical form on the power basis {zeta^e : 0 <= e < phi(m)}.  The whole
table is computed modulo a prime l ≡ 1 (mod m) with l > 2*sqrt(|G|) and then
lifted exactly; orthogonality of the lifted table is asserted before it is
returned, so a table object in hand is always internally consistent.
"""

import json
from dataclasses import dataclass, field
from itertools import chain
from math import isqrt, lcm

import numpy as np
import sympy

from .groupcore import ConjClassData, Permutation, class_of_power, conjugacy_classes

_REDUCTION_CACHE = {}


def _phi_reduction(m):
    """Degree d = phi(m) and reduction rows for x^e (d <= e < m) mod Phi_m."""
    if m in _REDUCTION_CACHE:
        return _REDUCTION_CACHE[m]
    x = sympy.symbols("x")
    poly = sympy.Poly(sympy.cyclotomic_poly(m, x), x)
    coeffs = [int(c) for c in poly.all_coeffs()]  # leading first, monic
    d = len(coeffs) - 1
    tail = [-c for c in coeffs[1:][::-1]]  # x^d = sum tail[i] x^i
    rows = {}
    if d < m:
        cur = list(tail)
        rows[d] = tuple(cur)
        for e in range(d + 1, m):
            nxt = [0] + cur[:-1]
            lead = cur[-1]
            if lead:
                for i in range(d):
                    nxt[i] += lead * tail[i]
            cur = nxt
            rows[e] = tuple(cur)
    _REDUCTION_CACHE[m] = (d, rows)
    return d, rows


class Cyclotomic:
    """Element of Z[zeta_m] in canonical power-basis form."""

    __slots__ = ("modulus", "terms", "_hash")

    def __init__(self, modulus, terms=None, _canonical=False):
        self.modulus = int(modulus)
        self._hash = None
        if terms is None:
            self.terms = {}
        elif _canonical:
            self.terms = terms
        else:
            self.terms = self._reduce(dict(terms))

    def _reduce(self, raw):
        d, rows = _phi_reduction(self.modulus)
        out = {}
        for e, c in raw.items():
            if not c:
                continue
            e %= self.modulus
            if e < d:
                out[e] = out.get(e, 0) + c
            else:
                for i, r in enumerate(rows[e]):
                    if r:
                        out[i] = out.get(i, 0) + c * r
        return {e: c for e, c in out.items() if c}

    @classmethod
    def from_int(cls, modulus, n):
        return cls(modulus, {0: int(n)} if n else {}, _canonical=True)

    @classmethod
    def zeta(cls, modulus, e=1, coeff=1):
        return cls(modulus, {e % modulus: coeff})

    def __add__(self, other):
        other = self._coerce(other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            c2 = t.get(e, 0) + c
            if c2:
                t[e] = c2
            else:
                t.pop(e, None)
        return Cyclotomic(self.modulus, t, _canonical=True)

    def __neg__(self):
        return Cyclotomic(
            self.modulus, {e: -c for e, c in self.terms.items()}, _canonical=True
        )

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def _coerce(self, other):
        if isinstance(other, int):
            return Cyclotomic.from_int(self.modulus, other)
        if not isinstance(other, Cyclotomic):
            raise TypeError(f"cannot combine Cyclotomic with {type(other)!r}")
        if other.modulus != self.modulus:
            raise ValueError("cyclotomic modulus mismatch")
        return other

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return Cyclotomic(self.modulus)
            return Cyclotomic(
                self.modulus,
                {e: c * other for e, c in self.terms.items()},
                _canonical=True,
            )
        other = self._coerce(other)
        m = self.modulus
        raw = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                if e >= m:
                    e -= m
                raw[e] = raw.get(e, 0) + c1 * c2
        return Cyclotomic(m, raw)

    __rmul__ = __mul__

    def galois(self, a):
        """Image under zeta -> zeta^a; a must be invertible mod the modulus."""
        m = self.modulus
        from math import gcd

        if gcd(a, m) != 1:
            raise ValueError("galois exponent not coprime to modulus")
        return Cyclotomic(m, {(e * a) % m: c for e, c in self.terms.items()})

    def conjugate(self):
        return self.galois(self.modulus - 1) if self.modulus > 1 else self

    def exact_div(self, n):
        out = {}
        for e, c in self.terms.items():
            q, r = divmod(c, n)
            if r:
                raise ValueError(f"coefficient {c} not divisible by {n}")
            out[e] = q
        return Cyclotomic(self.modulus, out, _canonical=True)

    def rebase(self, new_modulus):
        """Reinterpret in Z[zeta_M] for a multiple M of the modulus."""
        if new_modulus == self.modulus:
            return self
        if new_modulus % self.modulus:
            raise ValueError("new modulus must be a multiple")
        s = new_modulus // self.modulus
        return Cyclotomic(new_modulus, {e * s: c for e, c in self.terms.items()})

    def is_zero(self):
        return not self.terms

    def is_integer(self):
        return not self.terms or set(self.terms) == {0}

    def as_int(self):
        if not self.is_integer():
            raise ValueError(f"not a rational integer: {self!r}")
        return self.terms.get(0, 0)

    def sort_key(self):
        return tuple(sorted(self.terms.items()))

    def to_json(self):
        return {"modulus": self.modulus, "terms": sorted(self.terms.items())}

    @classmethod
    def from_json(cls, data):
        return cls(int(data["modulus"]), {int(e): int(c) for e, c in data["terms"]})

    def __eq__(self, other):
        if isinstance(other, int):
            return self.is_integer() and self.as_int() == other
        return (
            isinstance(other, Cyclotomic)
            and self.modulus == other.modulus
            and self.terms == other.terms
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.modulus, tuple(sorted(self.terms.items()))))
        return self._hash

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for e, c in sorted(self.terms.items()):
            if e == 0:
                bits.append(str(c))
            else:
                head = "" if c == 1 else ("-" if c == -1 else f"{c}*")
                bits.append(f"{head}z{self.modulus}^{e}" if e > 1 else f"{head}z{self.modulus}")
        return " + ".join(bits).replace("+ -", "- ")


class IntegrityError(ValueError):
    pass


@dataclass
class CharTable:
    """Ordinary character table, rows sorted by (degree, canonical value key)."""

    group_order: int
    exponent: int
    classes: list
    irreducibles: list  # rows of Cyclotomic values, one row per character
    degrees: list
    group: object = None
    name: str = None
    _dual: list = field(default=None, repr=False)
    _value_index: dict = field(default=None, repr=False)
    _lookup: object = field(default=None, repr=False)  # element key -> class index

    @property
    def k(self):
        return len(self.classes)

    def class_index_of_key(self, key):
        """Class index (in this table's column order) of a group element key."""
        if self._lookup is not None:
            return self._lookup(key)
        if self.group is None:
            raise ValueError("table has no group attached; cannot fuse elements")
        return self.group.class_of_key(key)

    def class_sizes(self):
        return [c.size for c in self.classes]

    def value_row(self, i):
        return self.irreducibles[i]

    def row_index(self):
        if self._value_index is None:
            self._value_index = {
                tuple(v.sort_key() for v in row): i
                for i, row in enumerate(self.irreducibles)
            }
        return self._value_index

    def find_row(self, values):
        return self.row_index().get(tuple(v.sort_key() for v in values))

    def inverse_class(self, i):
        if self.group is not None and self.classes[i].representative is not None:
            return class_of_power(self.group, i, self.classes[i].rep_order - 1)
        # the inverse class is the unique column where every row conjugates
        for j in range(self.k):
            if self.classes[j].size != self.classes[i].size:
                continue
            if all(row[j] == row[i].conjugate() for row in self.irreducibles):
                return j
        raise IntegrityError("no inverse class found; table is inconsistent")

    def dual_map(self):
        """Permutation sending each row to the row of its complex conjugate."""
        if self._dual is None:
            inv = [self.inverse_class(i) for i in range(self.k)]
            out = []
            for row in self.irreducibles:
                dual_vals = [row[inv[i]] for i in range(self.k)]
                j = self.find_row(dual_vals)
                if j is None:
                    raise IntegrityError("conjugate row missing from table")
                out.append(j)
            assert all(out[out[i]] == i for i in range(self.k))
            self._dual = out
        return self._dual


def inner_product(table, avalues, bvalues):
    """<a, b> = (1/|G|) sum |C| a(C) conj(b(C)); must be exact.

    Values may live in Z[zeta_M] for any M; the sum is taken in the least
    common overfield.  This lets restricted values from an overgroup (whose
    exponent is a multiple of this table's) be paired with native rows.
    """
    m = table.exponent
    for v in chain(avalues, bvalues):
        m = lcm(m, v.modulus)
    acc = Cyclotomic(m)
    for size, a, b in zip(table.class_sizes(), avalues, bvalues):
        acc = acc + (a.rebase(m) * b.rebase(m).conjugate()) * size
    return acc.exact_div(table.group_order)


def dual_character(table, index):
    return table.dual_map()[index]


def _dixon_prime(order, exponent, k):
    # the prime must exceed 2*sqrt(|G|) so degrees are determined by their
    # squares mod l, and exceed k so characteristic-polynomial recovery can
    # divide by 1..k
    t = 1
    while True:
        cand = t * exponent + 1
        if cand * cand > 4 * order and cand > k and sympy.isprime(cand):
            return cand
        t += 1


def _class_matrices(G):
    classes = G.class_data()
    k = len(classes)
    E = G.elements()
    Einv = G.inverses()
    index = G.element_index()
    ids = G.class_ids()
    A = np.zeros((k, k, k), dtype=np.int64)
    for l, c in enumerate(classes):
        z = np.asarray(c.representative.images, dtype=E.dtype)
        M = np.ascontiguousarray(Einv[:, z])
        new_ids = np.fromiter((ids[index[row.tobytes()]] for row in M), np.int64, len(M))
        np.add.at(A, (ids, new_ids, np.full(len(M), l)), 1)
    return A


def _charpoly_mod(R, p):
    """Characteristic polynomial coefficients mod p via Newton's identities."""
    d = len(R)
    traces = []
    Rk = np.eye(d, dtype=np.int64)
    for _ in range(d):
        Rk = (Rk @ R) % p
        traces.append(int(np.trace(Rk)) % p)
    # e_0 = 1; k e_k = sum_{i=1}^{k} (-1)^{i-1} e_{k-i} t_i
    e = [1]
    for kk in range(1, d + 1):
        s = 0
        for i in range(1, kk + 1):
            term = (e[kk - i] * traces[i - 1]) % p
            s = (s - term) if i % 2 == 0 else (s + term)
        e.append((s * pow(kk, -1, p)) % p)
    # char poly x^d - e1 x^{d-1} + e2 x^{d-2} - ...
    coeffs = [1]
    for kk in range(1, d + 1):
        coeffs.append((-e[kk]) % p if kk % 2 else e[kk] % p)
    return coeffs  # leading first


def _poly_roots_mod(coeffs, p):
    d = len(coeffs) - 1
    roots = []
    for x in range(p):
        acc = 0
        for c in coeffs:
            acc = (acc * x + c) % p
        if acc == 0:
            roots.append(x)
            if len(roots) == d:
                break
    return roots


def _rref_mod(M, p):
    """Reduced row echelon form mod p; returns (matrix, pivot columns)."""
    M = M % p
    rows, cols = M.shape
    r = 0
    pivots = []
    for c in range(cols):
        pivot = None
        for i in range(r, rows):
            if M[i, c] % p:
                pivot = i
                break
        if pivot is None:
            continue
        M[[r, pivot]] = M[[pivot, r]]
        M[r] = (M[r] * pow(int(M[r, c]), -1, p)) % p
        for i in range(rows):
            if i != r and M[i, c]:
                M[i] = (M[i] - M[i, c] * M[r]) % p
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return M[:r], pivots


def _nullspace_mod(M, p):
    """Basis rows of the kernel of M (acting on column vectors) mod p."""
    R, pivots = _rref_mod(M.copy(), p)
    cols = M.shape[1]
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = np.zeros(cols, dtype=np.int64)
        v[f] = 1
        for r, c in enumerate(pivots):
            v[c] = (-R[r, f]) % p
        basis.append(v % p)
    return basis


def _common_eigenvectors(mats, k, p):
    """Split F_p^k under the commuting matrices; returns k projective vectors."""
    spaces = [np.eye(k, dtype=np.int64)]  # each: rows spanning the subspace
    for A in mats:
        if all(len(S) == 1 for S in spaces):
            break
        out = []
        for S in spaces:
            if len(S) == 1:
                out.append(S)
                continue
            C = S.T % p  # columns span the subspace
            AC = (A @ C) % p
            # solve C R = AC column-by-column via RREF of [C | AC]
            aug, pivots = _rref_mod(np.hstack([C, AC]), p)
            d = C.shape[1]
            assert pivots[:d] == list(range(d)), "subspace basis not independent"
            R = np.zeros((d, d), dtype=np.int64)
            for r in range(len(aug)):
                if r < d:
                    R[r] = aug[r, d:]
            coeffs = _charpoly_mod(R, p)
            roots = _poly_roots_mod(coeffs, p)
            for lam in sorted(roots):
                ker = _nullspace_mod((R - lam * np.eye(d, dtype=np.int64)) % p, p)
                if not ker:
                    continue
                sub = (np.vstack(ker) @ S) % p
                sub, _ = _rref_mod(sub, p)
                out.append(sub)
        spaces = out
    assert all(len(S) == 1 for S in spaces) and len(spaces) == k
    return [S[0] % p for S in spaces]


def character_table(G, budget_order=None):
    """Irreducible character table of G with exact cyclotomic values."""
    classes = conjugacy_classes(G, budget_order=budget_order or 10**6)
    k = len(classes)
    order = G.order()
    m = G.exponent()
    p = _dixon_prime(order, m, k)
    A = _class_matrices(G)
    mats = [A[i] % p for i in range(k)]
    vecs = _common_eigenvectors(mats, k, p)

    sizes = [c.size for c in classes]
    inv_class = [class_of_power(G, i, classes[i].rep_order - 1) for i in range(k)]
    # normalize so the identity-class coordinate is 1
    omegas = []
    for v in vecs:
        assert v[0] % p, "eigenvector vanishes on the identity class"
        omegas.append((v * pow(int(v[0]), -1, p)) % p)

    g0 = sympy.primitive_root(p)
    w = pow(g0, (p - 1) // m, p)

    # power-class lookup per class
    pow_class = []
    for i, c in enumerate(classes):
        pow_class.append([class_of_power(G, i, t) for t in range(c.rep_order)])

    rows = []
    for u in omegas:
        t = 0
        for i in range(k):
            t = (t + int(u[i]) * int(u[inv_class[i]]) * pow(sizes[i], -1, p)) % p
        deg_sq = (order * pow(t, -1, p)) % p
        deg = None
        for dcand in range(1, isqrt(order) + 1):
            if (dcand * dcand) % p == deg_sq:
                deg = dcand
                break
        assert deg is not None, "degree recovery failed"
        chi_mod = [(deg * int(u[i]) * pow(sizes[i], -1, p)) % p for i in range(k)]
        values = []
        for i, c in enumerate(classes):
            n = c.rep_order
            if n == 1:
                values.append(Cyclotomic.from_int(m, deg))
                continue
            z = pow(w, m // n, p)
            n_inv = pow(n, -1, p)
            val = Cyclotomic(m)
            total = 0
            for j in range(n):
                acc = 0
                zj = pow(z, (-j) % (p - 1), p)
                zjk = 1
                for t2 in range(n):
                    acc = (acc + chi_mod[pow_class[i][t2]] * zjk) % p
                    zjk = (zjk * zj) % p
                mult = (acc * n_inv) % p
                if mult:
                    assert mult <= deg, "multiplicity lift out of range"
                    total += mult
                    val = val + Cyclotomic.zeta(m, (m // n) * j, mult)
            assert total == deg, "root-of-unity multiplicities do not sum to degree"
            values.append(val)
        rows.append((deg, values))

    rows.sort(key=lambda r: (r[0], tuple(v.sort_key() for v in r[1])))
    table = CharTable(
        group_order=order,
        exponent=m,
        classes=classes,
        irreducibles=[r[1] for r in rows],
        degrees=[r[0] for r in rows],
        group=G,
    )
    verify_table(table)
    return table


def verify_table(table):
    """Exact orthogonality, degree, and Galois-stability checks."""
    k = table.k
    order = table.group_order
    if sum(d * d for d in table.degrees) != order:
        raise IntegrityError("degree squares do not sum to the group order")
    if sum(c.size for c in table.classes) != order:
        raise IntegrityError("class sizes do not sum to the group order")
    rows = table.irreducibles
    for i in range(k):
        if not (rows[i][0].is_integer() and rows[i][0].as_int() == table.degrees[i] > 0):
            raise IntegrityError("identity-class value disagrees with the degree")
        for j in range(i, k):
            try:
                ip = inner_product(table, rows[i], rows[j])
            except ValueError as exc:
                raise IntegrityError(f"inner product not integral: {exc}") from exc
            expected = 1 if i == j else 0
            if not (ip.is_integer() and ip.as_int() == expected):
                raise IntegrityError(f"row orthogonality fails at ({i},{j})")
    sizes = table.class_sizes()
    for i in range(k):
        for j in range(i, k):
            acc = Cyclotomic(table.exponent)
            for r in range(k):
                acc = acc + rows[r][i] * rows[r][j].conjugate()
            expected = order // sizes[i] if i == j else 0
            if not (acc.is_integer() and acc.as_int() == expected):
                raise IntegrityError(f"column orthogonality fails at ({i},{j})")
    m = table.exponent
    keys = {tuple(v.sort_key() for v in row) for row in rows}
    for a in range(2, m + 1):
        from math import gcd

        if gcd(a, m) != 1:
            continue
        for row in rows:
            twisted = tuple(v.galois(a).sort_key() for v in row)
            if twisted not in keys:
                raise IntegrityError("table is not Galois stable")
        break  # one nontrivial generator-ish check per call is enough here


def galois_closed(table):
    """Full Galois stability over all residues coprime to the exponent."""
    m = table.exponent
    keys = {tuple(v.sort_key() for v in row) for row in table.irreducibles}
    from math import gcd

    for a in range(1, m):
        if gcd(a, m) != 1:
            continue
        for row in table.irreducibles:
            if tuple(v.galois(a).sort_key() for v in row) not in keys:
                return False
    return True


def table_to_json(table):
    return {
        "order": str(table.group_order),
        "exponent": table.exponent,
        "classes": [
            {
                "rep_order": c.rep_order,
                "size": c.size,
                "powermap": {str(q): int(i) for q, i in sorted(c.power_map.items())},
            }
            for c in table.classes
        ],
        "irreducibles": [[v.to_json() for v in row] for row in table.irreducibles],
    }


def save_table(table, path):
    with open(path, "w") as fh:
        json.dump(table_to_json(table), fh)


def table_from_json(data, group=None):
    classes = []
    for c in data["classes"]:
        classes.append(
            ConjClassData(
                representative=None,
                size=int(c["size"]),
                rep_order=int(c["rep_order"]),
                power_map={int(q): int(i) for q, i in c["powermap"].items()},
            )
        )
    rows = [[Cyclotomic.from_json(v) for v in row] for row in data["irreducibles"]]
    degrees = []
    for row in rows:
        if not row or not row[0].is_integer():
            raise IntegrityError("identity value of a loaded row is not an integer")
        degrees.append(row[0].as_int())
    table = CharTable(
        group_order=int(data["order"]),
        exponent=int(data["exponent"]),
        classes=classes,
        irreducibles=rows,
        degrees=degrees,
        group=None,
    )
    for c in table.classes:
        c.centralizer_order = table.group_order // c.size
    verify_table(table)
    if group is not None:
        reconcile_classes(table, group)
    return table


def load_table(path, group=None):
    with open(path) as fh:
        return table_from_json(json.load(fh), group=group)


def reconcile_classes(table, group):
    """Match loaded class data against the group's computed classes.

    The match must be a bijection preserving order, size, and power maps; the
    loaded table is re-indexed to the group's canonical class order.  When
    several bijections are consistent (classes the stored data cannot tell
    apart, as with the three order-4 classes of the quaternion group) the
    lexicographically least one is taken, so loading is deterministic.
    Raises IntegrityError when no consistent bijection exists.
    """
    own = conjugacy_classes(group)
    if len(own) != table.k:
        raise IntegrityError("class count mismatch with the supplied group")
    cand = []
    for c in table.classes:
        matches = [
            j
            for j, o in enumerate(own)
            if o.rep_order == c.rep_order and o.size == c.size
        ]
        cand.append(matches)
    # refine by power-map consistency until stable
    changed = True
    while changed:
        changed = False
        for i, c in enumerate(table.classes):
            keep = []
            for j in cand[i]:
                ok = True
                for q, ti in c.power_map.items():
                    allowed = {own_j for own_j in cand[ti]}
                    if own[j].power_map.get(q) not in allowed:
                        ok = False
                        break
                if ok:
                    keep.append(j)
            if keep != cand[i]:
                cand[i] = keep
                changed = True
    if any(not m for m in cand):
        bad = next(i for i, m in enumerate(cand) if not m)
        raise IntegrityError(f"loaded class {bad} matches no group class")
    # reverse power-map edges: rev[i] lists (source, q) with source --q--> i
    rev = [[] for _ in range(table.k)]
    for i, c in enumerate(table.classes):
        for q, ti in c.power_map.items():
            rev[ti].append((i, q))
    assign = [None] * table.k
    used = set()

    def fits(i, j):
        for q, ti in table.classes[i].power_map.items():
            tj = assign[ti]
            if tj is not None and own[j].power_map.get(q) != tj:
                return False
        for src, q in rev[i]:
            sj = assign[src]
            if sj is not None and own[sj].power_map.get(q) != j:
                return False
        return True

    def search(i):
        if i == table.k:
            return True
        for j in cand[i]:
            if j in used or not fits(i, j):
                continue
            assign[i] = j
            used.add(j)
            if search(i + 1):
                return True
            assign[i] = None
            used.remove(j)
        return False

    if not search(0):
        raise IntegrityError("loaded class data does not reconcile with the group")
    perm = assign
    # re-index: loaded class i corresponds to group class perm[i]
    inv = [0] * len(perm)
    for i, j in enumerate(perm):
        inv[j] = i
    table.classes = own
    table.irreducibles = [[row[inv[j]] for j in range(table.k)] for row in table.irreducibles]
    table.group = group
    table._dual = None
    table._value_index = None
    return table
