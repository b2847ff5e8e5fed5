"""Virtual characters over a fixed table: induction, restriction, products.

A virtual character is an integer coefficient vector over the irreducible
rows of one CharTable.  All arithmetic stays in coefficient space; values
are materialized only when a computation genuinely needs them (decomposing
a pointwise product, testing vanishing on a set of classes).  Induction and
restriction run through a cached integer matrix of inner products, so
Frobenius reciprocity is exact by construction and the matrix itself is
what unit tests pin down.
"""

from math import lcm

from .chartab import CharTable, Cyclotomic, inner_product
from .groupcore import (
    ConjClassData,
    Permutation,
    _conj,
    _from_key,
    _key,
    class_of_power,
    prime_factors,
    product_group,
)


class ValueDomainError(ValueError):
    """A class function that should decompose integrally does not."""


class VirtualCharacter:
    """Element of the free abelian group on the rows of one table."""

    __slots__ = ("table", "coeffs")

    def __init__(self, table, coeffs):
        coeffs = tuple(int(c) for c in coeffs)
        if len(coeffs) != table.k:
            raise ValueError("coefficient count does not match the table")
        self.table = table
        self.coeffs = coeffs

    def _check(self, other):
        if not isinstance(other, VirtualCharacter):
            raise TypeError("expected a VirtualCharacter")
        if other.table is not self.table:
            raise ValueError("virtual characters live over different tables")

    def __add__(self, other):
        self._check(other)
        return VirtualCharacter(
            self.table, [a + b for a, b in zip(self.coeffs, other.coeffs)]
        )

    def __sub__(self, other):
        self._check(other)
        return VirtualCharacter(
            self.table, [a - b for a, b in zip(self.coeffs, other.coeffs)]
        )

    def __neg__(self):
        return VirtualCharacter(self.table, [-a for a in self.coeffs])

    def __mul__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        return VirtualCharacter(self.table, [n * a for a in self.coeffs])

    __rmul__ = __mul__

    def __eq__(self, other):
        return (
            isinstance(other, VirtualCharacter)
            and other.table is self.table
            and other.coeffs == self.coeffs
        )

    def __hash__(self):
        return hash((id(self.table), self.coeffs))

    def is_zero(self):
        return not any(self.coeffs)

    def degree(self):
        return sum(c * d for c, d in zip(self.coeffs, self.table.degrees))

    def support(self):
        return [i for i, c in enumerate(self.coeffs) if c]

    def value_at(self, j):
        t = self.table
        acc = Cyclotomic(t.exponent)
        for i, c in enumerate(self.coeffs):
            if c:
                acc = acc + t.irreducibles[i][j] * c
        return acc

    def values(self):
        return [self.value_at(j) for j in range(self.table.k)]

    def signed_irreducible(self):
        """(sign, row index) when this is ±(one irreducible), else None."""
        sup = self.support()
        if len(sup) != 1 or abs(self.coeffs[sup[0]]) != 1:
            return None
        return (self.coeffs[sup[0]], sup[0])

    def conjugate(self):
        dual = self.table.dual_map()
        out = [0] * self.table.k
        for i, c in enumerate(self.coeffs):
            if c:
                out[dual[i]] = c
        return VirtualCharacter(self.table, out)

    def __repr__(self):
        parts = [
            f"{'+' if c > 0 else '-'}{abs(c) if abs(c) != 1 else ''}x{i}"
            for i, c in enumerate(self.coeffs)
            if c
        ]
        return f"VirtualCharacter({''.join(parts) or '0'})"


def irr(table, i):
    coeffs = [0] * table.k
    coeffs[i] = 1
    return VirtualCharacter(table, coeffs)


def zero(table):
    return VirtualCharacter(table, [0] * table.k)


def trivial_index(table):
    one = Cyclotomic.from_int(table.exponent, 1)
    for i, row in enumerate(table.irreducibles):
        if table.degrees[i] == 1 and all(v == one for v in row):
            return i
    raise ValueError("table has no trivial row; it is not a character table")


def trivial(table):
    return irr(table, trivial_index(table))


def regular(table):
    return VirtualCharacter(table, table.degrees)


def inner(a, b):
    """<a, b> for two virtual characters over the same table (an integer)."""
    a._check(b)
    return sum(x * y for x, y in zip(a.coeffs, b.coeffs))


def from_values(table, values):
    """Exact decomposition of a class function into the table's rows.

    Raises ValueDomainError when any coefficient fails to be a rational
    integer, so the return value is always a genuine virtual character.
    """
    if len(values) != table.k:
        raise ValueError("one value per class is required")
    values = [
        v if isinstance(v, Cyclotomic) else Cyclotomic.from_int(table.exponent, v)
        for v in values
    ]
    coeffs = []
    for row in table.irreducibles:
        try:
            coeffs.append(inner_product(table, values, row).as_int())
        except ValueError as exc:
            raise ValueDomainError(str(exc)) from exc
    return VirtualCharacter(table, coeffs)


def pointwise_product(a, b):
    """Product of class functions; characters are closed under it."""
    a._check(b)
    vals = [x * y.rebase(x.modulus) for x, y in zip(a.values(), b.values())]
    return from_values(a.table, vals)


# -- fusion and the induction/restriction matrix ----------------------------

_FUSION_CACHE = {}
_RES_CACHE = {}


def class_fusion(big, small):
    """For each class of the small table, its class index in the big table.

    The small table must carry class representatives that are literally
    elements of the big table's group (same ambient degree).
    """
    key = (id(big), id(small))
    hit = _FUSION_CACHE.get(key)
    if hit is not None and hit[0] is big and hit[1] is small:
        return hit[2]
    fused = []
    for c in small.classes:
        if c.representative is None:
            raise ValueError("small table lacks class representatives")
        try:
            fused.append(big.class_index_of_key(_key(c.representative.images)))
        except KeyError:
            raise ValueError(
                "class representative does not lie in the big group"
            ) from None
    _FUSION_CACHE[key] = (big, small, fused)
    return fused


def restriction_matrix(big, small):
    """R[i][j] = <Res chi_i, psi_j> over the small table; exact integers.

    Rows index the big table's irreducibles, columns the small table's.
    Induction and restriction are R and its transpose acting on coefficient
    vectors, which makes Frobenius reciprocity automatic.
    """
    key = (id(big), id(small))
    hit = _RES_CACHE.get(key)
    if hit is not None and hit[0] is big and hit[1] is small:
        return hit[2]
    fused = class_fusion(big, small)
    M = lcm(big.exponent, small.exponent)
    sizes = small.class_sizes()
    order = small.group_order
    weighted_conj = [
        [v.rebase(M).conjugate() * s for v, s in zip(row, sizes)]
        for row in small.irreducibles
    ]
    R = []
    for i in range(big.k):
        brow = big.irreducibles[i]
        avals = [brow[f].rebase(M) for f in fused]
        Ri = []
        for crow in weighted_conj:
            acc = Cyclotomic(M)
            for a, c in zip(avals, crow):
                acc = acc + a * c
            Ri.append(acc.exact_div(order).as_int())
        R.append(Ri)
    _RES_CACHE[key] = (big, small, R)
    return R


def induce(phi, big):
    """Frobenius induction to the big table's group."""
    R = restriction_matrix(big, phi.table)
    coeffs = [
        sum(R[i][j] * c for j, c in enumerate(phi.coeffs) if c)
        for i in range(big.k)
    ]
    return VirtualCharacter(big, coeffs)


def restrict(chi, small):
    """Restriction to the small table's group."""
    R = restriction_matrix(chi.table, small)
    coeffs = [
        sum(R[i][j] * c for i, c in enumerate(chi.coeffs) if c)
        for j in range(small.k)
    ]
    return VirtualCharacter(small, coeffs)


# -- direct products ---------------------------------------------------------

def product_table(tA, tB):
    """Tensor table of a direct product, classes and rows in pair order.

    Class (a, b) has index a*kB + b, row (i, j) likewise; the row-(i, j)
    value at class (a, b) is the product of the factor values.  Both factor
    tables must carry groups; the product group acts on the disjoint union
    of the factors' points and is attached for subgroup computations, while
    class identification goes through the pair structure, not the product
    group's own class order.
    """
    if tA.group is None or tB.group is None:
        raise ValueError("product_table needs both factor groups")
    GA, GB = tA.group, tB.group
    dA = GA.degree
    kA, kB = tA.k, tB.k
    M = lcm(tA.exponent, tB.exponent)
    order = tA.group_order * tB.group_order

    classes = []
    for a in tA.classes:
        arep = a.representative.images
        for b in tB.classes:
            rep = Permutation(tuple(arep) + tuple(x + dA for x in b.representative.images))
            classes.append(
                ConjClassData(
                    representative=rep,
                    size=a.size * b.size,
                    rep_order=lcm(a.rep_order, b.rep_order),
                    power_map={},
                    centralizer_order=a.centralizer_order * b.centralizer_order,
                )
            )
    for q in prime_factors(order):
        for ia in range(kA):
            pa = class_of_power(GA, ia, q)
            for ib in range(kB):
                pb = class_of_power(GB, ib, q)
                classes[ia * kB + ib].power_map[q] = pa * kB + pb

    rows = []
    degrees = []
    for i in range(kA):
        rowA = [v.rebase(M) for v in tA.irreducibles[i]]
        for j in range(kB):
            rowB = [v.rebase(M) for v in tB.irreducibles[j]]
            rows.append([va * vb for va in rowA for vb in rowB])
            degrees.append(tA.degrees[i] * tB.degrees[j])
    assert sum(d * d for d in degrees) == order

    dualA, dualB = tA.dual_map(), tB.dual_map()
    dual = [dualA[i] * kB + dualB[j] for i in range(kA) for j in range(kB)]

    def lookup(key):
        images = _from_key(key)
        left = tuple(images[:dA])
        right = tuple(x - dA for x in images[dA:])
        return tA.class_index_of_key(_key(left)) * kB + tB.class_index_of_key(
            _key(right)
        )

    t = CharTable(
        group_order=order,
        exponent=M,
        classes=classes,
        irreducibles=rows,
        degrees=degrees,
        group=product_group(GA, GB),
        name=f"({tA.name} x {tB.name})" if tA.name and tB.name else None,
        _dual=dual,
        _lookup=lookup,
    )
    t._factors = (tA, tB)
    return t


def outer_product(chi, theta, prod):
    """(chi x theta)(g, h) = chi(g) theta(h) as a row-coefficient tensor."""
    factors = getattr(prod, "_factors", None)
    if factors is None or factors[0] is not chi.table or factors[1] is not theta.table:
        raise ValueError("product table does not match the factor tables")
    kB = theta.table.k
    coeffs = [0] * prod.k
    for i, a in enumerate(chi.coeffs):
        if a:
            for j, b in enumerate(theta.coeffs):
                if b:
                    coeffs[i * kB + j] = a * b
    return VirtualCharacter(prod, coeffs)


# -- projections and counts ---------------------------------------------------

def is_normal_in(small_group, big_group):
    """Generator-wise normality test (conjugates of generators stay inside)."""
    keys = frozenset(small_group.element_keys())
    for g in big_group.generators:
        for x in small_group.generators:
            if _key(_conj(g.images, x.images)) not in keys:
                return False
    return True


def pi_phi(chi, phi):
    """Projection of chi onto the constituents lying over one Irr of a
    normal subgroup: keeps exactly the rows whose restriction contains phi.
    """
    tG, tL = chi.table, phi.table
    if tG.group is None or tL.group is None:
        raise ValueError("projection needs both groups attached")
    signed = phi.signed_irreducible()
    if signed is None or signed[0] != 1:
        raise ValueError("phi must be a single irreducible")
    if not is_normal_in(tL.group, tG.group):
        raise ValueError("the small group is not normal in the big group")
    R = restriction_matrix(tG, tL)
    j = signed[1]
    coeffs = [c if R[i][j] else 0 for i, c in enumerate(chi.coeffs)]
    return VirtualCharacter(tG, coeffs)


def p_prime_part(n, p):
    while n % p == 0:
        n //= p
    return n


def ml_counts(table, p, mode="global", subset=None):
    """Character counts by degree residue, folded under l ~ -l (mod p).

    global mode buckets chi(1) mod p, skipping degrees divisible by p;
    p-prime-part mode buckets the p'-part of chi(1), so every character in
    the subset lands in some bucket.  The subset is a row index iterable
    (default: all rows).
    """
    if mode not in ("global", "p-prime-part"):
        raise ValueError(f"unknown mode {mode!r}")
    residues = [1] if p == 2 else list(range(1, (p - 1) // 2 + 1))
    counts = {l: 0 for l in residues}
    rows = range(table.k) if subset is None else subset
    for i in rows:
        d = table.degrees[i]
        if mode == "p-prime-part":
            d = p_prime_part(d, p)
        r = d % p
        if r == 0:
            continue
        counts[min(r, p - r)] += 1
    return counts


def p_singular_classes(table, p):
    """Indices of classes whose elements have order divisible by p."""
    return [j for j, c in enumerate(table.classes) if c.rep_order % p == 0]


def vanishes_on(chi, class_indices):
    return all(chi.value_at(j).is_zero() for j in class_indices)
