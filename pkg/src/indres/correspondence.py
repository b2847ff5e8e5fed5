"""Induced-character lattices and the correspondence property checks.

Everything is decided inside integer coefficient lattices over the rows of
the two character tables: the induced lattice from qualifying elementary
subgroups, the coordinate lattices spanned by character subsets, their sums
and intersections.  Property verdicts therefore come with finite witnesses
(a signed matching) or certificates (a character whose image misses the
lattice), never with numerical tolerance.
"""

from dataclasses import dataclass, field

from .blocks import (
    ModularReduction,
    block_partition,
    brauer_correspondent,
    char_subsets,
    some_defect_group_inside,
)
from .chartab import character_table
from .classfun import (
    VirtualCharacter,
    induce,
    irr,
    ml_counts,
    p_prime_part,
    product_table,
    restriction_matrix,
)
from .groupcore import (
    IntersectionSetMaxima,
    Permutation,
    elementary_covering_family,
    intersection_set_maxima,
    normalizer,
    qualifying_elementary_subgroups,
    sylow_subgroup,
    v_p,
)
from .lattice import (
    IntLattice,
    coordinate_lattice,
    coordinate_restrict,
    lattice_sum,
    quotient_shape,
)

PROPERTIES = ("irc", "wirc", "wircstar", "pres", "pind")


# -- instance bundle ---------------------------------------------------------

@dataclass
class Instance:
    """One (G, p, P, H) quadruple with its tables and intersection data."""

    p: int
    tG: object
    tH: object
    P: object
    s_maxima: object
    name: str = ""
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def G(self):
        return self.tG.group

    @property
    def H(self):
        return self.tH.group


_TABLE_CACHE = {}


def table_for(group, name=None):
    """Character table of a subgroup, cached by element set."""
    key = frozenset(group.element_keys())
    hit = _TABLE_CACHE.get(key)
    if hit is None:
        hit = character_table(group)
        hit.name = name
        _TABLE_CACHE[key] = hit
    return hit


def make_instance(G, p, P=None, H=None, tG=None, tH=None, name=""):
    if P is None:
        P = sylow_subgroup(G, p)
    if H is None:
        H = normalizer(G, P)
    tG = tG if tG is not None else table_for(G, name or None)
    if tG.group is None:
        raise ValueError("the big table must have its group attached")
    tH = tH if tH is not None else table_for(H, f"{name}-H" if name else None)
    smax = intersection_set_maxima(G, P, H)
    return Instance(p=p, tG=tG, tH=tH, P=P, s_maxima=smax, name=name)


# -- lattice builders ---------------------------------------------------------

def build_induced_lattice(inst, target):
    """The lattice spanned by inductions from qualifying elementary subgroups.

    target is "G" or "H"; qualification means a target-conjugate of the
    subgroup's Sylow p-part lies inside a member of the intersection set.
    """
    key = ("lat", target)
    if key in inst._cache:
        return inst._cache[key]
    table = inst.tG if target == "G" else inst.tH
    group = table.group
    L = IntLattice(table.k)
    if inst.s_maxima.maxima:
        subs = qualifying_elementary_subgroups(group, inst.p, inst.P, inst.s_maxima)
        for E in subs:
            tE = table_for(E)
            for i in range(tE.k):
                L.insert(induce(irr(tE, i), table).coeffs)
    inst._cache[key] = L
    return L


def blocks_of(inst, side):
    key = ("blocks", side)
    if key in inst._cache:
        return inst._cache[key]
    table = inst.tG if side == "G" else inst.tH
    out = block_partition(table, inst.p)
    inst._cache[key] = out
    return out


def subsets_of(inst, side):
    """(Irr(·,P), Irr_0(·,P), Irr^p(·,P)) for the chosen side."""
    key = ("subsets", side)
    if key in inst._cache:
        return inst._cache[key]
    table = inst.tG if side == "G" else inst.tH
    out = char_subsets(table, inst.p, inst.P, blks=blocks_of(inst, side))
    inst._cache[key] = out
    return out


def cp_plus_lattice(inst, side):
    """C^p(side, P) + I(side, P, S), the (WIRC)/(pRes)/(pInd) modulus."""
    key = ("cp+I", side)
    if key in inst._cache:
        return inst._cache[key]
    table = inst.tG if side == "G" else inst.tH
    _, _, irrp = subsets_of(inst, side)
    out = lattice_sum(
        coordinate_lattice(table.k, irrp), build_induced_lattice(inst, side)
    )
    inst._cache[key] = out
    return out


def proj_res_vector(inst, i):
    """Proj_P Res^G_H of the i-th irreducible, as an H-coefficient vector."""
    R = restriction_matrix(inst.tG, inst.tH)
    keep = set(subsets_of(inst, "H")[0])
    return [R[i][j] if j in keep else 0 for j in range(inst.tH.k)]


def ind_vector(inst, j):
    """Ind^G_H of the j-th irreducible of H, as a G-coefficient vector."""
    R = restriction_matrix(inst.tG, inst.tH)
    return [R[i][j] for i in range(inst.tG.k)]


# -- block pairing under the correspondence -----------------------------------

def reduction_for(inst):
    key = ("reduction",)
    if key in inst._cache:
        return inst._cache[key]
    red = ModularReduction(inst.p, inst.tG.exponent)
    inst._cache[key] = red
    return red


def blocks_with_defect_group_P(inst, side):
    """Blocks whose defect group is conjugate (in the side's group) to P."""
    table = inst.tG if side == "G" else inst.tH
    target = v_p(inst.P.order(), inst.p)
    out = []
    for b in blocks_of(inst, side):
        if b.defect != target:
            continue
        if some_defect_group_inside(table, b, inst.p, inst.P):
            out.append(b)
    return out


def correspondent_of(inst, b):
    """The H-block e with defect group P and e^G = b, or None."""
    key = ("corr", b.index)
    if key in inst._cache:
        return inst._cache[key]
    red = reduction_for(inst)
    bsG = block_partition(inst.tG, inst.p, reduction=red)
    found = None
    for e in blocks_with_defect_group_P(inst, "H"):
        eG = brauer_correspondent(inst.tH, e, inst.tG, bsG, red)
        if eG is not None and eG.char_indices == b.char_indices:
            found = e
            break
    inst._cache[key] = found
    return found


# -- property verdicts ---------------------------------------------------------

@dataclass
class Verdict:
    prop: str
    holds: bool
    witness: list = None
    certificate: str = None
    level: str = "global"


def _h_side_sets(inst, block_pair):
    """Irr_0 and Irr^p for the H side, global or block-substituted."""
    if block_pair is None:
        _, irr0, irrp = subsets_of(inst, "H")
        return list(irr0), list(irrp)
    _, e = block_pair
    hz = e.height_zero(inst.tH, inst.p)
    return list(hz), [i for i in e.char_indices if i not in hz]


def _g_side_sets(inst, block_pair):
    if block_pair is None:
        _, irr0, irrp = subsets_of(inst, "G")
        return list(irr0), list(irrp)
    b, _ = block_pair
    hz = b.height_zero(inst.tG, inst.p)
    return list(hz), [i for i in b.char_indices if i not in hz]


def _modulus_lattice(inst, side, block_pair, with_cp):
    """I(side,P,S), plus C^p of the (possibly block-substituted) side."""
    L = build_induced_lattice(inst, side)
    if not with_cp:
        return L
    if block_pair is None:
        return cp_plus_lattice(inst, side)
    table = inst.tG if side == "G" else inst.tH
    _, irrp = (_g_side_sets if side == "G" else _h_side_sets)(inst, block_pair)
    return lattice_sum(coordinate_lattice(table.k, irrp), L)


def _lex_signed_matching(rows, cols, edge_sign):
    """Lexicographically least perfect matching on index lists.

    edge_sign(i, j) returns +1, -1 (preferring +1 when both fit) or None.
    Returns a list of (i, sign, j) or None when no perfect matching exists.
    """
    adj = {i: [j for j in cols if edge_sign(i, j) is not None] for i in rows}

    def max_matching(order, banned):
        match = {}

        def try_assign(i, seen):
            for j in adj[i]:
                if (i, j) in banned or j in seen:
                    continue
                seen.add(j)
                if j not in match or try_assign(match[j], seen):
                    match[j] = i
                    return True
            return False

        size = 0
        for i in order:
            if try_assign(i, set()):
                size += 1
        return size

    n = len(rows)
    if len(cols) != n or max_matching(rows, set()) != n:
        return None
    banned = set()
    chosen = []
    remaining = list(rows)
    free_cols = list(cols)
    for i in list(rows):
        for j in free_cols:
            if edge_sign(i, j) is None or (i, j) in banned:
                continue
            rest = [r for r in remaining if r != i]
            sub_banned = banned | {(r, j) for r in rest}
            saved_adj = adj[i]
            adj[i] = [j]
            ok = max_matching([i] + rest, sub_banned) == len(remaining)
            adj[i] = saved_adj
            if ok:
                chosen.append((i, edge_sign(i, j), j))
                remaining.remove(i)
                free_cols.remove(j)
                banned |= {(i, jj) for jj in free_cols}
                banned |= {(r, j) for r in remaining}
                break
        else:
            return None
    return chosen


def check_property(inst, which, block_pair=None):
    """Decide one of the five correspondence properties.

    block_pair is None for the global property or (b, e) with b a block of
    G having defect group P and e its correspondent in H.
    """
    which = which.lower()
    if which not in PROPERTIES:
        raise ValueError(f"unknown property {which!r}")
    level = "global" if block_pair is None else f"block:{block_pair[0].index}"

    if which == "pres":
        L = _modulus_lattice(inst, "H", block_pair, with_cp=True)
        _, irrp_g = _g_side_sets(inst, block_pair)
        for i in irrp_g:
            if not L.contains(proj_res_vector(inst, i)):
                return Verdict(
                    which, False, certificate=f"Proj Res of row {i} escapes", level=level
                )
        return Verdict(which, True, level=level)

    if which == "pind":
        L = _modulus_lattice(inst, "G", block_pair, with_cp=True)
        _, irrp_h = _h_side_sets(inst, block_pair)
        for j in irrp_h:
            if not L.contains(ind_vector(inst, j)):
                return Verdict(
                    which, False, certificate=f"Ind of row {j} escapes", level=level
                )
        return Verdict(which, True, level=level)

    irr0_g, _ = _g_side_sets(inst, block_pair)
    irr0_h, _ = _h_side_sets(inst, block_pair)
    if len(irr0_g) != len(irr0_h):
        return Verdict(
            which,
            False,
            certificate=f"|Irr0| mismatch: {len(irr0_g)} vs {len(irr0_h)}",
            level=level,
        )

    if which in ("irc", "wirc"):
        L = _modulus_lattice(inst, "H", block_pair, with_cp=(which == "wirc"))
        targets = {i: proj_res_vector(inst, i) for i in irr0_g}

        def edge_sign(i, j):
            # s*phi_j - Proj Res chi_i must fall in the modulus lattice
            base = targets[i]
            for s in (1, -1):
                v = list(base)
                v[j] -= s
                if L.contains(v):
                    return s
            return None

    else:  # wircstar
        L = _modulus_lattice(inst, "G", block_pair, with_cp=True)
        inds = {j: ind_vector(inst, j) for j in irr0_h}

        def edge_sign(i, j):
            # chi_i - s*Ind phi_j must fall in the modulus lattice
            for s in (1, -1):
                v = [-s * x for x in inds[j]]
                v[i] += 1
                if L.contains(v):
                    return s
            return None

    matching = _lex_signed_matching(irr0_g, irr0_h, edge_sign)
    if matching is None:
        return Verdict(which, False, certificate="no perfect signed matching", level=level)
    return Verdict(which, True, witness=matching, level=level)


def degree_congruences_hold(inst, matching, block_pair=None):
    """Check chi(1)_{p'} = +-|G:H|_{p'} F(chi)(1)_{p'} mod p on a matching."""
    p = inst.p
    m = p_prime_part(inst.tG.group_order // inst.tH.group_order, p)
    for i, s, j in matching:
        lhs = p_prime_part(inst.tG.degrees[i], p) % p
        rhs = (m * p_prime_part(inst.tH.degrees[j], p)) % p
        if lhs != rhs and lhs != (-rhs) % p:
            return False
    return True


# -- quotients of Section-style reports ----------------------------------------

def quotients_q1_q2(inst):
    """Global and per-block Q1, Q2 for the H side.

    Q1 = C(H,P) / (I ∩ C(H,P)); Q2 = C(H,P) / ((C^p(H,P) + I) ∩ C(H,P)).
    Per-block pieces cut C(H,e) out of the ambient, one for each block b of
    G having P as a defect group, with e the correspondent of b in H,
    ordered by (defect desc, least character index of b).
    """
    tH = inst.tH
    IH = build_induced_lattice(inst, "H")
    irr_hp, _, _ = subsets_of(inst, "H")
    S2 = cp_plus_lattice(inst, "H")
    amb = coordinate_lattice(tH.k, irr_hp)
    q1 = quotient_shape(amb, coordinate_restrict(IH, irr_hp))
    q2 = quotient_shape(amb, coordinate_restrict(S2, irr_hp))
    per_block = []
    eligible = blocks_with_defect_group_P(inst, "G")
    eligible.sort(key=lambda b: (-b.defect, b.char_indices[0]))
    for b in eligible:
        e = correspondent_of(inst, b)
        if e is None:
            continue
        coords = list(e.char_indices)
        amb_e = coordinate_lattice(tH.k, coords)
        q1e = quotient_shape(amb_e, coordinate_restrict(IH, coords))
        q2e = quotient_shape(amb_e, coordinate_restrict(S2, coords))
        per_block.append((b.index, q1e, q2e))
    return q1, q2, per_block


def block_splitting_holds(inst, side):
    """Proposition-style theorem check: I splits as the sum of its block parts."""
    table = inst.tG if side == "G" else inst.tH
    L = build_induced_lattice(inst, side)
    total = IntLattice(table.k)
    for b in blocks_of(inst, side):
        total = lattice_sum(total, coordinate_restrict(L, list(b.char_indices)))
    return total == L


def theorem26_selftest(inst):
    """Mutual-inverse check for Proj Res and Ind between C(G,P) and C(H,P)."""
    tG, tH = inst.tG, inst.tH
    IH = build_induced_lattice(inst, "H")
    IG = build_induced_lattice(inst, "G")
    irr_gp, _, _ = subsets_of(inst, "G")
    irr_hp, _, _ = subsets_of(inst, "H")
    hp = set(irr_hp)
    R = restriction_matrix(tG, tH)
    for j in irr_hp:
        # Proj_P Res Ind psi_j - psi_j must lie in I(H,P,S) ∩ C(H,P)
        ind = ind_vector(inst, j)
        back = [0] * tH.k
        for i, c in enumerate(ind):
            if c:
                for jj in range(tH.k):
                    if R[i][jj]:
                        back[jj] += c * R[i][jj]
        vec = [
            (back[jj] - (1 if jj == j else 0)) if jj in hp else 0
            for jj in range(tH.k)
        ]
        if not IH.contains(vec):
            return False
    # C(G,P) ⊆ Ind(C(H,P)) + I(G,P,S)
    span = IntLattice(tG.k)
    for j in irr_hp:
        span.insert(ind_vector(inst, j))
    span = lattice_sum(span, IG)
    for i in irr_gp:
        e = [0] * tG.k
        e[i] = 1
        if not span.contains(e):
            return False
    return True


def brauer_completeness_check(group, table=None):
    """Inductions from all elementary subgroups must span all of C(G)."""
    table = table if table is not None else table_for(group)
    L = IntLattice(table.k)
    for E in elementary_covering_family(group):
        tE = table_for(E)
        for i in range(tE.k):
            L.insert(induce(irr(tE, i), table).coeffs)
    expect = tuple(
        tuple(1 if a == b else 0 for a in range(table.k)) for b in range(table.k)
    )
    return L.canonical() == expect


def isaacs_navarro_check(inst, block_pair=None):
    """Count comparison M_l; returns (ok, G-side table, H-side table)."""
    p = inst.p
    m = p_prime_part(inst.tG.group_order // inst.tH.group_order, p)
    if block_pair is None:
        cG = ml_counts(inst.tG, p, mode="global")
        cH = ml_counts(inst.tH, p, mode="global")
    else:
        b, e = block_pair
        cG = ml_counts(
            inst.tG, p, mode="p-prime-part", subset=b.height_zero(inst.tG, p)
        )
        cH = ml_counts(
            inst.tH, p, mode="p-prime-part", subset=e.height_zero(inst.tH, p)
        )
    ok = True
    for l in cH:
        ml = (m * l) % p
        ml = min(ml, p - ml)
        if cG[ml] != cH[l]:
            ok = False
    return ok, cG, cH


# -- omega, mu transforms, property (G) ----------------------------------------

def pair_table(inst):
    key = ("prod",)
    if key in inst._cache:
        return inst._cache[key]
    prod = product_table(inst.tG, inst.tH)
    inst._cache[key] = prod
    return prod


def omega_character(inst, b, e):
    """omega = sum <Res chi, phi> (chi x conj(phi)) over the block pair."""
    prod = pair_table(inst)
    R = restriction_matrix(inst.tG, inst.tH)
    dualH = inst.tH.dual_map()
    kH = inst.tH.k
    coeffs = [0] * prod.k
    for i in b.char_indices:
        for j in e.char_indices:
            if R[i][j]:
                coeffs[i * kH + dualH[j]] += R[i][j]
    return VirtualCharacter(prod, coeffs)


def I_transform(mu, phi):
    """I_mu: C(H) -> C(G) in coefficient space."""
    tG, tH = mu.table._factors
    if phi.table is not tH:
        raise ValueError("phi must live over the H factor")
    dualH = tH.dual_map()
    kH = tH.k
    out = [0] * tG.k
    for t, c in enumerate(mu.coeffs):
        if c:
            i, j = divmod(t, kH)
            out[i] += c * phi.coeffs[dualH[j]]
    return VirtualCharacter(tG, out)


def R_transform(mu, chi):
    """R_mu: C(G) -> C(H) in coefficient space."""
    tG, tH = mu.table._factors
    if chi.table is not tG:
        raise ValueError("chi must live over the G factor")
    dualG = tG.dual_map()
    kH = tH.k
    out = [0] * tH.k
    for t, c in enumerate(mu.coeffs):
        if c:
            i, j = divmod(t, kH)
            out[j] += c * chi.coeffs[dualG[i]]
    return VirtualCharacter(tH, out)


def _s_is_trivial(inst):
    return all(S.order() == 1 for S in inst.s_maxima.maxima)


def product_induced_lattice(inst):
    """I(G x H, diag P, diag S) built over the product group."""
    key = ("prodlat",)
    if key in inst._cache:
        return inst._cache[key]
    prod = pair_table(inst)
    GH = prod.group
    dG = inst.G.degree
    diag = lambda g: Permutation(tuple(g.images) + tuple(x + dG for x in g.images))
    dP = GH.subgroup([diag(g) for g in inst.P.generators])
    dmax = [
        GH.subgroup([diag(g) for g in S.generators]) for S in inst.s_maxima.maxima
    ]
    smax = IntersectionSetMaxima(maxima=dmax, witness_cosets=[])
    L = IntLattice(prod.k)
    if dmax:
        for E in qualifying_elementary_subgroups(GH, inst.p, dP, smax):
            tE = table_for(E)
            for i in range(tE.k):
                L.insert(induce(irr(tE, i), prod).coeffs)
    inst._cache[key] = L
    return L


def check_property_G_with_witness(inst, b, e, mu):
    """Property (G) for a supplied witness mu over the product table.

    Checks that mu is supported on the block pair, that mu - omega lies in
    the diagonal induced lattice (when every intersection maximum is
    trivial this is vanishing on p-singular product classes), and that the
    transforms send height-zero irreducibles to single height-zero
    constituents with multiplicity +-1.
    """
    prod = pair_table(inst)
    if mu.table is not prod:
        raise ValueError("mu must live over this instance's product table")
    kH = inst.tH.k
    dualH = inst.tH.dual_map()
    bset = set(b.char_indices)
    ebar = {dualH[j] for j in e.char_indices}
    for t in mu.support():
        i, j = divmod(t, kH)
        if i not in bset or j not in ebar:
            raise ValueError("mu is not supported on the block pair")

    diff = mu - omega_character(inst, b, e)
    if _s_is_trivial(inst):
        p = inst.p
        singular = [
            t
            for t, c in enumerate(prod.classes)
            if c.rep_order % p == 0
        ]
        ok_lattice = all(diff.value_at(t).is_zero() for t in singular)
    else:
        ok_lattice = product_induced_lattice(inst).contains(diff.coeffs)
    if not ok_lattice:
        return False

    hz_b = set(b.height_zero(inst.tG, inst.p))
    hz_e = set(e.height_zero(inst.tH, inst.p))
    mubar = mu.conjugate()
    for j in hz_e:
        v = I_transform(mu, irr(inst.tH, j))
        hits = [i for i in v.support() if i in hz_b]
        if len(hits) != 1 or abs(v.coeffs[hits[0]]) != 1:
            return False
    for i in hz_b:
        w = R_transform(mubar, irr(inst.tG, i))
        hits = [j for j in w.support() if j in hz_e]
        if len(hits) != 1 or abs(w.coeffs[hits[0]]) != 1:
            return False
    return True


# -- assembled report -----------------------------------------------------------

@dataclass
class PropertyReport:
    instance: dict
    s_maxima: list
    lattice_ranks: dict
    q1: object
    q2: object
    per_block: list
    verdicts: dict
    ml_global: tuple
    ml_ok: bool

    def to_json(self):
        def shape(q):
            return {"free_rank": q.free_rank, "torsion": list(q.torsion)}

        return {
            "instance": self.instance,
            "s_maxima": self.s_maxima,
            "lattice_ranks": self.lattice_ranks,
            "q1": shape(self.q1),
            "q2": shape(self.q2),
            "per_block": [
                {"block": i, "q1": shape(a), "q2": shape(bq)}
                for i, a, bq in self.per_block
            ],
            "verdicts": {
                k: {
                    "holds": v.holds,
                    "witness": v.witness,
                    "certificate": v.certificate,
                    "level": v.level,
                }
                for k, v in self.verdicts.items()
            },
            "ml_counts": {
                "big": self.ml_global[0],
                "small": self.ml_global[1],
                "equal": self.ml_ok,
            },
        }


def full_report(inst, props=PROPERTIES, block_pair=None):
    verdicts = {}
    for w in props:
        verdicts[w] = check_property(inst, w, block_pair=block_pair)
        if verdicts[w].holds and verdicts[w].witness:
            assert degree_congruences_hold(inst, verdicts[w].witness, block_pair)
    q1, q2, per_block = quotients_q1_q2(inst)
    ml_ok, cG, cH = isaacs_navarro_check(inst, block_pair)
    return PropertyReport(
        instance={
            "name": inst.name,
            "p": inst.p,
            "order": inst.tG.group_order,
            "h_order": inst.tH.group_order,
            "p_subgroup_order": inst.P.order(),
        },
        s_maxima=[S.order() for S in inst.s_maxima.maxima],
        lattice_ranks={
            "H": build_induced_lattice(inst, "H").rank,
            "G": build_induced_lattice(inst, "G").rank,
        },
        q1=q1,
        q2=q2,
        per_block=per_block,
        verdicts=verdicts,
        ml_global=(cG, cH),
        ml_ok=ml_ok,
    )
