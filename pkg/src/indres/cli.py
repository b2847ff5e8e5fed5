"""Command line interface.

Subcommands: table, blocks, verify, quotients, paper-table, oracle.
Exit codes: 0 all requested checks hold, 1 a checked statement is false
(the report carries a certificate), 2 usage error or budget exceeded.

Groups are named by their catalog key or by a path to a JSON file of the
form {"format": "perm-group", "degree": n, "order": "<decimal>",
"generators": [[1-based image lists]]}.  A declared order is always checked
against the constructed group.  Reports are emitted with sorted keys so
repeated runs produce identical bytes; group orders are written as decimal
strings.
"""

import json
import sys
from dataclasses import dataclass
from math import lcm

import click

from .blocks import block_partition, defect_group
from .catalog import BUILDERS, build, rows_for_suite
from .chartab import (IntegrityError, character_table, load_table, save_table,
                      verify_table)
from .classfun import VirtualCharacter
from .correspondence import (PROPERTIES, blocks_of, blocks_with_defect_group_P,
                             build_induced_lattice, check_property,
                             check_property_G_with_witness, correspondent_of,
                             full_report, make_instance, pair_table,
                             quotients_q1_q2, table_for)
from .groupcore import (BudgetExceeded, conjugacy_classes,
                        group_from_generators, normalizer, sylow_subgroup)
from .lattice import QuotientShape
from .oracles import (brute_conjugacy_classes, compare_with_table,
                      definition_lattice)


@dataclass
class JobSpec:
    """Everything one verification run depends on."""

    group: str
    p: int
    subgroup_mode: str = "sylow"  # sylow | explicit:<path> | block:<shape or index>
    h_mode: str = "normalizer"  # normalizer | explicit:<path>
    properties: tuple = PROPERTIES
    table_g: str = None
    table_h: str = None
    witness: str = None
    output: str = None
    budget_order: int = None


def load_group(spec_group):
    """A catalog name or a path to a perm-group JSON file."""
    if spec_group in BUILDERS:
        return build(spec_group)
    with open(spec_group) as fh:
        data = json.load(fh)
    if data.get("format") != "perm-group":
        raise IntegrityError(f"{spec_group}: not a perm-group file")
    G = group_from_generators(data)
    if "order" in data and G.order() != int(data["order"]):
        raise IntegrityError(
            f"{spec_group}: declared order {data['order']} but the "
            f"generators produce a group of order {G.order()}"
        )
    return G


def _parse_abelian_shape(token):
    """'C2xC2' -> (order, exponent) for matching a defect group."""
    order, exps = 1, []
    for part in token.split("x"):
        if not part.startswith("C"):
            raise ValueError(f"cannot parse group shape {token!r}")
        n = int(part[1:])
        order *= n
        exps.append(n)
    return order, lcm(*exps)


def _pick_block(tG, p, token):
    blks = block_partition(tG, p)
    if token.isdigit():
        idx = int(token)
        for b in blks:
            if b.index == idx:
                return b
        raise ValueError(f"no block with index {token}")
    order, expo = _parse_abelian_shape(token)
    for b in blks:
        if p ** b.defect != order:
            continue
        D = defect_group(tG, b, p)
        if D.order() == order and D.exponent() == expo:
            return b
    raise ValueError(f"no block with defect group of shape {token}")


def build_instance(spec):
    """Construct the (G, p, P, H) instance a JobSpec describes.

    Returns (inst, block_pair): block_pair is None unless the p-subgroup
    was chosen as the defect group of a named block, in which case the
    property checks run at that block.
    """
    G = load_group(spec.group)
    name = spec.group if spec.group in BUILDERS else ""
    tG = None
    if spec.table_g:
        tG = load_table(spec.table_g, group=G)
    block_token = None
    P = None
    if spec.subgroup_mode == "sylow":
        pass
    elif spec.subgroup_mode.startswith("explicit:"):
        S = load_group(spec.subgroup_mode.split(":", 1)[1])
        P = G.subgroup(list(S.generators))
        if P.order() != S.order():
            raise IntegrityError("explicit p-subgroup is not inside the group")
    elif spec.subgroup_mode.startswith("block:"):
        block_token = spec.subgroup_mode.split(":", 1)[1]
        if tG is None:
            tG = table_for(G, name or None)
        b = _pick_block(tG, spec.p, block_token)
        P = defect_group(tG, b, spec.p)
    else:
        raise ValueError(f"unknown subgroup mode {spec.subgroup_mode!r}")
    if P is None:
        P = sylow_subgroup(G, spec.p)

    if spec.h_mode == "normalizer":
        H = normalizer(G, P)
    elif spec.h_mode.startswith("explicit:"):
        S = load_group(spec.h_mode.split(":", 1)[1])
        H = G.subgroup(list(S.generators))
        if H.order() != S.order():
            raise IntegrityError("explicit overgroup is not inside the group")
        if not P.is_subgroup_of(H):
            raise IntegrityError("the p-subgroup must lie in the overgroup")
    else:
        raise ValueError(f"unknown overgroup mode {spec.h_mode!r}")

    tH = None
    if spec.table_h:
        tH = load_table(spec.table_h, group=H)
    inst = make_instance(G, spec.p, P=P, H=H, tG=tG, tH=tH, name=name)
    block_pair = None
    if block_token is not None:
        b = _pick_block(inst.tG, spec.p, block_token)
        e = correspondent_of(inst, b)
        if e is None:
            raise IntegrityError("the chosen block has no correspondent")
        block_pair = (b, e)
    return inst, block_pair


def _stringify_orders(obj):
    if isinstance(obj, dict):
        return {
            key: str(val)
            if key in ("order", "h_order", "p_subgroup_order", "group_order")
            and isinstance(val, int)
            else _stringify_orders(val)
            for key, val in obj.items()
        }
    if isinstance(obj, list):
        return [_stringify_orders(x) for x in obj]
    return obj


def emit(data, output):
    text = json.dumps(_stringify_orders(data), sort_keys=True, indent=2) + "\n"
    if output:
        with open(output, "w") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


def run_verify(spec):
    """Execute a JobSpec; returns (exit_code, report dict)."""
    wants = [w for w in spec.properties if w in PROPERTIES]
    extras = [w for w in spec.properties if w not in PROPERTIES]
    for w in extras:
        if w not in ("in", "g"):
            raise ValueError(f"unknown property {w!r}")
    inst, block_pair = build_instance(spec)
    report = full_report(inst, props=wants, block_pair=block_pair)
    data = report.to_json()
    ok = all(v.holds for v in report.verdicts.values())
    if "in" in extras:
        ok = ok and data["ml_counts"]["equal"]
    if "g" in extras:
        if not spec.witness:
            raise ValueError("property g needs --witness")
        with open(spec.witness) as fh:
            wit = json.load(fh)
        if wit.get("format") != "virtual-character" or wit.get("space") != "product":
            raise IntegrityError("witness file is not a product virtual character")
        prod = pair_table(inst)
        mu = VirtualCharacter(prod, tuple(int(c) for c in wit["coeffs"]))
        b = next(
            bb
            for bb in blocks_of(inst, "G")
            if sorted(bb.char_indices) == sorted(wit["block_chars"])
        )
        e = next(
            ee
            for ee in blocks_of(inst, "H")
            if sorted(ee.char_indices) == sorted(wit["correspondent_chars"])
        )
        holds = check_property_G_with_witness(inst, b, e, mu)
        data["verdicts"]["g"] = {
            "holds": holds,
            "witness": None,
            "certificate": None if holds else "witness fails the block transform test",
            "level": f"block:{b.index}",
        }
        ok = ok and holds
    return (0 if ok else 1), data


def _shape_tuple(q):
    return (q.free_rank, tuple(q.torsion))


def evaluate_row(row):
    """Compute (q1, irc, q2, pieces) for one reference table row."""
    name, p = row["group"], row["p"]
    G = build(name)
    if row["mode"] == "sylow":
        inst = make_instance(G, p, name=name)
        block_pair = None
    elif row["mode"].startswith("block:"):
        token = row["mode"].split(":", 1)[1]
        tG = table_for(G, name)
        b = _pick_block(tG, p, token)
        P = defect_group(tG, b, p)
        inst = make_instance(G, p, P=P, tG=tG, name=name)
        e = correspondent_of(inst, b)
        block_pair = (b, e)
    else:
        raise ValueError(f"unknown row mode {row['mode']!r}")
    q1, q2, per_block = quotients_q1_q2(inst)
    if block_pair is not None:
        entry = next(pb for pb in per_block if pb[0] == block_pair[0].index)
        q1, q2 = entry[1], entry[2]
    irc = check_property(inst, "irc", block_pair=block_pair).holds
    pieces = None
    if row["pieces"] is not None:
        pieces = (
            [_shape_tuple(a) for _, a, _ in per_block],
            [_shape_tuple(c) for _, _, c in per_block],
        )
    return _shape_tuple(q1), irc, _shape_tuple(q2), pieces


def _fmt_shape(t):
    q = QuotientShape(free_rank=t[0], torsion=tuple(t[1]))
    return str(q)


@click.group()
def main():
    """Exact induced-character lattices and correspondence checks."""


@main.command("table")
@click.argument("group")
@click.option("-o", "--output", default=None, help="write the table as JSON")
@click.option("--budget-order", default=None, type=int)
def cmd_table(group, output, budget_order):
    """Compute and check a character table."""
    try:
        G = load_group(group)
        t = character_table(G, budget_order=budget_order)
        verify_table(t)
    except (BudgetExceeded, IntegrityError, OSError, ValueError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)
    if output:
        save_table(t, output)
    click.echo(
        f"{group}: order {t.group_order}, {t.k} classes, "
        f"degrees {sorted(t.degrees)}"
    )


@main.command("blocks")
@click.argument("group")
@click.option("-p", "--prime", required=True, type=int)
@click.option("-o", "--output", default=None)
def cmd_blocks(group, prime, output):
    """List the p-blocks with defects and character degrees."""
    try:
        G = load_group(group)
        t = table_for(G, group if group in BUILDERS else None)
        blks = block_partition(t, prime)
    except (BudgetExceeded, IntegrityError, OSError, ValueError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)
    data = {
        "group": group,
        "order": t.group_order,
        "p": prime,
        "blocks": [
            {
                "index": b.index,
                "defect": b.defect,
                "principal": b.principal,
                "characters": sorted(b.char_indices),
                "degrees": sorted(t.degrees[i] for i in b.char_indices),
            }
            for b in blks
        ],
    }
    if output:
        emit(data, output)
    for b in data["blocks"]:
        tag = " principal" if b["principal"] else ""
        click.echo(
            f"block {b['index']}: defect {b['defect']}, "
            f"{len(b['characters'])} characters, degrees {b['degrees']}{tag}"
        )


@main.command("verify")
@click.argument("group")
@click.option("-p", "--prime", required=True, type=int)
@click.option("--props", default=",".join(PROPERTIES), show_default=True,
              help="comma list from irc,wirc,wircstar,pres,pind,in,g")
@click.option("--subgroup-mode", default="sylow", show_default=True,
              help="sylow | explicit:<path> | block:<shape or index>")
@click.option("--h-mode", default="normalizer", show_default=True,
              help="normalizer | explicit:<path>")
@click.option("--table-g", default=None, help="external table for the group")
@click.option("--table-h", default=None, help="external table for the overgroup")
@click.option("--witness", default=None, help="product virtual character JSON")
@click.option("-o", "--output", default=None)
def cmd_verify(group, prime, props, subgroup_mode, h_mode, table_g, table_h,
               witness, output):
    """Check correspondence properties; exit 0 only if all hold."""
    spec = JobSpec(
        group=group,
        p=prime,
        subgroup_mode=subgroup_mode,
        h_mode=h_mode,
        properties=tuple(w.strip() for w in props.split(",") if w.strip()),
        table_g=table_g,
        table_h=table_h,
        witness=witness,
        output=output,
    )
    try:
        code, data = run_verify(spec)
    except (BudgetExceeded, IntegrityError, OSError, ValueError, KeyError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)
    emit(data, output)
    if output:
        for name, v in sorted(data["verdicts"].items()):
            state = "holds" if v["holds"] else f"FAILS ({v['certificate']})"
            click.echo(f"{name} [{v['level']}]: {state}")
    sys.exit(code)


@main.command("quotients")
@click.argument("group")
@click.option("-p", "--prime", required=True, type=int)
@click.option("-o", "--output", default=None)
def cmd_quotients(group, prime, output):
    """Print the two lattice quotients and their block pieces."""
    try:
        G = load_group(group)
        inst = make_instance(G, prime, name=group if group in BUILDERS else "")
        q1, q2, per_block = quotients_q1_q2(inst)
    except (BudgetExceeded, IntegrityError, OSError, ValueError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)
    click.echo(f"Q1 = {q1}")
    click.echo(f"Q2 = {q2}")
    for idx, a, b in per_block:
        click.echo(f"block {idx}: Q1 = {a}, Q2 = {b}")
    if output:
        emit(
            {
                "group": group,
                "p": prime,
                "q1": {"free_rank": q1.free_rank, "torsion": list(q1.torsion)},
                "q2": {"free_rank": q2.free_rank, "torsion": list(q2.torsion)},
                "per_block": [
                    {
                        "block": idx,
                        "q1": {"free_rank": a.free_rank, "torsion": list(a.torsion)},
                        "q2": {"free_rank": b.free_rank, "torsion": list(b.torsion)},
                    }
                    for idx, a, b in per_block
                ],
            },
            output,
        )


@main.command("paper-table")
@click.argument("suite", type=click.Choice(["small", "extended"]),
                default="small")
@click.option("-o", "--output", default=None)
def cmd_paper_table(suite, output):
    """Recompute the reference rows and report match or mismatch."""
    rows = rows_for_suite(suite)
    results = []
    bad = 0
    for row in rows:
        try:
            q1, irc, q2, pieces = evaluate_row(row)
        except BudgetExceeded as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(2)
        ok = q1 == row["q1"] and irc == row["irc"] and q2 == row["q2"]
        if row["pieces"] is not None:
            ok = ok and pieces == row["pieces"]
        bad += 0 if ok else 1
        state = "match" if ok else "MISMATCH"
        line = (
            f"{row['group']} p={row['p']} [{row['mode']}]: "
            f"Q1 = {_fmt_shape(q1)}, IRC = {'Yes' if irc else 'No'}, "
            f"Q2 = {_fmt_shape(q2)}  {state}"
        )
        click.echo(line)
        results.append(
            {
                "group": row["group"],
                "p": row["p"],
                "mode": row["mode"],
                "q1": {"free_rank": q1[0], "torsion": list(q1[1])},
                "irc": irc,
                "q2": {"free_rank": q2[0], "torsion": list(q2[1])},
                "match": ok,
            }
        )
    click.echo(f"{len(rows) - bad} of {len(rows)} rows match")
    if output:
        emit({"suite": suite, "rows": results}, output)
    sys.exit(0 if bad == 0 else 1)


@main.command("oracle")
@click.argument("kind", type=click.Choice(
    ["subgroup-lattice", "brute-classes", "brute-table"]))
@click.argument("group")
@click.option("-p", "--prime", default=None, type=int,
              help="needed for subgroup-lattice")
@click.option("--budget-order", default=200, show_default=True)
@click.option("--budget-classes", default=5000, show_default=True)
def cmd_oracle(kind, group, prime, budget_order, budget_classes):
    """Recompute data by brute force and compare with the fast path."""
    try:
        G = load_group(group)
        name = group if group in BUILDERS else ""
        if kind == "subgroup-lattice":
            if prime is None:
                raise ValueError("subgroup-lattice needs -p")
            inst = make_instance(G, prime, name=name)
            ok = True
            for target in ("G", "H"):
                fast = build_induced_lattice(inst, target)
                slow = definition_lattice(inst, target, budget_order=budget_order)
                same = fast.canonical() == slow.canonical()
                ok = ok and same
                click.echo(
                    f"{target}: fast rank {fast.rank}, brute rank {slow.rank}, "
                    f"HNF {'equal' if same else 'DIFFERENT'}"
                )
            sys.exit(0 if ok else 1)
        if kind == "brute-classes":
            brute = brute_conjugacy_classes(G, budget_order=budget_classes)
            own = _class_key_sets(G, conjugacy_classes(G))
            mine = sorted(frozenset(cl) for cl in brute)
            theirs = sorted(frozenset(cl) for cl in own)
            same = mine == theirs
            click.echo(
                f"{len(brute)} classes, sizes {sorted(len(c) for c in brute)}, "
                f"{'match' if same else 'MISMATCH'}"
            )
            sys.exit(0 if same else 1)
        if kind == "brute-table":
            t = table_for(G, name or None)
            same = compare_with_table(G, t, budget_order=budget_order)
            click.echo(
                f"{t.k} irreducibles, degrees {sorted(t.degrees)}, "
                f"{'match' if same else 'MISMATCH'}"
            )
            sys.exit(0 if same else 1)
    except (BudgetExceeded, IntegrityError, OSError, ValueError) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)


def _class_key_sets(G, classes):
    ids = G.class_ids()
    keys = G.element_keys()
    out = [[] for _ in classes]
    for key, cid in zip(keys, ids):
        out[int(cid)].append(key)
    return out


if __name__ == "__main__":
    main()
