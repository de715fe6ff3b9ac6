"""Command-line front end: ``weylcalc <group> [<command>] [options]``.

Exit codes: 0 success, 1 a verification check failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Sequence

from . import arrangement, invariants, linalg, parabolic, rdp, schubert, weyl
from .polyring import Poly, ring
from .rootsys import (DynkinType, closed_form_root_count, e10_complement_check, fundamental_degrees,
                      highest_root, root_system)

SCHEMA = "weylcalc/1"
TRUNCATE_ORDER = 10**6


class UsageError(Exception):
    pass


@dataclass
class CommandResult:
    command: str
    type_label: str | None
    result: Any
    checks: list[dict] = field(default_factory=list)

    def check(self, name: str, ok: bool, detail: str = "") -> None:
        self.checks.append({"name": name, "status": "pass" if ok else "fail", "detail": detail})

    def extend(self, checks) -> None:
        for name, ok, detail in checks:
            self.check(name, ok, detail)

    @property
    def failed(self) -> bool:
        return any(c["status"] == "fail" for c in self.checks)

    def as_dict(self) -> dict:
        return {"schema": SCHEMA, "command": self.command, "type": self.type_label,
                "result": _plain(self.result), "checks": self.checks}


def _plain(x):
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else int(x)
    if isinstance(x, Poly):
        return x.to_string()
    return x


def render_json(res: CommandResult) -> str:
    return json.dumps(res.as_dict(), sort_keys=True, indent=2) + "\n"


def render_text(res: CommandResult) -> str:
    lines = [f"command: {res.command}"]
    if res.type_label:
        lines.append(f"type: {res.type_label}")
    result = _plain(res.result)
    if isinstance(result, dict):
        width = max((len(k) for k in result), default=0)
        for k in sorted(result):
            v = result[k]
            text = v if isinstance(v, str) else json.dumps(v, sort_keys=True)
            lines.append(f"{k.ljust(width)}  {text}")
    else:
        lines.append(str(result))
    for c in res.checks:
        lines.append(f"[{c['status']}] {c['name']}: {c['detail']}")
    return "\n".join(lines) + "\n"


# -- argument helpers -------------------------------------------------------------


def dynkin_arg(text: str) -> DynkinType:
    try:
        return DynkinType.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def word_arg(text: str) -> tuple[int, ...]:
    try:
        return weyl.parse_word(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _system(args):
    if args.type is None:
        raise UsageError("--type is required for this command")
    return root_system(args.type)


def _element(word, sys):
    for i in word:
        if not 1 <= i <= sys.rank:
            raise UsageError(f"index {i} out of range for {sys.type}")
    w = weyl.from_word(word, sys)
    if w.length != len(word):
        raise UsageError(f"word {weyl.word_label(word)} is not reduced")
    return w


def _class_dict(h: schubert.HClass, sys) -> dict:
    return {"string": h.to_string(sys), "degree": h.degree, "coefficients": h.as_dict(sys)}


def _full_enumerable(sys) -> bool:
    return weyl.group_order(sys) <= TRUNCATE_ORDER


# -- commands -------------------------------------------------------------------------


def cmd_roots(args) -> CommandResult:
    sys_ = _system(args)
    res = CommandResult("roots", sys_.type.label, {
        "rank": sys_.rank,
        "cartan": [list(r) for r in sys_.cartan],
        "num_positive_roots": sys_.num_positive_roots,
        "positive_roots": [list(r) for r in sys_.positive_roots],
        "fundamental_weights": [[str(x) for x in w] for w in sys_.fundamental_weights],
        "highest_root": list(highest_root(sys_)),
        "fundamental_degrees": fundamental_degrees(sys_),
    })
    res.check("root_count", sys_.num_positive_roots == closed_form_root_count(sys_.type),
              f"{sys_.num_positive_roots} positive roots")
    return res


def cmd_weyl_census(args) -> CommandResult:
    sys_ = _system(args)
    max_len = args.max_length
    if max_len is None and not _full_enumerable(sys_):
        max_len = args.max_degree
    census = weyl.length_census(sys_, max_len)
    expected = weyl.poincare_coefficients(fundamental_degrees(sys_), len(census) - 1)
    res = CommandResult("weyl census", sys_.type.label, {
        "census": census, "poincare": expected, "truncated_at": max_len,
        "group_order": weyl.group_order(sys_)})
    res.check("census_matches_poincare", census == expected, f"lengths 0..{len(census) - 1}")
    return res


def cmd_weyl_words(args) -> CommandResult:
    sys_ = _system(args)
    w = _element(args.word, sys_)
    words = weyl.all_reduced_words(w, sys_, bound=max(args.max_length or 0, weyl.DEFAULT_WORD_BOUND))
    res = CommandResult("weyl words", sys_.type.label, {
        "length": w.length,
        "canonical": weyl.word_label(weyl.canonical_reduced_word(w, sys_)),
        "reduced_words": [weyl.word_label(x) for x in words],
        "inversion_set": [list(r) for r in sorted(weyl.inversion_set(w, sys_))],
    })
    res.check("inversions_equal_length", len(weyl.inversion_set(w, sys_)) == w.length, "")
    return res


def _poly_arg(text: str, sys_) -> Poly:
    try:
        return Poly.parse(text, sys_.rank)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_schubert_c(args) -> CommandResult:
    sys_ = _system(args)
    p = _poly_arg(args.poly, sys_)
    if not p.is_homogeneous():
        raise UsageError("c needs a homogeneous polynomial")
    if p.degree > args.max_degree and not _full_enumerable(sys_):
        raise UsageError(f"degree {p.degree} exceeds --max-degree {args.max_degree}")
    h = schubert.c_map(p, sys_)
    return CommandResult("schubert c", sys_.type.label, {"poly": p.to_string(), "class": _class_dict(h, sys_)})


def cmd_schubert_mult(args) -> CommandResult:
    sys_ = _system(args)
    u, v = _element(args.u, sys_), _element(args.v, sys_)
    limit = sys_.num_positive_roots if _full_enumerable(sys_) else args.max_degree
    if u.length + v.length > limit:
        raise UsageError(f"product degree {u.length + v.length} exceeds the bound {limit}")
    calc = schubert.calculus(sys_)
    hu, hv = schubert.HClass.basis_element(u), schubert.HClass.basis_element(v)
    res = CommandResult("schubert mult", sys_.type.label, {})
    try:
        prod = calc.multiply(hu, hv)
        integral = True
    except schubert.IntegralityError as exc:
        prod, integral = None, False
        res.check("integrality", False, str(exc))
    if prod is not None:
        res.result = {"u": weyl.word_label(calc.word(u)), "v": weyl.word_label(calc.word(v)),
                      "product": _class_dict(prod, sys_)}
        if prod.degree == sys_.num_positive_roots:
            res.result["w0_coefficient"] = prod.coefficient(weyl.longest_element(sys_))
        res.check("integrality", integral, "all structure constants are integers")
        res.check("commutative", calc.multiply(hv, hu) == prod, "z_u z_v = z_v z_u")
    return res


def cmd_schubert_pairing(args) -> CommandResult:
    sys_ = _system(args)
    if not _full_enumerable(sys_):
        raise UsageError(f"pairing needs the full group; |W({sys_.type})| is too large")
    degrees = [args.degree] if args.degree is not None else list(range(sys_.num_positive_roots + 1))
    calc = schubert.calculus(sys_)
    out = {}
    res = CommandResult("schubert pairing", sys_.type.label, out)
    for i in degrees:
        if not 0 <= i <= sys_.num_positive_roots:
            raise UsageError(f"degree {i} out of range 0..{sys_.num_positive_roots}")
        m = calc.pairing_matrix(i)
        det = linalg.determinant(m)
        out[str(i)] = {"determinant": det, "size": len(m),
                       "rows": [weyl.word_label(calc.word(w)) for w in calc.basis(i)],
                       "cols": [weyl.word_label(calc.word(w)) for w in calc.basis(sys_.num_positive_roots - i)],
                       "matrix": m if args.degree is not None else None}
        res.check(f"unimodular_{i}", abs(det) == 1, f"det = {det}")
    return res


def cmd_schubert_gp(args) -> CommandResult:
    sys_ = _system(args)
    try:
        theta = parabolic.parse_theta(args.theta, sys_)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if not _full_enumerable(sys_):
        raise UsageError(f"G/P needs the full group; |W({sys_.type})| is too large")
    rep = parabolic.gp_report(sys_, theta, products=not args.no_products)
    res = CommandResult("schubert gp", sys_.type.label, {
        "theta": list(theta), "ranks": rep.ranks, "poincare": rep.poincare,
        "basis": {str(n): [h.to_string(sys_) for h in b] for n, b in rep.bases.items()},
        "schubert_basis_agreement": {str(n): ok for n, ok in rep.schubert_basis_agreement().items()},
    })
    res.extend(rep.checks)
    return res


def cmd_inv_dims(args) -> CommandResult:
    sys_ = _system(args)
    rep = invariants.rational_dimension_check(sys_, args.max_degree)
    res = CommandResult("inv dims", sys_.type.label, {
        "degrees": list(rep.degrees), "computed": rep.computed, "expected": rep.expected})
    res.check("dimensions_match_series", rep.ok, f"degrees 0..{args.max_degree}")
    return res


def cmd_inv_coker(args) -> CommandResult:
    sys_ = _system(args)
    top = sys_.num_positive_roots if _full_enumerable(sys_) else args.max_degree
    degrees = [args.degree] if args.degree is not None else list(range(min(top, args.max_degree) + 1))
    out = {}
    res = CommandResult("inv coker", sys_.type.label, {"lattice": args.lattice, "degrees": out})
    for n in degrees:
        rep = invariants.cbar_elementary_divisors(sys_, n, args.lattice)
        out[str(n)] = {"free_rank": rep.free_rank, "torsion": list(rep.torsion), "trivial": rep.trivial}
        if args.oracle:
            oracle = invariants.oracle_elementary_divisors(invariants.c_matrix(sys_, n, args.lattice))
            mine = [x for x in rep.snf.diagonal if x]
            res.check(f"oracle_{n}", oracle == mine, "independent dense Smith form")
    return res


def cmd_inv_antiinv(args) -> CommandResult:
    sys_ = _system(args)
    try:
        rep = invariants.antiinvariant_solve(sys_)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    res = CommandResult("inv antiinv", sys_.type.label, {
        "degree": rep.degree, "content": rep.content,
        "solvable_z": rep.solvable_z, "witness_z": rep.witness_z,
        "solvable_q": rep.solvable_q, "witness_q": rep.witness_q})
    res.extend(rep.checks)
    return res


def cmd_arr_sep(args) -> CommandResult:
    sys_ = _system(args)
    u, v = _element(args.u, sys_), _element(args.v, sys_)
    walls = arrangement.separating_walls(u, v, sys_)
    back = arrangement.separating_walls(v, u, sys_)
    res = CommandResult("arr sep", sys_.type.label, {
        "u": weyl.word_label(args.u), "v": weyl.word_label(args.v),
        "walls": [list(r) for r in sorted(walls)], "count": len(walls)})
    res.check("symmetric", walls == back, "")
    if u.is_identity():
        res.check("count_equals_length", len(walls) == v.length, f"l(v) = {v.length}")
    return res


def cmd_arr_graph(args) -> CommandResult:
    sys_ = _system(args)
    try:
        g = arrangement.glueing_graph(sys_, args.max_length)
    except weyl.EnumerationCapError as exc:
        raise UsageError(str(exc)) from None
    payload = g.as_dict()
    if args.dot:
        payload["dot"] = g.to_dot()
    res = CommandResult("arr graph", sys_.type.label, payload)
    res.extend(g.checks)
    return res


def cmd_arr_tile(args) -> CommandResult:
    samples = 10_000 if args.samples is None else args.samples
    rep = arrangement.d4_tiling_check(samples, args.seed)
    res = CommandResult("arr tile-d4", "D4", {
        "samples": rep.samples, "seed": rep.seed, "orbit_size": rep.orbit_size,
        "uncovered": rep.uncovered, "multi_interior": rep.multi_interior, "boundary": rep.boundary})
    res.extend(rep.checks)
    return res


def _record_dict(rec: rdp.RdpRecord) -> dict:
    return {"type": rec.type.label, "f": rec.equation(), "pi_fund": list(rec.pi_fund),
            "pi_extra": list(rec.pi_extra), "n_plus": rec.n_plus}


def cmd_rdp_table(args) -> CommandResult:
    rows = [_record_dict(r) for r in rdp.table(10)]
    if args.type is not None:
        rows = [r for r in rows if r["type"] == args.type.label]
    return CommandResult("rdp table", args.type.label if args.type else None, {"rows": rows})


def cmd_rdp_verify(args) -> CommandResult:
    try:
        records = [rdp.record(args.type)] if args.type is not None else rdp.table(10)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    rows = []
    res = CommandResult("rdp verify", args.type.label if args.type else None, {"rows": rows})
    for rec in records:
        rep = rdp.verify_weights(rec)
        rows.append({"type": rec.type.label, "weights": list(rep.weights), "weight_f": rep.weight_f,
                     "tjurina_basis": [rdp.monomial_name(m) for m in rep.basis.monomials],
                     "deformation_weights": list(rep.deformation_weights)})
        for name, ok, detail in rep.checks:
            res.check(f"{rec.type.label}:{name}", ok, detail)
    if len(rows) == 1:
        res.result = rows[0]
    return res


def cmd_e10(args) -> CommandResult:
    rep = e10_complement_check()
    checks = rep.pop("checks")
    res = CommandResult("e10 complement", "E10", rep)
    res.extend(checks)
    return res


# -- parser -----------------------------------------------------------------------------


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("common options")
    g.add_argument("--type", type=dynkin_arg, help="root system, e.g. A3, D4, E8")
    g.add_argument("--format", choices=("json", "text"), default="text", help="output format")
    g.add_argument("--max-degree", type=int, default=6, help="degree bound for large types (default 6)")
    g.add_argument("--max-length", type=int, help="length bound for Weyl group enumeration")
    g.add_argument("--seed", type=int, default=42, help="random seed (default 42)")
    g.add_argument("--samples", type=int, help="number of random samples")
    g.add_argument("--out", help="write output to this file instead of stdout")
    return p


COMMANDS: dict[str, tuple[str, Callable]] = {}


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(
        prog="weylcalc",
        description="Exact integral Schubert calculus, invariants and chamber combinatorics for ADE root systems.")
    groups = parser.add_subparsers(dest="group", metavar="<group>", required=True)

    def leaf(sub, name, func, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text, description=help_text)
        p.set_defaults(func=func)
        return p

    leaf(groups, "roots", cmd_roots, "positive roots, Cartan matrix, fundamental weights")

    g = groups.add_parser("weyl", help="Weyl group enumeration and reduced words")
    sub = g.add_subparsers(dest="command", metavar="<command>", required=True)
    leaf(sub, "census", cmd_weyl_census, "length census compared with the Poincare polynomial")
    p = leaf(sub, "words", cmd_weyl_words, "all reduced words of an element")
    p.add_argument("--word", type=word_arg, required=True, help='element as a reduced word, e.g. "2.1"')

    g = groups.add_parser("schubert", help="Schubert calculus in H")
    sub = g.add_subparsers(dest="command", metavar="<command>", required=True)
    p = leaf(sub, "c", cmd_schubert_c, "characteristic map c(p) in the Schubert basis")
    p.add_argument("--poly", required=True, help='homogeneous polynomial, e.g. "x1^2*x2"')
    p = leaf(sub, "mult", cmd_schubert_mult, "product z_u z_v")
    p.add_argument("--u", type=word_arg, required=True, help="first element as a reduced word")
    p.add_argument("--v", type=word_arg, required=True, help="second element as a reduced word")
    p = leaf(sub, "pairing", cmd_schubert_pairing, "Poincare duality pairing matrices")
    p.add_argument("--degree", type=int, help="single degree (default: all)")
    p = leaf(sub, "gp", cmd_schubert_gp, "H*(G/P) as W_theta-invariants of H")
    p.add_argument("--theta", default="", help='parabolic set, e.g. "1,3"')
    p.add_argument("--no-products", action="store_true", help="skip the multiplication tables")

    g = groups.add_parser("inv", help="invariants, cokernel of c, J(a) = d")
    sub = g.add_subparsers(dest="command", metavar="<command>", required=True)
    leaf(sub, "dims", cmd_inv_dims, "invariant dimensions against the fundamental degrees")
    p = leaf(sub, "coker", cmd_inv_coker, "elementary divisors of c per degree")
    p.add_argument("--degree", type=int, help="single degree (default: all up to the bound)")
    p.add_argument("--lattice", choices=("root", "weight"), default="root", help="polynomial lattice (default root)")
    p.add_argument("--oracle", action="store_true", help="cross-check against an independent Smith form")
    leaf(sub, "antiinv", cmd_inv_antiinv, "solvability of J(a) = d in degree N")

    g = groups.add_parser("arr", help="chambers, walls and the D4 fundamental domain")
    sub = g.add_subparsers(dest="command", metavar="<command>", required=True)
    p = leaf(sub, "sep", cmd_arr_sep, "walls separating two chambers")
    p.add_argument("--u", type=word_arg, default=(), help="first chamber as a reduced word")
    p.add_argument("--v", type=word_arg, required=True, help="second chamber as a reduced word")
    p = leaf(sub, "graph", cmd_arr_graph, "adjacency graph of chambers")
    p.add_argument("--dot", action="store_true", help="include DOT text in the payload")
    leaf(sub, "tile-d4", cmd_arr_tile, "sampling check of the D4 fundamental domain")

    g = groups.add_parser("rdp", help="rational double point table")
    sub = g.add_subparsers(dest="command", metavar="<command>", required=True)
    leaf(sub, "table", cmd_rdp_table, "equations and weight data")
    leaf(sub, "verify", cmd_rdp_verify, "Tjurina weights against the fundamental degrees")

    g = groups.add_parser("e10", help="the E10 lattice")
    sub = g.add_subparsers(dest="command", metavar="<command>", required=True)
    leaf(sub, "complement", cmd_e10, "orthogonal complement of varpi_1 is D9")
    return parser


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        res = args.func(args)
    except (UsageError, weyl.EnumerationCapError, weyl.WordBoundError) as exc:
        print(f"weylcalc: error: {exc}", file=stderr)
        return 2
    except ArithmeticError as exc:
        print(f"weylcalc: verification failure: {exc}", file=stderr)
        return 1
    text = render_json(res) if args.format == "json" else render_text(res)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return 1 if res.failed else 0


def main() -> None:
    sys.exit(run())
