"""Batch front end: read a problem document, run one command, print a result document.

Exit codes: 0 success, 1 engine or input error, 2 a requested check failed.
"""

from __future__ import annotations

import argparse
import json
import random
import re
import sys
import time
from dataclasses import dataclass
from typing import Sequence

from . import gbengine as gb
from .bekoszul import (
    SIGN_CONVENTION,
    LinearMap,
    be_complex,
    complex_homology,
    connecting_map,
    random_ext,
    verify_lift,
)
from .gbengine import Ideal
from .kitt import (
    Representation,
    boundary_lemma_check,
    fitting_ideal,
    kitt_ideal,
    kitt_via_homology,
    specialization_check,
    verify_report,
)
from .koszul import ExtElement, KoszulComplex
from .polycore import GF, QQ, ParseError, PolyMatrix, PolyRing, Polynomial

COMMANDS = ("kitt", "colon", "fitt", "koszul", "verify", "specialize", "en", "lift")


class InputError(ValueError):
    """Bad problem document; line and column are 1-based when known."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.message = message
        self.line = line
        self.column = column
        where = f" at line {line}, column {column}" if line is not None else ""
        super().__init__(message + where)


@dataclass
class Problem:
    ring: PolyRing
    I: list
    a: list
    phi: PolyMatrix | None
    matrix: PolyMatrix | None
    d: int | None


# ---------------------------------------------------------------- reading


def _locate(text: str, literal: str, column: int | None) -> tuple:
    """Line/column in the raw document of a column inside a string literal."""
    token = json.dumps(literal)
    at = text.find(token)
    if at < 0:
        return None, None
    offset = at + 1 + ((column or 1) - 1)
    line = text.count("\n", 0, offset) + 1
    col = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, col


def _ring_from(desc) -> PolyRing:
    if not isinstance(desc, dict):
        raise InputError("'ring' must be an object")
    fld = desc.get("field", "Q")
    if fld in ("Q", "QQ"):
        field = QQ
    elif isinstance(fld, dict) and "gf" in fld:
        field = GF(int(fld["gf"]))
    else:
        raise InputError(f"unknown field {fld!r}")
    names = desc.get("vars")
    if not isinstance(names, list) or not names:
        raise InputError("'ring.vars' must be a non-empty list")
    order = desc.get("order", "grevlex")
    if order not in ("grevlex", "lex"):
        raise InputError(f"unknown order {order!r}")
    base = PolyRing(field, names, order)
    return base


def load_problem(text: str) -> Problem:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"invalid JSON: {e.msg}", e.lineno, e.colno) from None
    if not isinstance(doc, dict):
        raise InputError("problem document must be a JSON object", 1, 1)
    if "ring" not in doc:
        raise InputError("missing 'ring'")

    base = _ring_from(doc["ring"])

    def poly(s, ring, where):
        if not isinstance(s, (str, int)):
            raise InputError(f"{where}: expected a polynomial string")
        s = str(s)
        try:
            return ring(s)
        except ParseError as e:
            line, col = _locate(text, s, e.column)
            raise InputError(f"{where}: {e}", line, col) from None

    def polys(key, ring):
        vals = doc.get(key, [])
        if not isinstance(vals, list):
            raise InputError(f"'{key}' must be a list")
        return [poly(s, ring, f"{key}[{k}]") for k, s in enumerate(vals)]

    mods = doc["ring"].get("modulus", [])
    if not isinstance(mods, list):
        raise InputError("'ring.modulus' must be a list")
    modulus = [poly(s, base, f"ring.modulus[{k}]") for k, s in enumerate(mods)]
    ring = base.with_modulus(modulus) if modulus else base

    I = polys("I", ring)
    a = polys("a", ring)
    phi = None
    if doc.get("phi") is not None:
        rows = doc["phi"]
        if not isinstance(rows, list) or any(not isinstance(r, list) for r in rows):
            raise InputError("'phi' must be a list of rows")
        if len(rows) != len(I) or any(len(r) != len(a) for r in rows):
            raise InputError(f"'phi' must have shape {len(I)}x{len(a)}")
        phi = PolyMatrix.from_rows(ring, [[poly(x, ring, f"phi[{i}][{j}]") for j, x in enumerate(r)]
                                          for i, r in enumerate(rows)]) if a else None
    matrix = None
    if doc.get("matrix") is not None:
        m = doc["matrix"]
        try:
            nr, nc, entries = int(m["rows"]), int(m["cols"]), m["entries"]
        except (KeyError, TypeError, ValueError):
            raise InputError("'matrix' needs integer 'rows', 'cols' and 'entries'") from None
        if entries and isinstance(entries[0], list):
            entries = [x for row in entries for x in row]
        if len(entries) != nr * nc:
            raise InputError(f"'matrix' has {len(entries)} entries, expected {nr * nc}")
        vals = [poly(x, ring, f"matrix.entries[{k}]") for k, x in enumerate(entries)]
        matrix = PolyMatrix(ring, nr, nc, vals)
    d = doc.get("d")
    if d is not None and not isinstance(d, int):
        raise InputError("'d' must be an integer")
    return Problem(ring, I, a, phi, matrix, d)


def parse_witness(text: str, Phi: LinearMap) -> ExtElement:
    """{"e1^e3": "x", ...} -> sum of coefficient times basis monomial (1-based indices)."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"witness: invalid JSON: {e.msg}", e.lineno, e.colno) from None
    if not isinstance(obj, dict) or not obj:
        raise InputError("witness must be a non-empty JSON object")
    R = Phi.ring
    total = None
    for key, val in obj.items():
        key = key.strip()
        if key == "1":
            idx = []
        else:
            idx = []
            for part in key.split("^"):
                m = re.fullmatch(r"\s*e(\d+)\s*", part)
                if not m:
                    raise InputError(f"witness: bad basis monomial {key!r}")
                k = int(m.group(1))
                if not 1 <= k <= Phi.f:
                    raise InputError(f"witness: index {k} outside 1..{Phi.f}")
                idx.append(k - 1)
        try:
            c = R(str(val))
        except ParseError as e:
            raise InputError(f"witness[{key}]: {e}") from None
        term = ExtElement.basis(R, Phi.f, idx, c)
        if total is not None and term.degree != total.degree:
            raise InputError("witness is not homogeneous")
        total = term if total is None else total + term
    return total


# ---------------------------------------------------------------- writing


def _sort_key(p: Polynomial):
    key = p.ring.order.key
    return [key(e) for _, e in p.terms], str(p)


def sorted_polys(polys) -> list:
    uniq = []
    for p in polys:
        if p and p not in uniq:
            uniq.append(p)
    uniq.sort(key=_sort_key, reverse=True)
    return [str(p) for p in uniq]


def ideal_doc(A: Ideal) -> dict:
    return {"generators": sorted_polys(A.gens), "gb": [str(g) for g in A.gb]}


def ext_doc(w: ExtElement) -> dict:
    out = {}
    for L in sorted(w.coeffs):
        key = "^".join(f"e{i + 1}" for i in L) if L else "1"
        out[key] = str(w.coeffs[L])
    return out


def matrix_doc(M: PolyMatrix) -> list:
    return [[str(x) for x in row] for row in M.tolist()]


def render_text(doc, indent: int = 0) -> str:
    pad = "  " * indent
    lines = []
    if isinstance(doc, dict):
        for k in sorted(doc):
            v = doc[k]
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.append(render_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
    elif isinstance(doc, list):
        for v in doc:
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}-")
                lines.append(render_text(v, indent + 1))
            else:
                lines.append(f"{pad}- {_scalar(v)}")
    else:
        lines.append(pad + _scalar(doc))
    return "\n".join(lines)


def _scalar(v) -> str:
    if isinstance(v, bool) or v is None:
        return json.dumps(v)
    if isinstance(v, (list, dict)):
        return "[]" if isinstance(v, list) else "{}"
    return str(v)


# ---------------------------------------------------------------- commands


def _rep(P: Problem) -> Representation:
    if not P.I:
        raise InputError("'I' must list at least one generator")
    return Representation(P.ring, P.I, P.a, P.phi)


def _linear_map(P: Problem) -> LinearMap:
    if P.matrix is None:
        raise InputError("this command needs 'matrix'")
    return LinearMap(P.matrix)


def cmd_kitt(P, args) -> dict:
    rep = _rep(P)
    res = kitt_ideal(rep)
    prov = [{"generator": str(g), "L1": list(L1), "j": j, "cycle": idx}
            for g, (L1, j, idx) in zip(res.generators, res.provenance)]
    prov.sort(key=lambda t: (t["j"], t["L1"], t["cycle"]))
    return {"kitt": ideal_doc(res.ideal), "provenance": prov}


def cmd_colon(P, args) -> dict:
    rep = _rep(P)
    return {"colon": ideal_doc(gb.colon(rep.a_ideal, rep.I))}


def cmd_fitt(P, args) -> dict:
    return {"fitting": ideal_doc(fitting_ideal(_rep(P)))}


def cmd_koszul(P, args) -> dict:
    if not P.I:
        raise InputError("'I' must list at least one generator")
    C = KoszulComplex(P.ring, P.I)
    if args.homology is None and args.cycles is None:
        raise InputError("koszul needs --homology i or --cycles i")
    out = {"r": len(P.I)}
    if args.cycles is not None:
        out["cycles"] = {"degree": args.cycles, "elements": [ext_doc(z) for z in C.cycles(args.cycles)]}
    if args.homology is not None:
        out["homology"] = {"degree": args.homology,
                           "representatives": [ext_doc(h) for h in C.homology_reps(args.homology)]}
    return out


_REQUIRED = ("a_in_kitt", "fitt_in_kitt", "kitt_in_colon", "colon_in_radical_of_kitt",
             "boundary_lemma", "homology_cross_check")


def cmd_verify(P, args) -> dict:
    rep = _rep(P)
    report = verify_report(rep)
    body = report.as_dict()
    body["boundary_lemma"] = boundary_lemma_check(rep)
    body["homology_cross_check"] = gb.ideal_equal(kitt_via_homology(rep), report.kitt)
    body["kitt"] = ideal_doc(report.kitt)
    body["colon"] = ideal_doc(report.colon)
    body["fitting"] = ideal_doc(report.fitting)
    failed = [k for k in _REQUIRED if not body[k]]
    if body.get("small_s_implication") is False:
        failed.append("small_s_implication")
    if args.expect_equal and not body["kitt_equals_colon"]:
        failed.append("kitt_equals_colon")
    body["failed_checks"] = failed
    return body


def cmd_specialize(P, args) -> dict:
    if args.f0 is None:
        raise InputError("specialize needs --f0")
    rep = _rep(P)
    try:
        f0 = P.ring(args.f0)
    except ParseError as e:
        raise InputError(f"--f0: {e}", 1, e.column) from None
    ok = specialization_check(rep, f0)
    return {"f0": str(f0), "specialization": ok, "failed_checks": [] if ok else ["specialization"]}


def cmd_en(P, args) -> dict:
    Phi = _linear_map(P)
    d = args.d if args.d is not None else P.d
    if d is None:
        raise InputError("en needs --d")
    C = be_complex(Phi, d)
    hom = complex_homology(C)
    return {
        "d": d,
        "ranks_right_to_left": list(reversed(C.ranks)),
        "positions": C.positions,
        "modules": [label for _, label, _ in C.modules],
        "join_index": C.join_index,
        "composition_zero": C.composition_is_zero(),
        "homology_vanishes": hom,
        "differentials": [matrix_doc(M) for M in C.diffs],
        "metadata": C.metadata,
    }


def cmd_lift(P, args) -> dict:
    Phi = _linear_map(P)
    d = args.d if args.d is not None else P.d
    if d is None:
        raise InputError("lift needs --d")
    if args.witness is not None:
        witnesses = [parse_witness(args.witness, Phi)]
    else:
        rng = random.Random(args.seed)
        witnesses = [random_ext(Phi, Phi.g + d, rng) for _ in range(3)]
    results = []
    for w in witnesses:
        results.append({"witness": ext_doc(w), "lift_verified": verify_lift(Phi, d, w),
                        "terminal": ext_doc(connecting_map(Phi, d, w))})
    failed = ["lift"] if not all(r["lift_verified"] for r in results) else []
    return {"d": d, "results": results, "failed_checks": failed,
            "metadata": {"sign_convention": SIGN_CONVENTION}}


HANDLERS = {
    "kitt": cmd_kitt, "colon": cmd_colon, "fitt": cmd_fitt, "koszul": cmd_koszul,
    "verify": cmd_verify, "specialize": cmd_specialize, "en": cmd_en, "lift": cmd_lift,
}


# ---------------------------------------------------------------- driver


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="kittideal", description="Kitt ideals, residual intersections and related complexes.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("input", help="problem document (JSON); '-' reads standard input")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--homology", type=int)
    p.add_argument("--cycles", type=int)
    p.add_argument("--f0")
    p.add_argument("--d", type=int)
    p.add_argument("--witness")
    p.add_argument("--expect-equal", action="store_true")
    p.add_argument("--timing", action="store_true", help="include wall-clock seconds (breaks byte-identical output)")
    return p


def run(command: str, text: str, args: argparse.Namespace) -> tuple:
    """(exit code, result document)."""
    doc = {"command": command}
    start = time.perf_counter()
    try:
        P = load_problem(text)
        body = HANDLERS[command](P, args)
    except InputError as e:
        doc.update(status="error", error={"type": "input", "message": e.message,
                                          "line": e.line, "column": e.column})
        return 1, doc
    except Exception as e:  # any engine failure maps to exit code 1
        doc.update(status="error", error={"type": type(e).__name__, "message": str(e)})
        return 1, doc
    doc["status"] = "ok"
    doc["result"] = body
    if args.timing:
        doc["timing"] = round(time.perf_counter() - start, 6)
    return (2 if body.get("failed_checks") else 0), doc


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.input == "-":
            text = sys.stdin.read()
        else:
            with open(args.input, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as e:
        doc = {"command": args.command, "status": "error",
               "error": {"type": "io", "message": str(e)}}
        code = 1
    else:
        code, doc = run(args.command, text, args)
    if args.format == "json":
        print(json.dumps(doc, indent=2, sort_keys=True))
    else:
        print(render_text(doc))
    if code == 1:
        print(f"error: {doc['error']['message']}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
