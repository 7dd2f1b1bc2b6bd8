"""Command line front end: k2forge <gen|verify|catalog|plot>.

Exit codes: 0 success, 1 usage / malformed input, 2 precondition failure
(singular member, non-rational support, bad parameters), 3 verification
failure (a certificate that should hold does not -- a bug or tampering).
"""

from __future__ import annotations

import argparse
import datetime
import json
import sys
from fractions import Fraction
from typing import List, Optional, Sequence

from .errors import PreconditionError, VerificationError
from .families import GENERATORS
from .plotting import PlotSpec, render_record_svg
from .rationals import rat, rat_str
from .records import (CurveRecord, catalog_entry_jsonable, params_hash,
                      record_from_json, record_jsonable, record_to_json)
from .symbols import SymbolEngine, verify_k2t

USAGE_FAMILIES = ", ".join(sorted(GENERATORS))


def _rat_list(text: str) -> List[Fraction]:
    return [rat(tok) for tok in text.split(",") if tok.strip()]


def _int_list(text: str) -> List[int]:
    return [int(tok) for tok in text.split(",") if tok.strip()]


def _build_args_for_family(family: str, ns) -> tuple:
    if family in ("hyp-odd", "hyp-even"):
        if ns.genus is None or not ns.a:
            raise PreconditionError("need --genus and --a")
        if family == "hyp-odd":
            return (ns.genus, _rat_list(ns.a))
        if not ns.eps:
            raise PreconditionError("need --eps for hyp-even")
        return (ns.genus, _rat_list(ns.a), _int_list(ns.eps))
    if family == "hyp-partial":
        if ns.genus is None or ns.d is None:
            raise PreconditionError("need --genus and --d")
        constraints = []
        if ns.constraints:
            for tok in ns.constraints.split(","):
                apart, _, epart = tok.partition(":")
                constraints.append((rat(apart), int(epart or "1")))
        free = _rat_list(ns.free) if ns.free else []
        return (ns.genus, ns.d, constraints, free)
    if family == "quartic-lines":
        return (rat(ns.a), rat(ns.b), rat(ns.c if ns.c is not None else "0"))
    if family == "quartic-ct":
        if ns.t is None:
            raise PreconditionError("need --t")
        return (rat(ns.t),)
    if family == "quartic-conic":
        vals = [ns.d1, ns.d2, ns.d3, ns.d4]
        if any(v is None for v in vals):
            raise PreconditionError("need --d1 --d2 --d3 --d4")
        return tuple(rat(v) for v in vals)
    if family == "quartic-conic-1t":
        if ns.a is None or ns.d1 is None or ns.d4 is None:
            raise PreconditionError("need --a --d1 --d4")
        return (rat(ns.a), rat(ns.d1), rat(ns.d4))
    if family == "quartic-conic-2t":
        if ns.a1 is None or ns.a2 is None:
            raise PreconditionError("need --a1 --a2")
        return (rat(ns.a1), rat(ns.a2))
    if family == "quartic-conic-pq":
        if ns.a is None or ns.b is None:
            raise PreconditionError("need --a --b")
        return (rat(ns.a), rat(ns.b))
    if family in ("nekovar-2tor", "nekovar-3tor", "nekovar-g2"):
        if ns.r is None:
            raise PreconditionError("need --r")
        return (rat(ns.r),)
    raise PreconditionError(f"unknown family {family!r}")


def _add_family_flags(p: argparse.ArgumentParser):
    p.add_argument("--genus", type=int)
    p.add_argument("--a")
    p.add_argument("--eps")
    p.add_argument("--d", type=int)
    p.add_argument("--constraints", help="a:eps pairs, e.g. '1:-1,1/2:-1'")
    p.add_argument("--free", help="comma list of free parameters")
    p.add_argument("--b")
    p.add_argument("--c")
    p.add_argument("--t")
    p.add_argument("--r")
    p.add_argument("--a1")
    p.add_argument("--a2")
    p.add_argument("--d1")
    p.add_argument("--d2")
    p.add_argument("--d3")
    p.add_argument("--d4")


def cmd_gen(ns) -> int:
    family = ns.family
    if family not in GENERATORS:
        print(f"unknown family {family!r}; choose one of: {USAGE_FAMILIES}",
              file=sys.stderr)
        return 1
    try:
        args = _build_args_for_family(family, ns)
        rec = GENERATORS[family](*args)
    except VerificationError as e:
        print(f"verification failure: {e}", file=sys.stderr)
        return 3
    except PreconditionError as e:
        print(f"precondition error: {e}", file=sys.stderr)
        return 2
    text = record_to_json(rec)
    if ns.out:
        with open(ns.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
        print(f"wrote {ns.out} ({len(rec.elements)} element(s), all PASS)")
    else:
        print(text)
    return 0


def cmd_verify(ns) -> int:
    try:
        with open(ns.path, "r", encoding="utf-8") as fh:
            text = fh.read()
        loaded = record_from_json(text)
    except (OSError, json.JSONDecodeError) as e:
        print(f"cannot read record: {e}", file=sys.stderr)
        return 1
    except PreconditionError as e:
        print(f"verification failure: {e}", file=sys.stderr)
        return 3
    eng = SymbolEngine(loaded.curve)
    failures = 0
    print(f"curve: {loaded.curve.canonical()}")
    for elem in loaded.elements:
        for k, sym in enumerate(elem.symbols):
            tag = f"{elem.name}" + (f"[S{k+1}]" if len(elem.symbols) > 1 else "")
            try:
                cert = verify_k2t(loaded.curve, sym, engine=eng)
            except (PreconditionError, VerificationError) as e:
                print(f"{tag}: ERROR {e}")
                failures += 1
                continue
            for p, total in cert.point_totals.items():
                print(f"  {tag} @ {p.label()}: tame = {rat_str(total)}")
            print(f"  {tag}: product = {rat_str(cert.product)}  verdict = {cert.verdict}")
            if not cert.passed:
                failures += 1
    if failures:
        print(f"{failures} element(s) failed re-verification", file=sys.stderr)
        return 3
    print("all elements verify: PASS")
    return 0


def _parse_range(spec: str) -> List[Fraction]:
    """Integer range 'a..b' or comma list of rationals."""
    if ".." in spec:
        lo, hi = spec.split("..", 1)
        return [Fraction(k) for k in range(int(lo), int(hi) + 1)]
    return _rat_list(spec)


def _catalog_tuples(family: str, ns) -> List[dict]:
    if family == "quartic-ct":
        if not ns.t:
            raise PreconditionError("catalog quartic-ct needs --t range")
        return [{"t": t} for t in _parse_range(ns.t)]
    if family in ("nekovar-2tor", "nekovar-3tor", "nekovar-g2"):
        if not ns.r:
            raise PreconditionError("catalog needs --r range")
        return [{"r": r} for r in _parse_range(ns.r)]
    if family in ("hyp-odd", "hyp-even"):
        if ns.genus is None or not ns.a_grid:
            raise PreconditionError("catalog needs --genus and --a-grid")
        tuples = []
        for chunk in ns.a_grid.split(";"):
            entry = {"genus": ns.genus, "a": _rat_list(chunk)}
            if family == "hyp-even":
                if not ns.eps:
                    raise PreconditionError("catalog hyp-even needs --eps")
                entry["eps"] = _int_list(ns.eps)
            tuples.append(entry)
        return tuples
    if family == "quartic-conic-2t":
        if not ns.a_grid:
            raise PreconditionError("catalog needs --a-grid of 'a1,a2' pairs")
        return [{"a1": v[0], "a2": v[1]}
                for v in (_rat_list(chunk) for chunk in ns.a_grid.split(";"))]
    raise PreconditionError(f"catalog is not wired for family {family!r}")


def _gen_from_params(family: str, params: dict) -> CurveRecord:
    gen = GENERATORS[family]
    if family == "quartic-ct":
        return gen(params["t"])
    if family in ("nekovar-2tor", "nekovar-3tor", "nekovar-g2"):
        return gen(params["r"])
    if family == "hyp-odd":
        return gen(params["genus"], params["a"])
    if family == "hyp-even":
        return gen(params["genus"], params["a"], params["eps"])
    if family == "quartic-conic-2t":
        return gen(params["a1"], params["a2"])
    raise PreconditionError(f"catalog is not wired for family {family!r}")


def cmd_catalog(ns) -> int:
    family = ns.family
    if family not in GENERATORS:
        print(f"unknown family {family!r}; choose one of: {USAGE_FAMILIES}",
              file=sys.stderr)
        return 1
    try:
        tuples = _catalog_tuples(family, ns)
    except PreconditionError as e:
        print(f"precondition error: {e}", file=sys.stderr)
        return 2
    existing = set()
    try:
        with open(ns.db, "r", encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if line:
                    existing.add(json.loads(line)["input_hash"])
    except FileNotFoundError:
        pass
    except OSError as e:
        print(f"cannot read db: {e}", file=sys.stderr)
        return 1
    added = skipped = errored = 0
    error_lines = []
    entries = []
    for params in tuples:
        h = params_hash(family, params)
        if h in existing:
            skipped += 1
            continue
        try:
            rec = _gen_from_params(family, params)
        except PreconditionError as e:
            errored += 1
            error_lines.append(f"{family} {json.dumps({k: str(v) for k, v in params.items()})}: {e}")
            continue
        stamp = datetime.datetime.now(datetime.timezone.utc).isoformat()
        entries.append(json.dumps(catalog_entry_jsonable(rec, stamp),
                                  sort_keys=False))
        existing.add(h)
        added += 1
    try:
        with open(ns.db, "a", encoding="utf-8") as fh:
            for line in entries:
                fh.write(line + "\n")
    except OSError as e:
        print(f"cannot write db: {e}", file=sys.stderr)
        return 1
    if error_lines:
        with open(ns.db + ".errors.txt", "a", encoding="utf-8") as fh:
            fh.write("\n".join(error_lines) + "\n")
    print(f"catalog: {added} added, {skipped} skipped (duplicates), {errored} errored")
    return 0


def cmd_plot(ns) -> int:
    try:
        with open(ns.path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        print(f"cannot read record: {e}", file=sys.stderr)
        return 1
    if "record" in data:  # catalog entry
        data = data["record"]
    try:
        window = tuple(float(x) for x in ns.window.split(","))
        if len(window) != 4:
            raise ValueError
        spec = PlotSpec(window=window, grid=ns.grid)
        svg = render_record_svg(data, spec)
    except (ValueError, PreconditionError) as e:
        print(f"bad plot spec: {e}", file=sys.stderr)
        return 2
    with open(ns.out, "w", encoding="utf-8") as fh:
        fh.write(svg)
    print(f"wrote {ns.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="k2forge",
        description="Construct plane curves over Q with certified elements "
                    "of the tame second K-group, verify stored records, "
                    "build catalogs, and draw figures.")
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate and verify one family member")
    g.add_argument("family", help=f"one of: {USAGE_FAMILIES}")
    _add_family_flags(g)
    g.add_argument("--out", help="output JSON path (stdout when omitted)")
    g.set_defaults(func=cmd_gen)

    v = sub.add_parser("verify", help="re-verify a stored record from scratch")
    v.add_argument("path")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("catalog", help="batch-generate records into a JSON-lines db")
    c.add_argument("family")
    _add_family_flags(c)
    c.add_argument("--a-grid", dest="a_grid",
                   help="semicolon-separated parameter tuples, e.g. '1,1/2,1/4;1,2,3'")
    c.add_argument("--db", required=True)
    c.set_defaults(func=cmd_catalog)

    p = sub.add_parser("plot", help="render a record to SVG")
    p.add_argument("path")
    p.add_argument("--out", required=True)
    p.add_argument("--window", default="-2,2,-2,2", help="xmin,xmax,ymin,ymax")
    p.add_argument("--grid", type=int, default=512)
    p.set_defaults(func=cmd_plot)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    try:
        ns = ap.parse_args(argv)
    except SystemExit as e:
        return 1 if e.code not in (0, None) else 0
    return ns.func(ns)


if __name__ == "__main__":
    sys.exit(main())
