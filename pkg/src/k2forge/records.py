"""Curve records: the serializable bundle a family generator returns.

A record carries the curve, named marked points, the constructed K2
elements (torsion triples keep all three symbols S_i plus their orders),
their verification certificates, integrality flags and the auxiliary
lines/conics used, all with exact "p/q" rationals.  Records round-trip
through JSON; re-verification never trusts the stored certificate.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional

from .bipoly import BiPoly
from .curves import CurvePoint, PlaneCurve
from .errors import PreconditionError
from .rationals import rat, rat_str
from .symbols import Certificate, FnElt, K2Element, SymbolPair

SCHEMA_VERSION = 1
TOOL_VERSION = "0.1.0"


@dataclass
class NamedElement:
    """One constructed element: a torsion triple (three symbols S_i with
    their orders) or a single symbol combination."""

    name: str
    kind: str  # "triple" | "combination"
    symbols: List[K2Element]
    certificates: List[Certificate]
    orders: Optional[List[int]] = None
    lcm: Optional[int] = None
    meta: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.certificates)


@dataclass
class CurveRecord:
    family_id: str
    params: Dict[str, object]
    curve: PlaneCurve
    model: dict
    points: Dict[str, CurvePoint]
    elements: List[NamedElement]
    integrality_flags: List[dict] = field(default_factory=list)
    aux_lines: List[dict] = field(default_factory=list)
    aux_conics: List[dict] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)
    extras: dict = field(default_factory=dict)

    @property
    def all_pass(self) -> bool:
        return all(e.passed for e in self.elements)


# ---------------------------------------------------------------------------
# JSON encoding
# ---------------------------------------------------------------------------

def _param_jsonable(v):
    if isinstance(v, (int, Fraction)):
        return rat_str(rat(v))
    if isinstance(v, (list, tuple)):
        return [_param_jsonable(x) for x in v]
    return str(v)


def point_jsonable(p: CurvePoint) -> dict:
    if p.is_affine:
        return {"kind": "affine", "x": rat_str(p.x), "y": rat_str(p.y)}
    return {"kind": "infinity", "X": rat_str(p.x), "Y": rat_str(p.y), "Z": "0",
            "branch": p.branch}


def point_from_json(d: dict) -> CurvePoint:
    if d["kind"] == "affine":
        return CurvePoint.affine(rat(d["x"]), rat(d["y"]))
    return CurvePoint.at_infinity(rat(d["X"]), rat(d["Y"]), int(d.get("branch", 0)))


def _fnelt_jsonable(f: FnElt) -> dict:
    """Factored form (exact working representation) plus readable num/den."""
    return {
        "scalar": rat_str(f.scalar),
        "factors": [{"poly": p.canonical(), "exp": e} for p, e in f.factors],
        "num": f.num.canonical(),
        "den": f.den.canonical(),
    }


def _fnelt_from_json(curve: PlaneCurve, d: dict) -> FnElt:
    if "factors" in d:
        out = FnElt.constant(curve, rat(d.get("scalar", "1")))
        for fd in d["factors"]:
            out = out * FnElt(curve, BiPoly.parse(fd["poly"])) ** int(fd["exp"])
        return out
    return FnElt(curve, BiPoly.parse(d["num"]), BiPoly.parse(d["den"]))


def _element_jsonable(e: NamedElement) -> dict:
    return {
        "name": e.name,
        "kind": e.kind,
        "orders": e.orders,
        "lcm": e.lcm,
        "symbols": [
            {
                "pairs": [
                    {
                        "f": _fnelt_jsonable(p.f),
                        "h": _fnelt_jsonable(p.h),
                        "coefficient": p.coefficient,
                    }
                    for p in sym.terms
                ],
                "support": [point_jsonable(pt) for pt in sym.declared_support],
            }
            for sym in e.symbols
        ],
        "certificates": [c.to_jsonable() for c in e.certificates],
        "meta": {k: (rat_str(v) if isinstance(v, Fraction) else v)
                 for k, v in e.meta.items() if k != "kappa_i"},
    }


def record_jsonable(rec: CurveRecord) -> dict:
    return {
        "k2forge_schema": SCHEMA_VERSION,
        "family_id": rec.family_id,
        "params": {k: _param_jsonable(v) for k, v in rec.params.items()},
        "curve": {
            "affine": rec.curve.canonical(),
            "projective": rec.curve.hom.canonical(),
            "degree": rec.curve.degree,
            "model": rec.model,
        },
        "points": {name: point_jsonable(p) for name, p in rec.points.items()},
        "elements": [_element_jsonable(e) for e in rec.elements],
        "integrality_flags": rec.integrality_flags,
        "aux": {"lines": rec.aux_lines, "conics": rec.aux_conics},
        "notes": rec.notes,
        "extras": rec.extras,
    }


def record_to_json(rec: CurveRecord) -> str:
    return json.dumps(record_jsonable(rec), indent=1, sort_keys=False)


# ---------------------------------------------------------------------------
# decoding (for re-verification)
# ---------------------------------------------------------------------------

@dataclass
class LoadedElement:
    name: str
    kind: str
    symbols: List[K2Element]
    stored_verdicts: List[str]


@dataclass
class LoadedRecord:
    family_id: str
    curve: PlaneCurve
    points: Dict[str, CurvePoint]
    elements: List[LoadedElement]
    raw: dict


def record_from_json(text: str) -> LoadedRecord:
    data = json.loads(text)
    if data.get("k2forge_schema") != SCHEMA_VERSION:
        raise PreconditionError("unsupported record schema")
    curve = PlaneCurve(BiPoly.parse(data["curve"]["affine"]))
    points = {name: point_from_json(d) for name, d in data["points"].items()}
    for name, p in points.items():
        if not curve.contains(p):
            raise PreconditionError(f"point {name} does not lie on the stored curve")
    elements = []
    for ed in data["elements"]:
        symbols = []
        for sd in ed["symbols"]:
            pairs = [
                SymbolPair(
                    _fnelt_from_json(curve, pd["f"]),
                    _fnelt_from_json(curve, pd["h"]),
                    int(pd["coefficient"]),
                )
                for pd in sd["pairs"]
            ]
            support = [point_from_json(pt) for pt in sd["support"]]
            symbols.append(K2Element(pairs, support, name=ed["name"]))
        verdicts = [cd["verdict"] for cd in ed["certificates"]]
        elements.append(LoadedElement(ed["name"], ed["kind"], symbols, verdicts))
    return LoadedRecord(data["family_id"], curve, points, elements, data)


# ---------------------------------------------------------------------------
# catalog entries
# ---------------------------------------------------------------------------

def params_hash(family_id: str, params: Dict[str, object]) -> str:
    canon = json.dumps({"family": family_id,
                        "params": {k: _param_jsonable(v) for k, v in sorted(params.items())}},
                       sort_keys=True)
    return hashlib.sha256(canon.encode("utf-8")).hexdigest()


def catalog_entry_jsonable(rec: CurveRecord, created_at: str) -> dict:
    return {
        "record": record_jsonable(rec),
        "created_at": created_at,
        "tool_version": TOOL_VERSION,
        "input_hash": params_hash(rec.family_id, rec.params),
    }
