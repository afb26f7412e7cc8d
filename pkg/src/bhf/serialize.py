"""JSON schemas and named catalog references for every domain type.

Every document carries a top-level "schema" field.  Serialization is
deterministic: keys sorted, generator and arrow lists sorted, diagrams
sorted by start point, so identical objects produce byte-identical text.

``parse_document`` accepts a JSON document (text or dict), a file path, or
a named catalog reference such as "h_inf", "catalog:h_minus1",
"dd_id:torus", "dd_id:split:2", "twist:Tm'", "handlebody:2", "trefoil",
"pattern:cable21".
"""

from __future__ import annotations

import json
import os

from .pmc import PointedMatchedCircle, make_pmc, standard_pmc, PMCError
from .strands import AlgebraElement, SurfaceAlgebra, algebra_of, make_diagram, torus_element
from .dmodules import TypeDModule, TypeDDModule, UTypeDModule, TensorElement, ModuleError
from .f2u import F2UComplex, poly_exponents, poly_from_exponents
from .gf2 import F2ChainComplex
from .knots import CFKComplex, CFKError
from . import catalog as _catalog
from . import knots as _knots


class SchemaError(ValueError):
    pass


class ValidationError(ValueError):
    pass


SCHEMAS = {
    "pmc": "bhf/pmc@1",
    "element": "bhf/element@1",
    "dmodule": "bhf/dmodule@1",
    "udmodule": "bhf/udmodule@1",
    "ddmodule": "bhf/ddmodule@1",
    "cfk": "bhf/cfk@1",
    "f2u": "bhf/f2u@1",
    "f2chain": "bhf/f2chain@1",
}


# ---------------------------------------------------------------------------
# serialization


def serialize(obj) -> dict:
    if isinstance(obj, PointedMatchedCircle):
        return {
            "schema": SCHEMAS["pmc"],
            "genus": obj.genus,
            "matching": [list(p) for p in obj.matching_as_pairs()],
        }
    if isinstance(obj, AlgebraElement):
        return {
            "schema": SCHEMAS["element"],
            "n": obj.n,
            "terms": [
                {"n": obj.n, "strands": [list(s) for s in diag]}
                for diag in obj.sorted_terms()
            ],
        }
    if isinstance(obj, TypeDModule):
        return {
            "schema": SCHEMAS["dmodule"],
            "algebra": serialize(obj.algebra.circle),
            "generators": [
                {"name": n, "idempotent": list(idem)}
                for n, idem in sorted(obj.generators.items())
            ],
            "delta": [
                {"src": s, "coeff": serialize(c), "dst": t}
                for (s, t), c in sorted(obj.delta.items())
            ],
        }
    if isinstance(obj, UTypeDModule):
        delta = []
        for (s, t), coeff in sorted(obj.delta.items()):
            for m, e in sorted(coeff.items()):
                delta.append({"src": s, "coeff": serialize(e), "dst": t, "upower": m})
        return {
            "schema": SCHEMAS["udmodule"],
            "algebra": serialize(obj.algebra.circle),
            "generators": [
                {"name": n, "idempotent": list(idem)}
                for n, idem in sorted(obj.generators.items())
            ],
            "delta": delta,
        }
    if isinstance(obj, TypeDDModule):
        return {
            "schema": SCHEMAS["ddmodule"],
            "algebra1": serialize(obj.algebra1.circle),
            "algebra2": serialize(obj.algebra2.circle),
            "generators": [
                {"name": n, "idempotent1": list(i1), "idempotent2": list(i2)}
                for n, (i1, i2) in sorted(obj.generators.items())
            ],
            "delta": [
                {
                    "src": s,
                    "terms": [
                        [[list(x) for x in d1], [list(x) for x in d2]]
                        for (d1, d2) in c.sorted_terms()
                    ],
                    "dst": t,
                }
                for (s, t), c in sorted(obj.delta.items())
            ],
        }
    if isinstance(obj, CFKComplex):
        gens = []
        for n in obj.generators:
            g = {"name": n, "alexander": obj.alexander[n]}
            if obj.parities is not None:
                g["parity"] = obj.parities[n]
            gens.append(g)
        return {
            "schema": SCHEMAS["cfk"],
            "generators": gens,
            "differential": [
                {"src": s, "upower": m, "dst": t} for (s, m, t) in obj.entries()
            ],
        }
    if isinstance(obj, F2UComplex):
        gens = []
        for n in obj.generators:
            g = {"name": n}
            if obj.graded:
                g["grading"] = obj.gradings[n]
            gens.append(g)
        return {
            "schema": SCHEMAS["f2u"],
            "generators": gens,
            "differential": [
                {"src": s, "dst": t, "exponents": poly_exponents(p)}
                for (s, t), p in sorted(obj.differential.items())
            ],
        }
    if isinstance(obj, F2ChainComplex):
        return {
            "schema": SCHEMAS["f2chain"],
            "generators": list(obj.generators),
            "differential": [{"src": s, "dst": t} for s, t in sorted(obj.entries)],
        }
    raise SchemaError(f"cannot serialize {type(obj).__name__}")


def dumps(obj) -> str:
    doc = obj if isinstance(obj, dict) else serialize(obj)
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


# ---------------------------------------------------------------------------
# parsing


def _coeff_from(doc, algebra: SurfaceAlgebra) -> AlgebraElement:
    if isinstance(doc, str):
        if algebra.circle != standard_pmc("torus"):
            raise SchemaError(f"named coefficient {doc!r} needs the torus algebra")
        return torus_element(doc)
    if not isinstance(doc, dict):
        raise SchemaError(f"bad coefficient {doc!r}")
    n = doc.get("n", algebra.n)
    elt = AlgebraElement(n, [])
    for diag in doc["terms"]:
        if isinstance(diag, dict):
            strands = [tuple(s) for s in diag["strands"]]
        else:
            strands = [tuple(s) for s in diag]
        elt = elt + AlgebraElement(n, [make_diagram(n, strands)])
    return elt


def _deserialize_pmc(doc) -> PointedMatchedCircle:
    if isinstance(doc, str):
        return parse_circle_name(doc)
    try:
        return make_pmc(doc["genus"], [tuple(p) for p in doc["matching"]])
    except PMCError as e:
        raise ValidationError(str(e))
    except KeyError as e:
        raise SchemaError(f"pmc document missing field {e}")


def parse_circle_name(name: str) -> PointedMatchedCircle:
    """Named circles: "torus", "split:k", "antipodal:k"."""
    bits = name.split(":")
    try:
        if bits[0] == "torus":
            return standard_pmc("torus")
        if bits[0] in ("split", "antipodal"):
            return standard_pmc(bits[0], int(bits[1]) if len(bits) > 1 else 1)
    except (PMCError, ValueError) as e:
        raise ValidationError(str(e))
    raise SchemaError(f"unknown circle name {name!r}")


def deserialize(doc: dict):
    schema = doc.get("schema")
    if schema is None:
        raise SchemaError("document has no schema field")
    if schema == SCHEMAS["pmc"]:
        return _deserialize_pmc(doc)
    if schema == SCHEMAS["element"]:
        return _coeff_from(doc, algebra_of(standard_pmc("torus")))  # n from doc
    if schema == SCHEMAS["dmodule"]:
        circle = _deserialize_pmc(doc["algebra"])
        alg = algebra_of(circle)
        gens = {g["name"]: tuple(g["idempotent"]) for g in doc["generators"]}
        delta: dict = {}
        for e in doc["delta"]:
            key = (e["src"], e["dst"])
            c = _coeff_from(e["coeff"], alg)
            delta[key] = delta.get(key, AlgebraElement.zero(alg.n)) + c
        try:
            return TypeDModule(alg, gens, delta)
        except ModuleError as e:
            raise ValidationError(str(e))
    if schema == SCHEMAS["udmodule"]:
        circle = _deserialize_pmc(doc["algebra"])
        alg = algebra_of(circle)
        gens = {g["name"]: tuple(g["idempotent"]) for g in doc["generators"]}
        delta: dict = {}
        for e in doc["delta"]:
            key = (e["src"], e["dst"])
            m = int(e.get("upower", 0))
            c = _coeff_from(e["coeff"], alg)
            cur = delta.setdefault(key, {})
            cur[m] = cur.get(m, AlgebraElement.zero(alg.n)) + c
        try:
            return UTypeDModule(alg, gens, delta)
        except ModuleError as e:
            raise ValidationError(str(e))
    if schema == SCHEMAS["ddmodule"]:
        alg1 = algebra_of(_deserialize_pmc(doc["algebra1"]))
        alg2 = algebra_of(_deserialize_pmc(doc["algebra2"]))
        gens = {
            g["name"]: (tuple(g["idempotent1"]), tuple(g["idempotent2"]))
            for g in doc["generators"]
        }
        delta: dict = {}
        for e in doc["delta"]:
            key = (e["src"], e["dst"])
            terms = set()
            for d1, d2 in e["terms"]:
                terms ^= {
                    (
                        make_diagram(alg1.n, [tuple(s) for s in d1]),
                        make_diagram(alg2.n, [tuple(s) for s in d2]),
                    )
                }
            t = TensorElement(alg1.n, alg2.n, terms)
            delta[key] = delta.get(key, TensorElement(alg1.n, alg2.n)) + t
        try:
            return TypeDDModule(alg1, alg2, gens, delta)
        except ModuleError as e:
            raise ValidationError(str(e))
    if schema == SCHEMAS["cfk"]:
        gens = {g["name"]: int(g["alexander"]) for g in doc["generators"]}
        parities = None
        if all("parity" in g for g in doc["generators"]) and doc["generators"]:
            parities = {g["name"]: int(g["parity"]) for g in doc["generators"]}
        entries = [(e["src"], int(e.get("upower", 0)), e["dst"]) for e in doc["differential"]]
        try:
            return CFKComplex(gens, entries, parities=parities)
        except CFKError as e:
            raise ValidationError(str(e))
    if schema == SCHEMAS["f2u"]:
        gens = [g["name"] for g in doc["generators"]]
        gradings = None
        if all("grading" in g for g in doc["generators"]) and doc["generators"]:
            gradings = {g["name"]: int(g["grading"]) for g in doc["generators"]}
        diff = {
            (e["src"], e["dst"]): poly_from_exponents(e["exponents"])
            for e in doc["differential"]
        }
        return F2UComplex(gens, diff, gradings=gradings)
    if schema == SCHEMAS["f2chain"]:
        return F2ChainComplex(
            doc["generators"], [(e["src"], e["dst"]) for e in doc["differential"]]
        )
    raise SchemaError(f"unknown schema {schema!r}")


# ---------------------------------------------------------------------------
# named catalog references


def catalog_names() -> list[str]:
    return [
        "h_inf", "h_minus1", "h_0",
        "handlebody:<k>",
        "dd_id:<circle>", "twist:<Tm|Tm'|Tl|Tl'>",
        "underslide:<circle>:<b1>:<c1>",
        "trefoil", "figure8", "unknot", "pattern:cable21",
        "circle:<torus|split:k|antipodal:k>",
    ]


def catalog_lookup(name: str):
    bits = name.split(":")
    head = bits[0]
    if head in ("h_inf", "h_minus1", "h_0", "h_infinity", "h_zero"):
        return _catalog.solid_torus(head.removeprefix("h_"))
    if head == "handlebody":
        return _catalog.handlebody(int(bits[1]))
    if head == "dd_id":
        return _catalog.dd_identity(parse_circle_name(":".join(bits[1:])))
    if head == "twist":
        return _catalog.dehn_twist_dd(bits[1])
    if head == "underslide":
        circle = parse_circle_name(":".join(bits[1:-2]))
        slide = _catalog.make_arcslide(circle, int(bits[-2]), int(bits[-1]))
        return _catalog.underslide_dd(slide)
    if head == "trefoil":
        return _knots.trefoil_cfk()
    if head in ("figure8", "fig8"):
        return _knots.figure8_cfk()
    if head == "unknot":
        return _knots.unknot_cfk()
    if head == "pattern":
        return _knots.PATTERNS[bits[1]]()
    if head == "circle":
        return parse_circle_name(":".join(bits[1:]))
    raise SchemaError(f"unknown catalog reference {name!r}")


def parse_document(text):
    """Typed object from JSON text, a dict, a file path or a catalog name."""
    if isinstance(text, dict):
        return deserialize(text)
    text = text.strip()
    if text.startswith("{") or text.startswith("["):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as e:
            raise SchemaError(f"JSON syntax error at line {e.lineno}, column {e.colno}: {e.msg}")
        return deserialize(doc)
    if os.path.exists(text):
        with open(text, "r", encoding="utf-8") as fh:
            raw = fh.read()
        try:
            doc = json.loads(raw)
        except json.JSONDecodeError as e:
            raise SchemaError(
                f"{text}: JSON syntax error at line {e.lineno}, column {e.colno}: {e.msg}"
            )
        return deserialize(doc)
    if text.startswith("catalog:"):
        return catalog_lookup(text[len("catalog:"):])
    return catalog_lookup(text)
