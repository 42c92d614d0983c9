"""
The catalog: one JSON file per map, curve, isogeny, transformation or identity, validated with pydantic,
cross-references resolved by name, and builders that turn entries into exact objects
"""
import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Union, get_args

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from belyi.belyi0 import BranchingPassport, Genus0BelyiMap
from belyi.composer import CoverSpec, Genus1BelyiMap, compose_outer, compose_with_cover, explicit_map, make_psi1, make_psi2
from belyi.curves import CurveFunction, CurveTransformation, SuperellipticCurve, WeierstrassCurve
from belyi.errors import MissingDependency, SchemaError
from belyi.exactnum import QQ, NumberField, field_create
from belyi.expressions import (
    parse_curve,
    parse_curve_function,
    parse_optional_ratfun,
    parse_ratfun,
    parse_scalar,
)
from belyi.isogeny import IsogenyMap, compose_isogeny, isogeny_from_xonly
from belyi.polyalg import RationalFunction, common_field, ratfun_compose

logger = logging.getLogger(__name__)

Kind = Literal[
    "genus0",
    "curve",
    "genus1-cover",
    "genus1-explicit",
    "isogeny",
    "genus1-isogeny-composite",
    "transformation",
    "hpg-identity",
]
KINDS = get_args(Kind)
METADATA_KEYS = ("tiling_id", "gauge_theory", "source_ref", "consistent", "note")
REFERENCE_KEYS = ("genus0", "outer", "base", "isogeny", "isomorphic_to", "dessin_differs_from")
NAME_ONLY_KEYS = ("base", "isogeny", "isomorphic_to", "dessin_differs_from")


class FieldSpec(BaseModel):
    generator: str = "a"
    minpoly: List[Union[str, int]]

    def build(self) -> NumberField:
        return field_create(self.minpoly, self.generator)


class CatalogEntry(BaseModel):
    """
    name, kind, optional field, the kind-specific payload, expected values (expected_* keys) and opaque metadata
    """

    model_config = ConfigDict(arbitrary_types_allowed=True)

    name: str
    kind: Kind
    field: Optional[FieldSpec] = None
    payload: Dict[str, Any] = Field(default_factory=dict)
    expected: Dict[str, Any] = Field(default_factory=dict)
    metadata: Dict[str, Any] = Field(default_factory=dict)
    path: Optional[Path] = None
    references: Dict[str, "CatalogEntry"] = Field(default_factory=dict, exclude=True)

    @model_validator(mode="before")
    @classmethod
    def collect_sections(cls, data: Any) -> Any:
        if not isinstance(data, dict):
            return data
        known = {"name", "kind", "field", "payload", "expected", "metadata", "path", "references"}
        out = {key: data[key] for key in known if key in data}
        payload = dict(out.get("payload", {}))
        expected = dict(out.get("expected", {}))
        metadata = dict(out.get("metadata", {}))
        for key, value in data.items():
            if key in known:
                continue
            if key.startswith("expected_"):
                expected[key[len("expected_"):]] = value
            elif key in METADATA_KEYS:
                metadata[key] = value
            else:
                payload[key] = value
        out.update(payload=payload, expected=expected, metadata=metadata)
        return out

    def number_field(self) -> NumberField:
        return self.field.build() if self.field else QQ

    def degree(self) -> Optional[int]:
        """
        The stated degree, or the degree of the stated passport
        """
        if "degree" in self.expected:
            return int(self.expected["degree"])
        if "passport" in self.expected:
            return BranchingPassport.parse(str(self.expected["passport"])).degree
        return None

    def matches(self, key: str, value: str) -> bool:
        """
        Filter test on kind, name, degree or any metadata key
        """
        if key == "kind":
            return self.kind == value
        if key == "name":
            return self.name == value
        if key == "degree":
            return str(self.degree()) == value
        return str(self.metadata.get(key, "")) == value


CatalogEntry.model_rebuild()


def _reference_name(value: Any, always: bool = False) -> Optional[str]:
    """
    "phi1.json" refers to a sibling entry; keys that only ever hold references also accept a bare name
    """
    if not isinstance(value, str):
        return None
    if value.endswith(".json"):
        return value[: -len(".json")]
    return value if always else None


def _references(entry: CatalogEntry) -> Dict[str, str]:
    refs = {}
    for key in REFERENCE_KEYS:
        name = _reference_name(entry.payload.get(key), always=key in NAME_ONLY_KEYS)
        if name:
            refs[key] = name
    inner_map = entry.payload.get("map")
    if isinstance(inner_map, dict) and "outer" in inner_map:
        name = _reference_name(inner_map["outer"])
        if name:
            refs["map.outer"] = name
    return refs


def load_entry(path: Union[str, Path], _seen: Optional[set] = None) -> CatalogEntry:
    """
    Parse and validate one entry file and load every entry it refers to
    """
    path = Path(path)
    seen = set() if _seen is None else _seen
    if not path.exists():
        raise MissingDependency(f"catalog entry {path} does not exist")
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    if isinstance(data, dict):
        data.setdefault("name", path.stem)
        data["path"] = path
    try:
        entry = CatalogEntry.model_validate(data)
    except ValidationError as exc:
        problems = "; ".join(f"{'.'.join(str(p) for p in err['loc'])}: {err['msg']}" for err in exc.errors())
        raise SchemaError(f"{path}: {problems}") from exc
    seen = seen | {path.resolve()}
    for key, name in _references(entry).items():
        target = path.parent / f"{name}.json"
        if target.resolve() in seen:
            raise SchemaError(f"{path}: circular reference through {name}")
        if not target.exists():
            raise MissingDependency(f"{path}: {key} refers to missing entry {name}")
        logger.debug("%s: resolving %s -> %s", entry.name, key, target)
        entry.references[key] = load_entry(target, seen)
    return entry


def load_catalog(directory: Union[str, Path]) -> List[CatalogEntry]:
    directory = Path(directory)
    if not directory.is_dir():
        raise MissingDependency(f"catalog directory {directory} does not exist")
    return [load_entry(p) for p in sorted(directory.glob("*.json"))]


def _field_for(entry: CatalogEntry, *others: NumberField) -> NumberField:
    field = entry.number_field()
    for other in others:
        field = common_field(field, other)
    return field


def genus0_function(entry: CatalogEntry) -> RationalFunction:
    """
    The rational function of a genus0 entry: an expression, {"num", "den"}, or {"outer": entry or expression, "inner": expression}
    """
    field = entry.number_field()
    spec = entry.payload.get("map")
    if spec is None:
        raise SchemaError(f"{entry.name}: genus0 entry without a map")
    if isinstance(spec, dict) and "inner" in spec:
        inner = parse_ratfun(spec["inner"], field)
        if "map.outer" in entry.references:
            outer = build_genus0(entry.references["map.outer"]).map
        else:
            outer = parse_ratfun(spec["outer"], field)
        nf = common_field(outer.field, inner.field)
        return ratfun_compose(outer.change_field(nf), inner.change_field(nf))
    return parse_ratfun(spec, field)


def build_genus0(entry: CatalogEntry) -> Genus0BelyiMap:
    return Genus0BelyiMap.create(genus0_function(entry))


def _genus0_reference(entry: CatalogEntry, key: str) -> Genus0BelyiMap:
    if key in entry.references:
        return build_genus0(entry.references[key])
    value = entry.payload.get(key)
    if value is None:
        raise SchemaError(f"{entry.name}: missing {key}")
    return Genus0BelyiMap.create(parse_ratfun(value, entry.number_field()))


def build_curve(entry: CatalogEntry) -> SuperellipticCurve:
    field = entry.number_field()
    if "weierstrass" in entry.payload:
        return weierstrass_model(entry).as_superelliptic()
    if "curve" not in entry.payload:
        raise SchemaError(f"{entry.name}: curve entry needs 'curve' or 'weierstrass'")
    return parse_curve(entry.payload["curve"], field)


def weierstrass_model(entry: CatalogEntry) -> WeierstrassCurve:
    field = entry.number_field()
    w = entry.payload["weierstrass"]
    return WeierstrassCurve(*(parse_scalar(w.get(k, "0"), field) for k in ("b2", "b4", "b6")))


def _cover_spec(value: Dict[str, Any], field: NumberField) -> CoverSpec:
    curve = parse_curve(value, field)
    return CoverSpec(curve.n, curve.f, curve.factors)


def build_genus1(entry: CatalogEntry) -> Genus1BelyiMap:
    """
    The genus-1 map of a cover, explicit or isogeny-composite entry
    """
    if entry.kind == "genus1-cover":
        g0 = _genus0_reference(entry, "genus0")
        field = _field_for(entry, g0.field)
        return compose_with_cover(g0, _cover_spec(entry.payload["cover"], field))
    if entry.kind == "genus1-explicit":
        return explicit_map(build_explicit_value(entry))
    if entry.kind == "genus1-isogeny-composite":
        base = build_genus1(_required_reference(entry, "base"))
        iso = isogeny_with_recovered_y(_required_reference(entry, "isogeny"))
        return compose_isogeny(base, iso)
    raise SchemaError(f"{entry.name}: kind {entry.kind} does not describe a genus-1 map")


def _required_reference(entry: CatalogEntry, key: str) -> CatalogEntry:
    if key not in entry.references:
        raise MissingDependency(f"{entry.name}: {key} must name another catalog entry")
    return entry.references[key]


def build_explicit_value(entry: CatalogEntry) -> CurveFunction:
    """
    A function on a curve given directly, or as a degree-3 covering (psi1 / psi2) with an optional outer genus-0 map
    """
    field = entry.number_field()
    payload = entry.payload
    if "psi2" in payload:
        spec = payload["psi2"]
        _, inner = make_psi2(parse_scalar(spec["A"], field), parse_scalar(spec["B_sqrt"], field))
    elif "psi1" in payload:
        _, inner = make_psi1(parse_scalar(payload["psi1"]["u"], field), field)
    else:
        if "curve" not in payload or "value" not in payload:
            raise SchemaError(f"{entry.name}: explicit entry needs curve and value, or psi1/psi2")
        curve = parse_curve(payload["curve"], field)
        return parse_curve_function(payload["value"], curve)
    if "outer" in entry.references or "outer" in payload:
        return compose_outer(_genus0_reference(entry, "outer"), inner)
    return inner


def build_model_transformation(entry: CatalogEntry, source: SuperellipticCurve) -> CurveTransformation:
    """
    The substitution taking a map to another model of its curve: {"curve": target, "x": ..., "y": ...}
    """
    spec = entry.payload["model"]
    field = _field_for(entry, source.field)
    target = parse_curve(spec["curve"], field)
    return CurveTransformation(
        source.change_field(field),
        target,
        parse_curve_function(spec["x"], target),
        parse_curve_function(spec["y"], target),
    )


def build_transformation(entry: CatalogEntry) -> CurveTransformation:
    field = entry.number_field()
    source = parse_curve(entry.payload["source"], field)
    target = parse_curve(entry.payload["target"], field)
    return CurveTransformation(
        source,
        target,
        parse_curve_function(entry.payload["x"], target),
        parse_curve_function(entry.payload["y"], target),
    )


def build_isogeny(entry: CatalogEntry) -> IsogenyMap:
    """
    source, target, u and R as printed; a missing or null R is recovered from the x-only check when it exists over the field
    """
    field = entry.number_field()
    payload = entry.payload
    source = parse_curve(payload["source"], field)
    target = parse_curve(payload["target"], field)
    u = parse_ratfun(payload["u"], field)
    degree = int(payload.get("degree", u.degree))
    R = parse_optional_ratfun(payload.get("R"), field)
    if R is None and payload.get("y") is not None:
        R = _y_component(payload["y"], source)
    return IsogenyMap(source, target, u, R, degree)


def _y_component(value: Any, source: SuperellipticCurve) -> RationalFunction:
    """
    Any expression for Y in x and y, reduced through the source curve relation to y * R(x)
    """
    reduced = parse_curve_function(value, source)
    if any(not p.is_zero() for i, p in enumerate(reduced.parts) if i != 1):
        raise SchemaError(f"Y = {value} does not reduce to y times a rational function of x")
    return reduced.parts[1]


def isogeny_with_recovered_y(entry: CatalogEntry) -> IsogenyMap:
    iso = build_isogeny(entry)
    if iso.R is not None:
        return iso
    return isogeny_from_xonly(iso.source, iso.target, iso.u, iso.degree)
