"""Reading and validating JSON instance files.

An instance names a graded basis, a bracket family, an optional
representation and optional named cochains.  Rationals are written as
integers or ``"p/q"`` strings.  Structural problems are reported by
:mod:`jsonschema`; semantic ones (unknown generator, zero denominator,
duplicate tuple, skewness or degree violations) are collected with the
path of the offending field.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Any

import jsonschema

from .cochains import Cochain, left_multiplication
from .ghost_ring import GhostRing
from .graded_core import Convention, GradedBasis
from .structures import BracketFamily, DegreeError, RepresentationFamily, SkewnessError

FORMAT_VERSION = 1


class InstanceError(ValueError):
    """Invalid instance file; ``errors`` lists one message per offending field."""

    def __init__(self, errors: list[str], source: str = "<instance>"):
        self.errors = list(errors)
        self.source = source
        super().__init__(f"{source}: " + "; ".join(self.errors))


@dataclass
class Instance:
    name: str
    ring: GhostRing
    family: BracketFamily
    representation: RepresentationFamily | None = None
    cochains: dict[str, Cochain] = field(default_factory=dict)
    description: str = ""

    @property
    def basis(self) -> GradedBasis:
        return self.ring.basis

    @property
    def skew(self) -> bool:
        return self.family.skew

    @property
    def module_dim(self) -> int:
        return self.representation.module_dim if self.representation else 1

    def rep_or_trivial(self) -> RepresentationFamily:
        if self.representation is not None:
            return self.representation
        return RepresentationFamily.trivial(self.family.ring, 1, skew=self.skew)


def load_schema() -> dict:
    text = resources.files("ghostcalc").joinpath("schema/instance.schema.json").read_text("utf-8")
    return json.loads(text)


def parse_rational(value: Any, where: str, errors: list[str]) -> Fraction:
    try:
        if isinstance(value, bool):
            raise ValueError
        if isinstance(value, int):
            return Fraction(value)
        if isinstance(value, str):
            text = value.replace(" ", "")
            if "/" in text:
                num, den = text.split("/", 1)
                if int(den) == 0:
                    errors.append(f"{where}: zero denominator in {value!r}")
                    return Fraction(0)
                return Fraction(int(num), int(den))
            return Fraction(int(text))
        raise ValueError
    except (ValueError, TypeError):
        errors.append(f"{where}: malformed rational {value!r}")
        return Fraction(0)


def _indices(names: list[str], basis: GradedBasis, where: str, errors: list[str]) -> tuple[int, ...] | None:
    out = []
    for name in names:
        try:
            out.append(basis.index(name))
        except KeyError:
            errors.append(f"{where}: unknown generator {name!r}")
            return None
    return tuple(out)


def _path(err: jsonschema.ValidationError) -> str:
    parts = []
    for p in err.absolute_path:
        parts.append(f"[{p}]" if isinstance(p, int) else (f".{p}" if parts else str(p)))
    return "".join(parts) or "<root>"


def parse_instance_data(data: Any, source: str = "<instance>") -> Instance:
    validator = jsonschema.Draft202012Validator(load_schema())
    problems = sorted(validator.iter_errors(data), key=lambda e: list(map(str, e.absolute_path)))
    if problems:
        raise InstanceError([f"{_path(e)}: {e.message}" for e in problems], source)

    errors: list[str] = []
    try:
        basis = GradedBasis.from_spec(
            g if isinstance(g, str) else (g["name"], g.get("vdeg", 0)) for g in data["generators"])
    except ValueError as exc:
        raise InstanceError([f"generators: {exc}"], source) from None
    convention = Convention.parse(data.get("convention", "primary"))
    skew = data.get("skew", True)
    ring = GhostRing(basis, convention, free=not skew)

    brackets: dict[tuple, dict[int, Fraction]] = {}
    seen: dict[tuple, str] = {}
    for n, entry in enumerate(data.get("brackets", [])):
        where = f"brackets[{n}]"
        t = _indices(entry["inputs"], basis, f"{where}.inputs", errors)
        if t is None:
            continue
        key = tuple(sorted(t)) if skew else t
        if key in seen:
            errors.append(f"{where}.inputs: duplicate tuple, already given at {seen[key]}")
            continue
        seen[key] = where
        out = {}
        for name, val in entry["output"].items():
            j = _indices([name], basis, f"{where}.output", errors)
            if j is None:
                continue
            out[j[0]] = parse_rational(val, f"{where}.output.{name}", errors)
        brackets[t] = out

    rep_block = data.get("representation")
    cochain_blocks = data.get("cochains", {})
    if errors:
        raise InstanceError(errors, source)

    try:
        family = BracketFamily(ring, brackets, skew=skew)
    except (SkewnessError, DegreeError) as exc:
        raise InstanceError([f"brackets: {exc}"], source) from None

    rep = None
    if rep_block is not None:
        rep = _parse_representation(rep_block, family, errors)
    module_dim = rep.module_dim if rep else 1
    module_degrees = rep.module_degrees if rep else (0,)

    cochains = {}
    for cname, block in cochain_blocks.items():
        where = f"cochains.{cname}"
        arity = block["arity"]
        values = {}
        for n, item in enumerate(block.get("values", [])):
            iw = f"{where}.values[{n}]"
            t = _indices(item["inputs"], basis, f"{iw}.inputs", errors)
            if t is None:
                continue
            if len(t) != arity:
                errors.append(f"{iw}.inputs: {len(t)} inputs for a cochain of arity {arity}")
                continue
            if len(item["value"]) != module_dim:
                errors.append(f"{iw}.value: length {len(item['value'])}, module dimension is {module_dim}")
                continue
            key = tuple(sorted(t)) if skew else t
            if key in values:
                errors.append(f"{iw}.inputs: duplicate tuple")
                continue
            values[key] = (t, [parse_rational(v, f"{iw}.value[{k}]", errors) for k, v in enumerate(item["value"])])
        try:
            cochains[cname] = Cochain(ring, arity, module_dim, dict(values.values()), skew=skew,
                                      module_degrees=module_degrees)
        except ValueError as exc:
            errors.append(f"{where}: {exc}")

    if errors:
        raise InstanceError(errors, source)
    return Instance(data.get("name", source), family.ring, family, rep, cochains, data.get("description", ""))


def _parse_representation(block: dict, family: BracketFamily, errors: list[str]) -> RepresentationFamily | None:
    basis = family.basis
    dim = block["module_dim"]
    degrees = block.get("module_degrees")
    if degrees is not None and len(degrees) != dim:
        errors.append(f"representation.module_degrees: length {len(degrees)}, module_dim is {dim}")
        return None
    if block.get("left_multiplication"):
        if family.skew or dim != basis.dim:
            errors.append("representation.left_multiplication: needs an ordered family and module_dim = dim")
            return None
        return left_multiplication(family)
    maps = {}
    seen = set()
    for n, item in enumerate(block.get("maps", [])):
        where = f"representation.maps[{n}]"
        t = _indices(item["inputs"], basis, f"{where}.inputs", errors)
        if t is None:
            continue
        key = tuple(sorted(t)) if family.skew else t
        if key in seen:
            errors.append(f"{where}.inputs: duplicate tuple")
            continue
        seen.add(key)
        rows = item["matrix"]
        if len(rows) != dim or any(len(r) != dim for r in rows):
            errors.append(f"{where}.matrix: expected {dim}x{dim}")
            continue
        maps[t] = [[parse_rational(x, f"{where}.matrix[{i}][{j}]", errors) for j, x in enumerate(r)]
                   for i, r in enumerate(rows)]
    if errors:
        return None
    try:
        return RepresentationFamily(family.ring, dim, maps, module_degrees=degrees, skew=family.skew)
    except (SkewnessError, DegreeError, ValueError) as exc:
        errors.append(f"representation: {exc}")
        return None


def parse_instance(path: str | Path) -> Instance:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InstanceError([f"cannot read file: {exc.strerror}"], str(path)) from None
    except UnicodeDecodeError:
        raise InstanceError(["file is not UTF-8 text"], str(path)) from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceError([f"line {exc.lineno} column {exc.colno}: {exc.msg}"], str(path)) from None
    return parse_instance_data(data, str(path))


def corpus_names() -> list[str]:
    root = resources.files("ghostcalc").joinpath("corpus")
    return sorted(p.name[:-len(".json")] for p in root.iterdir() if p.name.endswith(".json"))


def corpus_path(name: str) -> Path:
    p = resources.files("ghostcalc").joinpath("corpus", f"{name}.json")
    if not p.is_file():
        raise KeyError(f"no corpus instance {name!r}; available: {', '.join(corpus_names())}")
    return Path(str(p))


def load_corpus(name: str) -> Instance:
    return parse_instance(corpus_path(name))
