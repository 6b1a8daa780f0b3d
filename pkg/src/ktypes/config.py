"""Real-form configuration files (JSON with rationals written as ``"num/den"`` strings)."""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Optional

from .exact import GramForm, WeightVector
from .kstruct import RealFormData, make_real_form
from .rootsys import build_from_cartan_label

BUNDLED = ("sl2", "sp4", "u11", "su21")


class ConfigError(ValueError):
    pass


def parse_rational(x) -> Fraction:
    if isinstance(x, bool) or isinstance(x, float):
        raise ConfigError(f"rationals must be integers or 'num/den' strings, got {x!r}")
    try:
        return Fraction(x)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise ConfigError(f"cannot parse rational {x!r}") from exc


def format_rational(x: Fraction) -> str:
    return str(Fraction(x))


def parse_vector(v) -> WeightVector:
    if not isinstance(v, list):
        raise ConfigError(f"expected a list of rationals, got {v!r}")
    return WeightVector(parse_rational(x) for x in v)


@dataclass
class RealFormConfig:
    name: str
    gram: list
    compact_roots: list
    k_positive: list
    lattice_basis: list
    cartan_label: Optional[str] = None
    central_rank: int = 0
    roots: Optional[list] = None
    positive_roots: Optional[list] = None
    notes: str = ""

    @classmethod
    def from_dict(cls, d: dict) -> "RealFormConfig":
        if not isinstance(d, dict):
            raise ConfigError("config must be a JSON object")
        known = {f for f in cls.__dataclass_fields__}
        unknown = set(d) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        for key in ("name", "gram", "compact_roots", "k_positive", "lattice_basis"):
            if key not in d:
                raise ConfigError(f"missing config key {key!r}")
        if (d.get("roots") is None) == (d.get("cartan_label") is None):
            raise ConfigError("give exactly one of 'roots' and 'cartan_label'")
        vecs = lambda xs: [parse_vector(v) for v in xs]  # noqa: E731
        return cls(
            name=str(d["name"]),
            gram=vecs(d["gram"]),
            compact_roots=vecs(d["compact_roots"]),
            k_positive=vecs(d["k_positive"]),
            lattice_basis=vecs(d["lattice_basis"]),
            cartan_label=d.get("cartan_label"),
            central_rank=int(d.get("central_rank", 0)),
            roots=vecs(d["roots"]) if d.get("roots") is not None else None,
            positive_roots=vecs(d["positive_roots"]) if d.get("positive_roots") is not None else None,
            notes=str(d.get("notes", "")),
        )

    def to_dict(self) -> dict:
        fmt = lambda xs: [[format_rational(x) for x in v] for v in xs]  # noqa: E731
        d = {
            "name": self.name,
            "notes": self.notes,
            "gram": fmt(self.gram),
            "compact_roots": fmt(self.compact_roots),
            "k_positive": fmt(self.k_positive),
            "lattice_basis": fmt(self.lattice_basis),
        }
        if self.cartan_label is not None:
            d["cartan_label"] = self.cartan_label
            d["central_rank"] = self.central_rank
        else:
            d["roots"] = fmt(self.roots)
        if self.positive_roots is not None:
            d["positive_roots"] = fmt(self.positive_roots)
        return d

    def build(self) -> RealFormData:
        try:
            form = GramForm(tuple(tuple(r) for r in self.gram))
            if self.cartan_label is not None:
                base = build_from_cartan_label(self.cartan_label, self.central_rank)
                if base.form != form:
                    raise ConfigError("gram matrix does not match the standard form for the Cartan label")
                roots = list(base.roots)
            else:
                roots = list(self.roots)
            return make_real_form(
                roots=roots,
                form=form,
                compact=self.compact_roots,
                k_positive=self.k_positive,
                lattice=self.lattice_basis,
                positive_roots=self.positive_roots,
                name=self.name,
            )
        except ConfigError:
            raise
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc


def load_config(path) -> RealFormConfig:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from exc
    try:
        return RealFormConfig.from_dict(json.loads(text))
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON: {exc}") from exc


def bundled_config(name: str) -> RealFormConfig:
    if name not in BUNDLED:
        raise ConfigError(f"no bundled config named {name!r}; choose from {', '.join(BUNDLED)}")
    text = resources.files("ktypes").joinpath("data", "configs", f"{name}.json").read_text()
    return RealFormConfig.from_dict(json.loads(text))


_CACHE: dict = {}


def bundled_real_form(name: str) -> RealFormData:
    """Parsed and validated bundled real form (memoized)."""
    if name not in _CACHE:
        _CACHE[name] = bundled_config(name).build()
    return _CACHE[name]


def resolve(name_or_path: str) -> RealFormData:
    """A bundled name or a path to a JSON config."""
    if name_or_path in BUNDLED:
        return bundled_real_form(name_or_path)
    return load_config(name_or_path).build()
