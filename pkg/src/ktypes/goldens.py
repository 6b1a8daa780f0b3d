"""Golden tables for the three worked rank-one and rank-two examples (sl2, sp4, u11).

The tables are rendered deterministically as text and compared byte for byte
against the frozen copies in ``data/goldens``.
"""
from __future__ import annotations

from importlib import resources
from typing import Optional

from . import kstruct
from .config import bundled_real_form
from .exact import WeightVector
from .rootsys import chambers_containing

GOLDEN_NAMES = ("sl2", "sp4", "u11")
GRID = {"sl2": 8, "sp4": 8, "u11": 8}


def fmt_vec(v) -> str:
    return "(" + ",".join(str(x) for x in v) + ")"


def _flag(b: bool) -> str:
    return "y" if b else "n"


def chamber_label(rf, v) -> str:
    """The ``2 rho`` of every positive system whose closed chamber contains ``v``."""
    labels = sorted({tuple(w.apply(rf.g.two_rho)) for w in chambers_containing(rf.g, v)})
    return "|".join(fmt_vec(x) for x in labels)


def _table(header: list[str], rows: list[list[str]]) -> list[str]:
    widths = [max(len(r[i]) for r in [header] + rows) for i in range(len(header))]
    out = ["  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip()]
    out += ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows]
    return out


def render_sl2() -> str:
    rf = bundled_real_form("sl2")
    g = GRID["sl2"]
    rows = []
    for n in range(-g, g + 1):
        mu = WeightVector((n,))
        rows.append([
            str(n),
            fmt_vec(kstruct.lambda_a(rf, mu)),
            fmt_vec(kstruct.lambda_u(rf, mu)),
            _flag(kstruct.is_unitarily_small(rf, mu)),
            _flag(kstruct.is_small(rf, mu)),
        ])
    lines = ["# sl2: K-types mu_n, n in [-%d,%d]" % (g, g)]
    lines += _table(["n", "lambda_a", "lambda_u", "u-small", "small"], rows)
    us = kstruct.enumerate_unitarily_small(rf, WeightVector((0,)))
    sm = kstruct.enumerate_small(rf, WeightVector((0,)))
    lines.append("unitarily small (mu_z=0): %d: %s" % (len(us), " ".join(fmt_vec(k.mu) for k in us)))
    lines.append("small (mu_z=0): %d: %s" % (len(sm), " ".join(fmt_vec(k.mu) for k in sm)))
    return "\n".join(lines) + "\n"


def render_sp4() -> str:
    rf = bundled_real_form("sp4")
    g = GRID["sp4"]
    rows = []
    for p in range(-g, g + 1):
        for q in range(-g, p + 1):
            mu = WeightVector((p, q))
            rows.append([
                str(p),
                str(q),
                chamber_label(rf, mu + rf.two_rho_c),
                fmt_vec(kstruct.lambda_a(rf, mu)),
                fmt_vec(kstruct.lambda_u(rf, mu)),
                _flag(kstruct.is_unitarily_small(rf, mu)),
                _flag(kstruct.is_small(rf, mu)),
            ])
    lines = ["# sp4: K-types mu_(p,q), %d >= p >= q >= -%d; chambers named by their 2rho" % (g, g)]
    lines += _table(["p", "q", "chambers(mu+2rho_c)", "lambda_a", "lambda_u", "u-small", "small"], rows)
    z = WeightVector((0, 0))
    us = kstruct.enumerate_unitarily_small(rf, z)
    sm = kstruct.enumerate_small(rf, z)
    lines.append("unitarily small (mu_z=0): %d: %s" % (len(us), " ".join(fmt_vec(k.mu) for k in us)))
    lines.append("small (mu_z=0): %d: %s" % (len(sm), " ".join(fmt_vec(k.mu) for k in sm)))
    return "\n".join(lines) + "\n"


def render_u11() -> str:
    rf = bundled_real_form("u11")
    g = GRID["u11"]
    rows = []
    for p in range(-g, g + 1):
        for q in range(-g, g + 1):
            mu = WeightVector((p, q))
            rows.append([
                str(p),
                str(q),
                fmt_vec(kstruct.central_part(rf, mu)),
                fmt_vec(kstruct.lambda_u(rf, mu)),
                _flag(kstruct.is_unitarily_small(rf, mu)),
            ])
    lines = ["# u11: K-types mu_(p,q), p,q in [-%d,%d]" % (g, g)]
    lines += _table(["p", "q", "mu_z", "lambda_u", "u-small"], rows)
    return "\n".join(lines) + "\n"


RENDERERS = {"sl2": render_sl2, "sp4": render_sp4, "u11": render_u11}


def frozen_golden(name: str) -> str:
    return resources.files("ktypes").joinpath("data", "goldens", f"{name}.txt").read_text()


def first_mismatch(expected: str, actual: str) -> Optional[str]:
    exp, act = expected.splitlines(), actual.splitlines()
    for i, (a, b) in enumerate(zip(exp, act)):
        if a != b:
            return f"line {i + 1}:\n  expected: {a}\n  actual:   {b}"
    if len(exp) != len(act):
        return f"line count differs: expected {len(exp)}, got {len(act)}"
    if expected != actual:
        return "trailing whitespace or newline differs"
    return None


def compare_all() -> dict:
    """``{name: None or first mismatch}`` for every golden table."""
    out = {}
    for name in GOLDEN_NAMES:
        try:
            frozen = frozen_golden(name)
        except FileNotFoundError:
            out[name] = "frozen golden table is missing"
            continue
        out[name] = first_mismatch(frozen, RENDERERS[name]())
    return out
