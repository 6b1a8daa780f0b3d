#!/usr/bin/env python3
"""Regenerate the golden tables in src/ktypes/data/goldens after validating them.

Every table row is checked against the closed-form or planar-cone oracles in
tests/oracles.py before anything is written. Use --check to validate and diff
without writing.
"""
import argparse
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "tests"))

import oracles  # noqa: E402
from ktypes import kstruct  # noqa: E402
from ktypes.config import bundled_real_form  # noqa: E402
from ktypes.goldens import GOLDEN_NAMES, GRID, RENDERERS, first_mismatch  # noqa: E402

OUT = ROOT / "src" / "ktypes" / "data" / "goldens"


def validate() -> list:
    problems = []
    sl2 = bundled_real_form("sl2")
    for n in range(-GRID["sl2"], GRID["sl2"] + 1):
        if kstruct.lambda_u(sl2, [n]) != (oracles.sl2_lambda_u(n),):
            problems.append(f"sl2 lambda_u at {n}")
        if kstruct.lambda_a(sl2, [n]) != (oracles.sl2_lambda_a(n),):
            problems.append(f"sl2 lambda_a at {n}")
    sp4 = bundled_real_form("sp4")
    g = GRID["sp4"]
    for p in range(-g, g + 1):
        for q in range(-g, p + 1):
            lu = tuple(kstruct.lambda_u(sp4, [p, q]))
            if lu != oracles.sp4_lambda_via_cone(p, q, 2):
                problems.append(f"sp4 lambda_u at {(p, q)} (cone oracle)")
            if tuple(kstruct.lambda_a(sp4, [p, q])) != oracles.sp4_lambda_via_cone(p, q, 1):
                problems.append(f"sp4 lambda_a at {(p, q)} (cone oracle)")
            if oracles.sp4_region_c(p, q) and lu != oracles.sp4_lambda_u_region_c(p, q):
                problems.append(f"sp4 lambda_u at {(p, q)} (closed form)")
            if kstruct.is_unitarily_small(sp4, [p, q]) != oracles.sp4_unitarily_small(p, q):
                problems.append(f"sp4 unitarily small at {(p, q)}")
            if kstruct.is_small(sp4, [p, q]) != oracles.sp4_small(p, q):
                problems.append(f"sp4 small at {(p, q)}")
    u11 = bundled_real_form("u11")
    g = GRID["u11"]
    for p in range(-g, g + 1):
        for q in range(-g, g + 1):
            if tuple(kstruct.lambda_u(u11, [p, q])) != oracles.u11_lambda_u(p, q):
                problems.append(f"u11 lambda_u at {(p, q)}")
    return problems


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--check", action="store_true", help="validate and diff only")
    args = ap.parse_args(argv)
    problems = validate()
    if problems:
        for p in problems[:20]:
            print("oracle mismatch:", p)
        return 1
    status = 0
    for name in GOLDEN_NAMES:
        text = RENDERERS[name]()
        path = OUT / f"{name}.txt"
        if args.check:
            old = path.read_text() if path.exists() else ""
            diff = first_mismatch(old, text)
            print(f"{name}: {'ok' if diff is None else diff}")
            status |= diff is not None
        else:
            path.write_text(text)
            print(f"wrote {path.relative_to(ROOT)} ({len(text.splitlines())} lines)")
    return int(status)


if __name__ == "__main__":
    sys.exit(main())
