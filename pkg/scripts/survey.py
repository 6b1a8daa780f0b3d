"""Print a one-line summary per real form: sizes of the unitarily small and small sets at mu_z = 0,
the spin module, and the weight range used for the seven-way check.

    python scripts/survey.py [config ...]
"""
import argparse

from ktypes import kstruct, spin
from ktypes.config import BUNDLED, resolve
from ktypes.exact import WeightVector


def survey(name_or_path):
    rf = resolve(name_or_path)
    z = WeightVector.zero(rf.rank)
    us = kstruct.enumerate_unitarily_small(rf, z)
    sm = kstruct.enumerate_small(rf, z)
    return {
        "form": rf.name or name_or_path,
        "rank": rf.rank,
        "roots": len(rf.g.roots),
        "noncompact": len(rf.noncompact),
        "systems": len(rf.positive_systems),
        "u-small": len(us),
        "small": len(sm),
        "spin dim": spin.spin_weights(rf).size,
        "range": len(kstruct.seven_way_range(rf)),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("configs", nargs="*", default=list(BUNDLED))
    args = ap.parse_args()
    rows = [survey(c) for c in args.configs]
    cols = list(rows[0])
    widths = [max(len(c), *(len(str(r[c])) for r in rows)) for c in cols]
    print("  ".join(c.ljust(w) for c, w in zip(cols, widths)).rstrip())
    for r in rows:
        print("  ".join(str(r[c]).ljust(w) for c, w in zip(cols, widths)).rstrip())


if __name__ == "__main__":
    main()
