"""Frozen reference values: small sum rules and the pinned normalization constants.

``python3 -m loopsum.golden`` compares a fresh computation with the stored
file and exits 1 on any difference; ``--regenerate`` rewrites the file.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .laurent import compare, render
from .sumrule import (
    Method,
    Model,
    oracle_interpolate,
    verify,
    z_open_compute,
    zp_compute,
)
from . import symfunc as sf

GOLDEN_DIR = Path(__file__).with_name("golden")
GOLDEN_FILE = GOLDEN_DIR / "reference.json"


def _const(c) -> str:
    return "none" if c is None else str(c)


def compute_golden() -> dict:
    data: dict = {"values": {}, "constants": {}}
    vals = data["values"]
    for L in (1, 2, 3):
        vals[f"periodic/det-e/L={L}"] = render(zp_compute(sf.zvars(L)).value)
    for L in (1, 2, 3):
        vals[f"open/det-lambda/L={L}"] = render(z_open_compute(sf.zvars(L)).value)
    for L in (1, 2, 3):
        vals[f"pp-fixed/L={L}"] = render(sf.Pp_fixed(sf.zvars(L)))

    consts = data["constants"]
    for L in range(1, 5):
        consts[f"det-mu/det-e/L={L}"] = _const(zp_compute(sf.zvars(L), Method.DET_MU).normalization)
    for L in range(1, 5):
        for m in (Method.V_OVER_PP, Method.DET_NU):
            consts[f"{m.value}/det-lambda/L={L}"] = _const(
                z_open_compute(sf.zvars(L), m).normalization)
    for L in range(1, 5):
        consts[f"ztilde/v*w/L={L}"] = _const(verify("ztilde-vw", L).constant)
    for L in range(1, 5):
        # compact periodic divisor against the generating one at t**2 = -1
        vars = sf.zvars(L)
        gen = sf.Pp_gen(vars, "t")
        at_i = sum((gen.coeff("t", 2 * k) * (-1) ** k for k in range(1, L + 1)),
                   sf.elem_E(vars, 0) * 0)
        consts[f"pp-fixed/generating/L={L}"] = _const(
            compare(at_i, sf.Pp_fixed(vars) * sf.elem_E(vars, L)).constant)
        consts[f"pp-fixed/oracle/L={L}"] = _const(
            compare(sf.Pp_fixed_oracle(vars), sf.Pp_fixed(vars)).constant)
    for kind, top in ((Model.PERIODIC, 4), (Model.OPEN, 4)):
        for L in range(1, top + 1):
            consts[f"oracle/{kind.value}/L={L}"] = _const(oracle_interpolate(kind, L).normalization)
    return data


def load_golden() -> dict:
    with open(GOLDEN_FILE, encoding="utf-8") as fh:
        return json.load(fh)


def diff_golden(current: dict, stored: dict) -> list[str]:
    out = []
    for section in ("values", "constants"):
        a, b = current.get(section, {}), stored.get(section, {})
        for k in sorted(set(a) | set(b)):
            if a.get(k) != b.get(k):
                out.append(f"{section}/{k}: stored {b.get(k)!r}, computed {a.get(k)!r}")
    return out


def main(argv=None) -> int:
    p = argparse.ArgumentParser(prog="python3 -m loopsum.golden", description=__doc__.splitlines()[0])
    p.add_argument("--regenerate", action="store_true", help="overwrite the stored golden file")
    args = p.parse_args(argv)
    current = compute_golden()
    if args.regenerate:
        GOLDEN_DIR.mkdir(exist_ok=True)
        with open(GOLDEN_FILE, "w", encoding="utf-8") as fh:
            json.dump(current, fh, indent=2, sort_keys=True)
            fh.write("\n")
        print(f"wrote {GOLDEN_FILE}")
        return 0
    problems = diff_golden(current, load_golden())
    for line in problems:
        print(line)
    return 1 if problems else 0


if __name__ == "__main__":
    sys.exit(main())
