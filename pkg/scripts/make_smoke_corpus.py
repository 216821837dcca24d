"""Regenerate src/sk1ec/data/smoke_corpus.csv.

Deterministic: a fixed seed draws small models from families with known
torsion (2, full 2, 3, 5, 7), quotients of the odd-torsion curves by
their rational torsion subgroup, and unrestricted random ones, keeps the
reduced minimal model, and drops duplicates.
"""
import random
import sys
from pathlib import Path

from sk1ec.curves import WeierstrassModel, minimal_model, rational_p_torsion_points
from sk1ec.errors import SingularCurveError
from sk1ec.galois import p_isogeny_kernels, velu_quotient

OUT = Path(__file__).resolve().parents[1] / "src" / "sk1ec" / "data" / "smoke_corpus.csv"


def torsion_quotient(rng):
    p = rng.choice([3, 3, 5, 7])
    if p == 3:
        a = [rng.randint(-5, 5), 0, rng.randint(1, 12), 0, 0]
    elif p == 5:
        t = rng.choice([x for x in range(-4, 5) if x])
        a = [1 - t, -t, -t, 0, 0]
    else:
        t = rng.choice([2, 3, -1, -2])
        b, c = t**3 - t**2, t**2 - t
        a = [1 - c, -b, -b, 0, 0]
    try:
        W = WeierstrassModel.from_ainvs(a)
    except SingularCurveError:
        return None
    xs = {P.x for P in rational_p_torsion_points(W, p)}
    for k in p_isogeny_kernels(W, p):
        if any(k.kernel_polynomial(x) == 0 for x in xs):
            return [int(c) for c in minimal_model(velu_quotient(W, k))[0].ainvs]
    return None


def families(rng):
    while True:
        kind = rng.choice(["random"] * 4 + ["two", "full2", "three", "five", "seven", "quotient", "quotient"])
        if kind == "random":
            yield kind, [rng.randint(0, 1), rng.randint(-1, 1), rng.randint(0, 1), rng.randint(-30, 30), rng.randint(-30, 30)]
        elif kind == "two":
            yield kind, [0, rng.randint(-6, 6), 0, rng.randint(-12, 12), 0]
        elif kind == "full2":
            r, s = rng.sample(range(-6, 7), 2)
            yield kind, [0, -(r + s), 0, r * s, 0]
        elif kind == "three":
            yield kind, [rng.randint(-5, 5), 0, rng.randint(1, 12), 0, 0]
        elif kind == "five":
            t = rng.choice([x for x in range(-4, 5) if x])
            yield kind, [1 - t, -t, -t, 0, 0]
        elif kind == "quotient":
            q = torsion_quotient(rng)
            if q is not None:
                yield kind, q
        else:
            t = rng.choice([2, 3, -1, -2])
            b, c = t**3 - t**2, t**2 - t
            yield kind, [1 - c, -b, -b, 0, 0]


def main(n=100, seed=20240611):
    rng = random.Random(seed)
    seen, rows = set(), []
    for kind, a in families(rng):
        try:
            W = minimal_model(WeierstrassModel.from_ainvs(a))[0]
        except SingularCurveError:
            continue
        key = tuple(int(x) for x in W.ainvs)
        if key in seen or abs(W.disc) > 10**12:
            continue
        seen.add(key)
        rows.append(f"smoke-{len(rows):03d},{','.join(map(str, key))}  # {kind}")
        if len(rows) == n:
            break
    OUT.write_text("# label,a1,a2,a3,a4,a6  generated by scripts/make_smoke_corpus.py\n" + "\n".join(rows) + "\n")
    print(f"wrote {len(rows)} curves to {OUT}", file=sys.stderr)


if __name__ == "__main__":
    main()
