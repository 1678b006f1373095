"""Double description constraint loop, pure Python reference implementation.

`process` incrementally intersects the full space with halfspaces/hyperplanes,
maintaining a minimal generating system (lineality basis + extreme rays) and
per-ray bitsets of tight inequalities for the combinatorial adjacency test.
All arithmetic is arbitrary-precision integer; output is raw (canonicalised
by the caller).
"""

from math import gcd


def _dot(a, b):
    s = 0
    for x, y in zip(a, b):
        s += x * y
    return s


def _prim(v):
    g = 0
    for x in v:
        g = gcd(g, x)
    if g in (0, 1):
        return tuple(v)
    return tuple(x // g for x in v)


def process(dim, constraints):
    """Run the incremental double description loop.

    constraints: sequence of (vector, is_equality) with integer vectors a,
    each meaning a.x >= 0 (inequality) or a.x == 0 (equality).
    Returns (ray_vectors, lineality_rows), both lists of int tuples, not yet
    canonicalised.
    """
    lin = [tuple(1 if j == i else 0 for j in range(dim)) for i in range(dim)]
    vecs = []   # extreme rays
    zsets = []  # bitmask per ray: tight inequalities among those processed
    nbit = 0

    for a, is_eq in constraints:
        if all(x == 0 for x in a):
            continue
        lvals = [_dot(a, l) for l in lin]
        p = next((i for i, v in enumerate(lvals) if v != 0), None)
        if p is not None:
            l0 = lin.pop(p)
            v0 = lvals.pop(p)
            if v0 < 0:
                l0 = tuple(-x for x in l0)
                v0 = -v0
            lin = [
                l if lv == 0 else _prim(tuple(v0 * x - lv * y for x, y in zip(l, l0)))
                for l, lv in zip(lin, lvals)
            ]
            new_vecs = []
            for r in vecs:
                rv = _dot(a, r)
                if rv == 0:
                    new_vecs.append(r)
                else:
                    new_vecs.append(_prim(tuple(v0 * x - rv * y for x, y in zip(r, l0))))
            vecs = new_vecs
            if is_eq:
                continue
            # all surviving rays are tight on this inequality; l0 is not
            bit = 1 << nbit
            zsets = [z | bit for z in zsets]
            vecs.append(_prim(l0))
            zsets.append((1 << nbit) - 1)
            nbit += 1
            continue

        vals = [_dot(a, r) for r in vecs]
        pos = [i for i, v in enumerate(vals) if v > 0]
        zero = [i for i, v in enumerate(vals) if v == 0]
        negi = [i for i, v in enumerate(vals) if v < 0]
        if not is_eq and not negi:
            bit = 1 << nbit
            zsets = [z | bit if v == 0 else z for z, v in zip(zsets, vals)]
            nbit += 1
            continue
        if is_eq and not pos and not negi:
            continue

        nrays = len(vecs)
        combo_v = []
        combo_z = []
        for i in pos:
            zi = zsets[i]
            vi = vals[i]
            ri = vecs[i]
            for j in negi:
                m = zi & zsets[j]
                adjacent = True
                for k in range(nrays):
                    if k != i and k != j and zsets[k] & m == m:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                vj = vals[j]
                rj = vecs[j]
                w = _prim(tuple(vi * x - vj * y for x, y in zip(rj, ri)))
                combo_v.append(w)
                combo_z.append(m)

        if is_eq:
            new_vecs = [vecs[i] for i in zero] + combo_v
            new_zsets = [zsets[i] for i in zero] + combo_z
        else:
            bit = 1 << nbit
            new_vecs = [vecs[i] for i in pos]
            new_zsets = [zsets[i] for i in pos]
            new_vecs += [vecs[i] for i in zero]
            new_zsets += [zsets[i] | bit for i in zero]
            new_vecs += combo_v
            new_zsets += [z | bit for z in combo_z]
            nbit += 1
        vecs = new_vecs
        zsets = new_zsets

    return vecs, lin
