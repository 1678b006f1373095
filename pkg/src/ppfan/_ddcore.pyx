# cython: language_level=3, boundscheck=False, wraparound=False
"""Double description constraint loop, compiled twin of ``ppfan._ddpure``.

Vector entries stay Python ints (arbitrary precision); Cython removes the
interpreter overhead of the pairing/adjacency loops, which dominate runtime.
The algorithm and its outputs are bit-identical to the pure version.
"""

from math import gcd


cdef _dot(tuple a, tuple b):
    cdef Py_ssize_t i, n = len(a)
    s = 0
    for i in range(n):
        s += a[i] * b[i]
    return s


cdef tuple _prim(tuple v):
    cdef Py_ssize_t i, n = len(v)
    g = 0
    for i in range(n):
        g = gcd(g, v[i])
    if g == 0 or g == 1:
        return v
    return tuple([v[i] // g for i in range(n)])


cdef inline object _bit(Py_ssize_t n):
    # Python-int shift: the tight-set masks outgrow any C integer type
    return (<object> 1) << n


cdef tuple _comb(c1, tuple v1, c2, tuple v2):
    # c1*v1 - c2*v2, primitive
    cdef Py_ssize_t i, n = len(v1)
    cdef list out = [0] * n
    for i in range(n):
        out[i] = c1 * v1[i] - c2 * v2[i]
    return _prim(tuple(out))


def process(Py_ssize_t dim, constraints):
    """See ppfan._ddpure.process; identical contract and output."""
    cdef list lin = [tuple(1 if j == i else 0 for j in range(dim)) for i in range(dim)]
    cdef list vecs = []
    cdef list zsets = []
    cdef Py_ssize_t nbit = 0
    cdef Py_ssize_t i, j, k, p, nrays, npos, nneg
    cdef bint is_eq, adjacent, found

    for a_obj, eq_obj in constraints:
        a = tuple(a_obj)
        is_eq = bool(eq_obj)
        found = False
        for i in range(len(a)):
            if a[i] != 0:
                found = True
                break
        if not found:
            continue

        lvals = [_dot(a, l) for l in lin]
        p = -1
        for i in range(len(lvals)):
            if lvals[i] != 0:
                p = i
                break
        if p >= 0:
            l0 = lin.pop(p)
            v0 = lvals.pop(p)
            if v0 < 0:
                l0 = tuple([-x for x in l0])
                v0 = -v0
            new_lin = []
            for i in range(len(lin)):
                lv = lvals[i]
                if lv == 0:
                    new_lin.append(lin[i])
                else:
                    new_lin.append(_comb(v0, lin[i], lv, l0))
            lin = new_lin
            new_vecs = []
            for i in range(len(vecs)):
                rv = _dot(a, vecs[i])
                if rv == 0:
                    new_vecs.append(vecs[i])
                else:
                    new_vecs.append(_comb(v0, vecs[i], rv, l0))
            vecs = new_vecs
            if is_eq:
                continue
            bit = _bit(nbit)
            zsets = [z | bit for z in zsets]
            vecs.append(_prim(l0))
            zsets.append(_bit(nbit) - 1)
            nbit += 1
            continue

        vals = [_dot(a, r) for r in vecs]
        pos = []
        zero = []
        negi = []
        for i in range(len(vals)):
            v = vals[i]
            if v > 0:
                pos.append(i)
            elif v < 0:
                negi.append(i)
            else:
                zero.append(i)
        if (not is_eq) and len(negi) == 0:
            bit = _bit(nbit)
            new_zsets = []
            for i in range(len(zsets)):
                if vals[i] == 0:
                    new_zsets.append(zsets[i] | bit)
                else:
                    new_zsets.append(zsets[i])
            zsets = new_zsets
            nbit += 1
            continue
        if is_eq and len(pos) == 0 and len(negi) == 0:
            continue

        nrays = len(vecs)
        npos = len(pos)
        nneg = len(negi)
        combo_v = []
        combo_z = []
        for i in range(npos):
            ii = pos[i]
            zi = zsets[ii]
            vi = vals[ii]
            ri = vecs[ii]
            for j in range(nneg):
                jj = negi[j]
                m = zi & zsets[jj]
                adjacent = True
                for k in range(nrays):
                    if k != ii and k != jj and (zsets[k] & m) == m:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                combo_v.append(_comb(vi, vecs[jj], vals[jj], ri))
                combo_z.append(m)

        if is_eq:
            new_vecs = [vecs[i] for i in zero] + combo_v
            new_zsets = [zsets[i] for i in zero] + combo_z
        else:
            bit = _bit(nbit)
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
