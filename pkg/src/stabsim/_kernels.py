"""Numba kernels over the bit-sliced tableau.

Layout: ``x[q, k]`` / ``z[q, k]`` are uint64 words holding the x/z bit of
qubit ``q`` for tableau rows ``64*k .. 64*k+63`` (row i lives in bit i % 64
of word i // 64); ``r[k]`` holds the sign bits the same way. A gate touches
one or two qubit columns across every row, so one gate costs O(n/64) word
operations and every gate update is independent per word. Kernels that take
a ``[k0, k1)`` word range can therefore be run on disjoint ranges in
parallel without synchronization.

All kernels release the GIL.
"""

import numpy as np
from numba import njit

# Gate codes, identical to circuit.GateKind.
H, S, SDG, X, Y, Z, CX, CZ, SWAP, M = range(10)

ONE = np.uint64(1)
ALL = np.uint64(0xFFFFFFFFFFFFFFFF)

_jit = njit(nogil=True, cache=True)


@_jit
def _h(x, z, r, q, k0, k1):
    for k in range(k0, k1):
        xv = x[q, k]
        zv = z[q, k]
        r[k] ^= xv & zv
        x[q, k] = zv
        z[q, k] = xv


@_jit
def _s(x, z, r, q, k0, k1):
    for k in range(k0, k1):
        xv = x[q, k]
        zv = z[q, k]
        r[k] ^= xv & zv
        z[q, k] = zv ^ xv


@_jit
def _cx(x, z, r, c, t, k0, k1):
    for k in range(k0, k1):
        xc = x[c, k]
        zc = z[c, k]
        xt = x[t, k]
        zt = z[t, k]
        r[k] ^= xc & zt & ~(xt ^ zc)
        x[t, k] = xt ^ xc
        z[c, k] = zc ^ zt


@_jit
def apply_op(x, z, r, kind, a, b, k0, k1):
    """Apply one gate; derived gates run as fixed H/S/CX sequences."""
    if kind == H:
        _h(x, z, r, a, k0, k1)
    elif kind == S:
        _s(x, z, r, a, k0, k1)
    elif kind == CX:
        _cx(x, z, r, a, b, k0, k1)
    elif kind == SDG:
        _s(x, z, r, a, k0, k1)
        _s(x, z, r, a, k0, k1)
        _s(x, z, r, a, k0, k1)
    elif kind == Z:
        _s(x, z, r, a, k0, k1)
        _s(x, z, r, a, k0, k1)
    elif kind == X:
        _h(x, z, r, a, k0, k1)
        _s(x, z, r, a, k0, k1)
        _s(x, z, r, a, k0, k1)
        _h(x, z, r, a, k0, k1)
    elif kind == Y:
        # Z then X: conjugation by XZ, which equals Y up to a global phase.
        _s(x, z, r, a, k0, k1)
        _s(x, z, r, a, k0, k1)
        _h(x, z, r, a, k0, k1)
        _s(x, z, r, a, k0, k1)
        _s(x, z, r, a, k0, k1)
        _h(x, z, r, a, k0, k1)
    elif kind == CZ:
        _h(x, z, r, b, k0, k1)
        _cx(x, z, r, a, b, k0, k1)
        _h(x, z, r, b, k0, k1)
    elif kind == SWAP:
        _cx(x, z, r, a, b, k0, k1)
        _cx(x, z, r, b, a, k0, k1)
        _cx(x, z, r, a, b, k0, k1)


@_jit
def run_ops(x, z, r, ops, k0, k1):
    """Apply every gate of ``ops`` (no measurements) to words ``[k0, k1)``."""
    for g in range(ops.shape[0]):
        apply_op(x, z, r, ops[g, 0], ops[g, 1], ops[g, 2], k0, k1)


@_jit
def get_bit(a, q, i):
    return (a[q, i >> 6] >> np.uint64(i & 63)) & ONE


@_jit
def set_bit(a, q, i, v):
    m = ONE << np.uint64(i & 63)
    if v:
        a[q, i >> 6] |= m
    else:
        a[q, i >> 6] &= ~m


@_jit
def get_sign(r, i):
    return (r[i >> 6] >> np.uint64(i & 63)) & ONE


@_jit
def set_sign(r, i, v):
    m = ONE << np.uint64(i & 63)
    if v:
        r[i >> 6] |= m
    else:
        r[i >> 6] &= ~m


@_jit
def phase_g(x1, z1, x2, z2):
    """Exponent of i picked up per qubit when multiplying Paulis (x1,z1)(x2,z2)."""
    if x1 == 0 and z1 == 0:
        return 0
    if x1 == 1 and z1 == 1:
        return z2 - x2
    if x1 == 1:
        return z2 * (2 * x2 - 1)
    return x2 * (1 - 2 * z2)


@_jit
def rowsum(x, z, r, n, h, i):
    """Row h <- row i * row h. Returns 0, or -1 if the phase is imaginary."""
    m = 2 * np.int64(get_sign(r, h)) + 2 * np.int64(get_sign(r, i))
    for j in range(n):
        xi = np.int64(get_bit(x, j, i))
        zi = np.int64(get_bit(z, j, i))
        xh = np.int64(get_bit(x, j, h))
        zh = np.int64(get_bit(z, j, h))
        m += phase_g(xi, zi, xh, zh)
        set_bit(x, j, h, xh ^ xi)
        set_bit(z, j, h, zh ^ zi)
    m %= 4
    if m & 1:
        return -1
    set_sign(r, h, m == 2)
    return 0


@_jit
def find_pivot(x, n, q):
    """Lowest stabilizer row p (n <= p < 2n) with an X/Y on qubit q, else -1."""
    for p in range(n, 2 * n):
        if get_bit(x, q, p):
            return p
    return -1


@_jit
def extract_row(x, z, r, n, i):
    xs = np.zeros(n, dtype=np.uint8)
    zs = np.zeros(n, dtype=np.uint8)
    for j in range(n):
        xs[j] = get_bit(x, j, i)
        zs[j] = get_bit(z, j, i)
    return xs, zs, np.uint8(get_sign(r, i))


@_jit
def collapse_rows(x, z, r, n, q, p, xp, zp, rp, k0, k1):
    """rowsum(i, p) for every row i < 2n with x_iq = 1 on words [k0, k1).

    Rows p and p - n are skipped: p is the pivot and p - n anticommutes with it
    and is overwritten by ``finish_collapse`` anyway.

    Row p is passed in unpacked (``xp``, ``zp``, ``rp``) so concurrent calls
    never read words another call is writing. The mod-4 phase of each row is
    accumulated bit-sliced in two planes (``lo``, ``hi``). Returns the number
    of rows that ended with an imaginary phase (0 when the caller is correct).
    """
    nrows = 2 * n
    bad = 0
    for k in range(k0, k1):
        base = k * 64
        if base >= nrows:
            break
        if base + 64 <= nrows:
            valid = ALL
        else:
            valid = (ONE << np.uint64(nrows - base)) - ONE
        mask = x[q, k] & valid
        if p >> 6 == k:
            mask &= ~(ONE << np.uint64(p & 63))
        if (p - n) >> 6 == k:
            mask &= ~(ONE << np.uint64((p - n) & 63))
        if mask == 0:
            continue
        lo = np.uint64(0)
        hi = np.uint64(0)
        for j in range(n):
            a = xp[j]
            b = zp[j]
            if a == 0 and b == 0:
                continue
            xi = x[j, k]
            zi = z[j, k]
            if a and b:
                plus = zi & ~xi
                minus = xi & ~zi
            elif a:
                plus = zi & xi
                minus = zi & ~xi
            else:
                plus = xi & ~zi
                minus = xi & zi
            carry = (lo & plus) | (~lo & minus)
            lo ^= plus | minus
            hi ^= carry
            if a:
                x[j, k] = xi ^ mask
            if b:
                z[j, k] = zi ^ mask
        odd = lo & mask
        while odd:
            bad += 1
            odd &= odd - ONE
        if rp:
            hi = ~hi
        r[k] ^= hi & mask
    return bad


@_jit
def finish_collapse(x, z, r, n, q, p, outcome):
    """Move stabilizer p to destabilizer p-n and replace it with (-1)^outcome Z_q."""
    d = p - n
    for j in range(n):
        set_bit(x, j, d, get_bit(x, j, p))
        set_bit(z, j, d, get_bit(z, j, p))
        set_bit(x, j, p, 0)
        set_bit(z, j, p, 0)
    set_sign(r, d, get_sign(r, p))
    set_bit(z, q, p, 1)
    set_sign(r, p, outcome)


@_jit
def deterministic_outcome(x, z, r, n, q):
    """Accumulate the product of stabilizers fixing Z_q into the scratch row.

    Returns the outcome bit, or -1 on an imaginary phase.
    """
    s = 2 * n
    for j in range(n):
        set_bit(x, j, s, 0)
        set_bit(z, j, s, 0)
    set_sign(r, s, 0)
    for d in range(n):
        if get_bit(x, q, d):
            if rowsum(x, z, r, n, s, d + n) < 0:
                return -1
    return np.int64(get_sign(r, s))


# --- synthesis -------------------------------------------------------------


@_jit
def _emit(out, cnt, kind, a, b):
    out[cnt, 0] = kind
    out[cnt, 1] = a
    out[cnt, 2] = b
    return cnt + 1


@_jit
def _do(x, z, r, out, cnt, kind, a, b, words):
    apply_op(x, z, r, kind, a, b, 0, words)
    if kind == SWAP:
        cnt = _emit(out, cnt, CX, a, b)
        cnt = _emit(out, cnt, CX, b, a)
        return _emit(out, cnt, CX, a, b)
    return _emit(out, cnt, kind, a, b)


@_jit
def reduce_to_pauli(x, z, r, n, out):
    """Append H/S/CX gates to the tableau until every row is a signed X_j or Z_j.

    Works qubit by qubit: first bring destabilizer i to +-X_i, then stabilizer
    i to +-Z_i. Emitted gates are written to ``out`` (rows of kind, a, b);
    returns how many. ``out`` needs at least ``n * (4n + 12)`` rows.
    """
    words = x.shape[1]
    cnt = 0
    for i in range(n):
        d = i
        s = n + i
        # X or Y on qubit i in destabilizer i.
        if not get_bit(x, i, d):
            found = -1
            for j in range(i, n):
                if get_bit(x, j, d):
                    found = j
                    break
            if found >= 0:
                cnt = _do(x, z, r, out, cnt, SWAP, i, found, words)
            else:
                for j in range(i, n):
                    if get_bit(z, j, d):
                        found = j
                        break
                cnt = _do(x, z, r, out, cnt, H, found, -1, words)
                if found != i:
                    cnt = _do(x, z, r, out, cnt, SWAP, i, found, words)
        # Clear the rest of destabilizer i's x part.
        for j in range(i + 1, n):
            if get_bit(x, j, d):
                cnt = _do(x, z, r, out, cnt, CX, i, j, words)
        # Clear its z part.
        anyz = False
        for j in range(i, n):
            if get_bit(z, j, d):
                anyz = True
                break
        if anyz:
            if not get_bit(z, i, d):
                cnt = _do(x, z, r, out, cnt, S, i, -1, words)
            for j in range(i + 1, n):
                if get_bit(z, j, d):
                    cnt = _do(x, z, r, out, cnt, CX, j, i, words)
            cnt = _do(x, z, r, out, cnt, S, i, -1, words)
        # Stabilizer i: clear z beyond i, then the x part.
        for j in range(i + 1, n):
            if get_bit(z, j, s):
                cnt = _do(x, z, r, out, cnt, CX, j, i, words)
        anyx = False
        for j in range(i, n):
            if get_bit(x, j, s):
                anyx = True
                break
        if anyx:
            cnt = _do(x, z, r, out, cnt, H, i, -1, words)
            for j in range(i + 1, n):
                if get_bit(x, j, s):
                    cnt = _do(x, z, r, out, cnt, CX, i, j, words)
            if get_bit(z, i, s):
                cnt = _do(x, z, r, out, cnt, S, i, -1, words)
            cnt = _do(x, z, r, out, cnt, H, i, -1, words)
    return cnt


# --- symplectic sampling -----------------------------------------------------


@_jit
def _inner(v, w, lo, hi):
    """Symplectic product of interleaved vectors (x_j at 2j, z_j at 2j+1)."""
    t = 0
    for c in range(lo, hi, 2):
        t += v[c] * w[c + 1] + w[c] * v[c + 1]
    return t & 1


@_jit
def _transvect(h, v, lo, hi):
    if _inner(h, v, lo, hi):
        for c in range(lo, hi):
            v[c] ^= h[c]


@_jit
def _find_transvection(e, f, lo, hi):
    """Vectors h1, h2 with f = Z_h1 Z_h2 e (Z_h: v -> v + <v,h> h)."""
    size = e.shape[0]
    h1 = np.zeros(size, dtype=np.uint8)
    h2 = np.zeros(size, dtype=np.uint8)
    same = True
    for c in range(lo, hi):
        if e[c] != f[c]:
            same = False
            break
    if same:
        return h1, h2
    if _inner(e, f, lo, hi):
        for c in range(lo, hi):
            h1[c] = e[c] ^ f[c]
        return h1, h2
    w = np.zeros(size, dtype=np.uint8)
    for c in range(lo, hi, 2):
        if (e[c] | e[c + 1]) and (f[c] | f[c + 1]):
            w[c] = e[c] ^ f[c]
            w[c + 1] = e[c + 1] ^ f[c + 1]
            if w[c] == 0 and w[c + 1] == 0:
                w[c + 1] = 1
                if e[c] != e[c + 1]:
                    w[c] = 1
            for cc in range(lo, hi):
                h1[cc] = e[cc] ^ w[cc]
                h2[cc] = f[cc] ^ w[cc]
            return h1, h2
    for c in range(lo, hi, 2):
        if (e[c] | e[c + 1]) and not (f[c] | f[c + 1]):
            if e[c] == e[c + 1]:
                w[c + 1] = 1
            else:
                w[c + 1] = e[c]
                w[c] = e[c + 1]
            break
    for c in range(lo, hi, 2):
        if not (e[c] | e[c + 1]) and (f[c] | f[c + 1]):
            if f[c] == f[c + 1]:
                w[c + 1] = 1
            else:
                w[c + 1] = f[c]
                w[c] = f[c + 1]
            break
    for c in range(lo, hi):
        h1[c] = e[c] ^ w[c]
        h2[c] = f[c] ^ w[c]
    return h1, h2


@_jit
def _pack(v, words):
    out = np.zeros(words, dtype=np.uint64)
    for c in range(v.shape[0]):
        if v[c]:
            out[c >> 6] |= ONE << np.uint64(c & 63)
    return out


@_jit
def _pair_swap(w):
    lo = np.uint64(0x5555555555555555)
    return ((w & lo) << ONE) | ((w >> ONE) & lo)


@_jit
def _packed_transvect(g, a, hs, h, k0, words):
    acc = np.uint64(0)
    for k in range(k0, words):
        acc ^= g[a, k] & hs[k]
    acc ^= acc >> np.uint64(32)
    acc ^= acc >> np.uint64(16)
    acc ^= acc >> np.uint64(8)
    acc ^= acc >> np.uint64(4)
    acc ^= acc >> np.uint64(2)
    acc ^= acc >> ONE
    if acc & ONE:
        for k in range(k0, words):
            g[a, k] ^= h[k]


@_jit
def symplectic_from_bits(n, first, rest):
    """Uniform element of Sp(2n, GF(2)) from uniform random bits.

    Transvection construction, one level per qubit pair. For the level acting
    on interleaved coordinates ``[o, 2n)`` with ``o = 2*(n - m)``:
    ``first[m-1, o:]`` is a uniform nonzero vector (image of e_o) and
    ``rest[m-1, o:2n-1]`` are uniform bits fixing the image of e_{o+1}. Returns
    the ``(2n, 2n)`` uint8 matrix whose row c is the image of basis vector c,
    in interleaved coordinates.
    """
    nn = 2 * n
    words = (nn + 63) // 64
    g = np.zeros((nn, words), dtype=np.uint64)
    for c in range(nn):
        g[c, c >> 6] |= ONE << np.uint64(c & 63)
    for m in range(1, n + 1):
        o = 2 * (n - m)
        f1 = first[m - 1].copy()
        bits = rest[m - 1]
        e1 = np.zeros(nn, dtype=np.uint8)
        e1[o] = 1
        t1, t2 = _find_transvection(e1, f1, o, nn)
        eprime = e1.copy()
        for j in range(2, 2 * m):
            eprime[o + j] = bits[o + j - 1]
        _transvect(t1, eprime, o, nn)
        _transvect(t2, eprime, o, nn)
        h0 = eprime
        if bits[o]:
            f1[:] = 0
        k0 = o >> 6
        for vec in (t1, t2, h0, f1):
            h = _pack(vec, words)
            hs = _pair_swap(h)
            for a in range(o, nn):
                _packed_transvect(g, a, hs, h, k0, words)
    out = np.zeros((nn, nn), dtype=np.uint8)
    for a in range(nn):
        for c in range(nn):
            out[a, c] = (g[a, c >> 6] >> np.uint64(c & 63)) & ONE
    return out
