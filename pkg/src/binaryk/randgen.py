"""Seeded random instances that are valid by construction.

Acyclic complexes are sums of elementary complexes ``R --a--> R`` (a a unit)
conjugated degreewise by random automorphisms; binary acyclics draw top and
bottom independently on the same dimensions.
"""
from __future__ import annotations

import random
from typing import Any

from .binary import SES, BinaryComplex, NenashevDSES, bot, top
from .complexes import ChainComplex, ChainMap, direct_sum
from .exactrings import Matrix, block, block_diag, hstack, inverse, vstack
from .exactrings.rings import Integers, Ring


def random_unit(ring: Ring, rng: random.Random):
    if isinstance(ring, Integers):
        return rng.choice((1, -1))
    return ring.random(rng, nonzero=True)


def random_matrix(ring: Ring, rows: int, cols: int, rng: random.Random) -> Matrix:
    return Matrix(ring, rows, cols, [[ring.random(rng) for _ in range(cols)] for _ in range(rows)])


def random_invertible(ring: Ring, n: int, rng: random.Random) -> Matrix:
    """Permutation times unit-lower times upper-with-unit-diagonal-entries."""
    z = ring.zero
    lower = [[ring.one if i == j else (ring.random(rng) if i > j else z) for j in range(n)] for i in range(n)]
    upper = [[random_unit(ring, rng) if i == j else (ring.random(rng) if i < j else z) for j in range(n)]
             for i in range(n)]
    perm = list(range(n))
    rng.shuffle(perm)
    pm = [[ring.one if perm[i] == j else z for j in range(n)] for i in range(n)]
    return Matrix(ring, n, n, pm) @ Matrix(ring, n, n, lower) @ Matrix(ring, n, n, upper)


def conjugate(c: ChainComplex, autos: dict[int, Matrix]) -> ChainComplex:
    """Transport c along the degreewise isomorphisms autos[n]: c_n -> c_n."""
    inv = {n: inverse(g) for n, g in autos.items()}
    d = {n: autos[n - 1] @ c.diff(n) @ inv[n] for n in c.dims if c.dim(n - 1)}
    return ChainComplex(c.ring, c.dims, d)


def random_autos(ring: Ring, dims, rng: random.Random) -> dict[int, Matrix]:
    return {n: random_invertible(ring, k, rng) for n, k in dims.items()}


def random_counts(size: int, rng: random.Random, top_degree: int = 3) -> dict[int, int]:
    """Distribute ``size`` elementary pieces over degrees 0..top_degree-1."""
    counts: dict[int, int] = {}
    for _ in range(size):
        n = rng.randrange(top_degree)
        counts[n] = counts.get(n, 0) + 1
    return counts


def dims_of_counts(counts: dict[int, int]) -> dict[int, int]:
    dims: dict[int, int] = {}
    for n, c in counts.items():
        dims[n] = dims.get(n, 0) + c
        dims[n + 1] = dims.get(n + 1, 0) + c
    return dims


def counts_of_dims(dims: dict[int, int]) -> dict[int, int] | None:
    """Inverse of :func:`dims_of_counts`, or None if no acyclic complex has these dims."""
    if not dims:
        return {}
    lo, hi = min(dims), max(dims)
    counts: dict[int, int] = {}
    prev = 0
    for n in range(lo, hi + 1):
        c = dims.get(n, 0) - prev
        if c < 0:
            return None
        if c:
            counts[n] = c
        prev = c
    return counts if prev == 0 else None


def elementary_sum(ring: Ring, counts: dict[int, int], rng: random.Random) -> ChainComplex:
    dims = dims_of_counts(counts)
    # pieces in degree n occupy the last slots of C_n and the first slots of C_{n+1}
    d = {}
    for n in sorted(counts):
        rows, cols = dims[n], dims[n + 1]
        data = [[ring.zero] * cols for _ in range(rows)]
        for k in range(counts[n]):
            data[rows - counts[n] + k][k] = random_unit(ring, rng)
        d[n + 1] = Matrix(ring, rows, cols, data)
    return ChainComplex(ring, dims, d)


def random_acyclic(ring: Ring, size: int, rng: random.Random, counts: dict[int, int] | None = None,
                   top_degree: int = 3) -> ChainComplex:
    counts = random_counts(size, rng, top_degree) if counts is None else counts
    c = elementary_sum(ring, counts, rng)
    return conjugate(c, random_autos(ring, c.dims, rng))


def random_complex(ring: Ring, size: int, rng: random.Random, top_degree: int = 3) -> ChainComplex:
    """Acyclic part plus free homology, conjugated; usually not acyclic."""
    acyc = elementary_sum(ring, random_counts(size, rng, top_degree), rng)
    homology = {}
    for _ in range(rng.randrange(size + 1)):
        n = rng.randrange(top_degree + 1)
        homology[n] = homology.get(n, 0) + 1
    c = direct_sum(acyc, ChainComplex(ring, homology))
    return conjugate(c, random_autos(ring, c.dims, rng))


def random_binary_acyclic(ring: Ring, size: int, rng: random.Random, counts: dict[int, int] | None = None,
                          top_degree: int = 3) -> BinaryComplex:
    counts = random_counts(size, rng, top_degree) if counts is None else counts
    t = random_acyclic(ring, 0, rng, counts)
    b = random_acyclic(ring, 0, rng, counts)
    return BinaryComplex.from_pair(t, b) if t.dims else BinaryComplex(ring)


def random_graded_map(ring: Ring, source_dims, target_dims, rng: random.Random) -> dict[int, Matrix]:
    return {n: random_matrix(ring, target_dims.get(n, 0), k, rng) for n, k in source_dims.items()}


def _twisted_row(x: ChainComplex, z: ChainComplex, g: dict[int, Matrix]) -> dict[int, Matrix]:
    """Differential [[d_X, h], [0, d_Z]] with h = d_X g - g d_Z, so that it squares to zero."""
    ring = x.ring
    d = {}
    for n in sorted(set(x.dims) | set(z.dims)):
        gn = g.get(n, Matrix(ring, x.dim(n), z.dim(n)))
        gm = g.get(n - 1, Matrix(ring, x.dim(n - 1), z.dim(n - 1)))
        h = x.diff(n) @ gn - gm @ z.diff(n)
        d[n] = block(ring, [[x.diff(n), h], [Matrix(ring, z.dim(n - 1), x.dim(n)), z.diff(n)]])
    return d


def random_binary_ses(ring: Ring, size: int, rng: random.Random) -> SES:
    """A short exact sequence X >-> Y ->> Z of binary acyclic complexes."""
    x = random_binary_acyclic(ring, size, rng)
    z = random_binary_acyclic(ring, size, rng)
    dims = {n: x.dim(n) + z.dim(n) for n in sorted(set(x.dims) | set(z.dims))}
    rows = []
    for row in (top, bot):
        g = random_graded_map(ring, z.dims, x.dims, rng)
        rows.append(_twisted_row(row(x), row(z), g))
    autos = random_autos(ring, dims, rng)
    y = BinaryComplex(ring, dims, rows[0], rows[1])
    yt = conjugate(top(y), autos)
    yb = conjugate(bot(y), autos)
    y = BinaryComplex(ring, dims, yt.d, yb.d)
    mono, epi = {}, {}
    for n, k in dims.items():
        inc = vstack(ring, x.dim(n), [Matrix.identity(ring, x.dim(n)), Matrix(ring, z.dim(n), x.dim(n))])
        proj = block_diag(ring, Matrix(ring, 0, x.dim(n)), Matrix.identity(ring, z.dim(n)))
        mono[n] = autos[n] @ inc
        epi[n] = proj @ inverse(autos[n])
    return SES(x, y, z, ChainMap(x, y, mono), ChainMap(y, z, epi))


def random_dses(ring: Ring, a: int, c: int, rng: random.Random) -> NenashevDSES:
    """Random automorphisms applied to the doubled split sequence A >-> A+C ->> C."""
    b = a + c
    i0 = vstack(ring, a, [Matrix.identity(ring, a), Matrix(ring, c, a)])
    p0 = block_diag(ring, Matrix(ring, 0, a), Matrix.identity(ring, c))
    g, h = random_invertible(ring, b, rng), random_invertible(ring, b, rng)
    ga, gc = random_invertible(ring, a, rng), random_invertible(ring, c, rng)
    i = g @ i0
    p = p0 @ inverse(g)
    j = h @ i0 @ ga
    q = gc @ p0 @ inverse(h)
    return NenashevDSES(ring, a, b, c, i, j, p, q)


def r_example(ring: Ring, r) -> NenashevDSES:
    """A = k, B = k^2, C = k with i = e1, j = e2, p = (0, 1), q = (r, 0)."""
    o, z = ring.one, ring.zero
    m = lambda rows, data: Matrix(ring, rows, len(data[0]), data)  # noqa: E731
    return NenashevDSES(ring, 1, 2, 1, m(2, [[o], [z]]), m(2, [[z], [o]]), m(1, [[z, o]]), m(1, [[r, z]]))


def describe_seed(seed: Any) -> int:
    if isinstance(seed, int):
        return seed
    return int(str(seed), 0)


# chain maps

def random_null_homotopic(src: ChainComplex, tgt: ChainComplex, rng: random.Random) -> ChainMap:
    """``d h + h d`` for a random degree +1 map h; over a field every map between
    acyclic complexes has this form."""
    ring = src.ring
    h = {n: random_matrix(ring, tgt.dim(n + 1), src.dim(n), rng) for n in src.dims}
    zero = lambda n: Matrix(ring, tgt.dim(n + 1), src.dim(n))  # noqa: E731
    comps = {}
    for n in sorted(set(src.dims) | set(tgt.dims)):
        hn, hm = h.get(n) or zero(n), h.get(n - 1) or zero(n - 1)
        comps[n] = tgt.diff(n + 1) @ hn + hm @ src.diff(n)
    return ChainMap(src, tgt, comps)


def _inclusion(ring: Ring, a_dims, total_dims, offset_dims=None) -> dict[int, Matrix]:
    """Degreewise inclusion of a summand sitting after ``offset_dims`` slots."""
    offset_dims = offset_dims or {}
    comps = {}
    for n, k in a_dims.items():
        off = offset_dims.get(n, 0)
        rest = total_dims.get(n, 0) - off - k
        comps[n] = vstack(ring, k, [Matrix(ring, off, k), Matrix.identity(ring, k), Matrix(ring, rest, k)])
    return comps


def quasi_iso_extension(c: ChainComplex, rng: random.Random, size: int = 2):
    """A complex D and a quasi-isomorphism ``c -> D`` that is usually not an isomorphism:
    D is c plus an acyclic summand, moved by random automorphisms, and the
    inclusion is perturbed by a null-homotopic map."""
    ring = c.ring
    extra = elementary_sum(ring, random_counts(rng.randrange(size + 1), rng), rng)
    d0 = direct_sum(c, extra)
    autos = random_autos(ring, d0.dims, rng)
    d = conjugate(d0, autos)
    inc = _inclusion(ring, c.dims, d0.dims)
    u = {n: autos[n] @ m for n, m in inc.items()}
    pert = random_null_homotopic(c, d, rng)
    comps = {}
    for n in sorted(set(c.dims) | set(d.dims)):
        comps[n] = u[n] + pert.comp(n) if n in u else pert.comp(n)
    return d, ChainMap(c, d, comps)


# relative generators

def random_evaluable_triple(f, size: int, rng: random.Random):
    """M+ and M- acyclic over the source, N in B^q over the target, u null-homotopic."""
    from .relative import RelTriple, base_change

    mp = random_acyclic(f.source, rng.randrange(size + 1), rng)
    mm = random_acyclic(f.source, rng.randrange(size + 1), rng)
    n = random_binary_acyclic(f.target, size, rng)
    up = random_null_homotopic(base_change(mp, f), top(n), rng)
    um = random_null_homotopic(base_change(mm, f), bot(n), rng)
    return RelTriple(mp, mm, n, up, um)


def _homology_part(ring: Ring, counts: dict[int, int]) -> ChainComplex:
    return ChainComplex(ring, dims_of_counts(counts))


def random_triple(f, size: int, rng: random.Random):
    """A valid triple whose rows usually carry homology (not evaluable).

    M+ = H ⊕ P+ ⊕ A+ and M- = H ⊕ P- ⊕ A- with H, P± zero-differential and A±
    acyclic.  P± are pairs of copies of k in adjacent degrees, so χ(M+) = χ(M-).
    ⊤N = F(M+) ⊕ E+ and ⊥N = F(M-) ⊕ E- with acyclic E± chosen to balance
    dimensions; everything is then moved by random automorphisms.
    """
    from .relative import RelTriple, base_change, transport

    src, tgt = f.source, f.target
    hom: dict[int, int] = {}
    for _ in range(rng.randrange(size + 1)):
        n = rng.randrange(3)
        hom[n] = hom.get(n, 0) + 1
    h = ChainComplex(src, hom)
    pairs = [random_counts(rng.randrange(size + 1), rng) for _ in range(2)]
    acyc = [random_counts(rng.randrange(size + 1), rng) for _ in range(2)]
    ms = []
    for k in range(2):
        m = direct_sum(direct_sum(h, _homology_part(src, pairs[k])), elementary_sum(src, acyc[k], rng))
        ms.append(m)
    # E+ balances M-, E- balances M+
    extras = []
    for k in (1, 0):
        counts = dict(acyc[k])
        for n, c in pairs[k].items():
            counts[n] = counts.get(n, 0) + c
        extras.append(elementary_sum(tgt, counts, rng))
    fm = [base_change(m, f) for m in ms]
    rows = [direct_sum(fm[0], extras[0]), direct_sum(fm[1], extras[1])]
    dims = {n: rows[0].dim(n) for n in sorted(set(rows[0].dims) | set(rows[1].dims))}
    assert dims == {n: rows[1].dim(n) for n in dims}, "row dimensions failed to balance"
    n = BinaryComplex(tgt, dims, rows[0].d, rows[1].d)
    u = [ChainMap(fm[k], row, _inclusion(tgt, fm[k].dims, row.dims)) for k, row in ((0, top(n)), (1, bot(n)))]
    t = RelTriple(ms[0], ms[1], n, u[0], u[1])
    t, _ = transport(t, random_autos(tgt, dims, rng))
    return conjugate_triple_sources(t, f, rng)[0]


def conjugate_triple_sources(t, f, rng: random.Random):
    """Move M+ and M- by random automorphisms g±; returns the triple and (g+, g-)."""
    from .relative import RelTriple, base_change

    out, gs = [], []
    for m, u in ((t.m_plus, t.u_plus), (t.m_minus, t.u_minus)):
        g = random_autos(f.source, m.dims, rng)
        m2 = conjugate(m, g)
        fm2 = base_change(m2, f)
        u2 = ChainMap(fm2, u.target, {n: u.comp(n) @ f.matrix(inverse(g[n])) for n in m.dims})
        out.append((m2, u2))
        gs.append(g)
    return RelTriple(out[0][0], out[1][0], t.n, out[0][1], out[1][1]), gs


def random_triple_ses(f, size: int, rng: random.Random, evaluable: bool = True):
    """A short exact sequence of triples X >-> Y ->> Z with non-split middle N.

    Y's rows are ``[[d_X, d_X g - g d_Z], [0, d_Z]]`` and ``u_Y = [[u_X, -g u_Z], [0, u_Z]]``,
    which is exactly what makes u_Y a chain map compatible with both maps.
    """
    from .relative import RelTriple, TripleMorphism, TripleSESRelation, base_change, transport

    gen = random_evaluable_triple if evaluable else random_triple
    x, z = gen(f, size, rng), gen(f, size, rng)
    src, tgt = f.source, f.target
    mp, mm = direct_sum(x.m_plus, z.m_plus), direct_sum(x.m_minus, z.m_minus)
    dims = {n: x.n.dim(n) + z.n.dim(n) for n in sorted(set(x.n.dims) | set(z.n.dims))}
    rows, us = [], []
    for row, ux, uz, m in ((top, x.u_plus, z.u_plus, mp), (bot, x.u_minus, z.u_minus, mm)):
        g = random_graded_map(tgt, z.n.dims, x.n.dims, rng)
        rows.append(_twisted_row(row(x.n), row(z.n), g))
        us.append((ux, uz, g, m))
    n = BinaryComplex(tgt, dims, rows[0], rows[1])
    u = []
    for (ux, uz, g, m), row in zip(us, (top(n), bot(n))):
        fm = base_change(m, f)
        comps = {}
        for k in sorted(set(fm.dims) | set(dims)):
            gk = g.get(k, Matrix(tgt, x.n.dim(k), z.n.dim(k)))
            comps[k] = block(tgt, [[ux.comp(k), -(gk @ uz.comp(k))],
                                   [Matrix(tgt, z.n.dim(k), ux.source.dim(k)), uz.comp(k)]])
        u.append(ChainMap(fm, row, comps))
    y = RelTriple(mp, mm, n, u[0], u[1])

    def split_maps(ring, a_dims, b_dims):
        tot = {k: a_dims.get(k, 0) + b_dims.get(k, 0) for k in set(a_dims) | set(b_dims)}
        inc = _inclusion(ring, a_dims, tot)
        proj = {k: block_diag(ring, Matrix(ring, 0, a_dims.get(k, 0)), Matrix.identity(ring, b_dims.get(k, 0)))
                for k in tot}
        return inc, proj

    inc_p, proj_p = split_maps(src, x.m_plus.dims, z.m_plus.dims)
    inc_m, proj_m = split_maps(src, x.m_minus.dims, z.m_minus.dims)
    inc_n, proj_n = split_maps(tgt, x.n.dims, z.n.dims)
    # move the middle so the maps are not literally the canonical ones
    psi = random_autos(tgt, dims, rng)
    y, _ = transport(y, psi)
    y, (gp, gm) = conjugate_triple_sources(y, f, rng)
    inc_n = {k: psi[k] @ m for k, m in inc_n.items()}
    proj_n = {k: m @ inverse(psi[k]) for k, m in proj_n.items()}
    inc_p = {k: gp[k] @ m for k, m in inc_p.items()}
    proj_p = {k: m @ inverse(gp[k]) for k, m in proj_p.items()}
    inc_m = {k: gm[k] @ m for k, m in inc_m.items()}
    proj_m = {k: m @ inverse(gm[k]) for k, m in proj_m.items()}
    mono = TripleMorphism(x, y, ChainMap(x.m_plus, y.m_plus, inc_p), ChainMap(x.m_minus, y.m_minus, inc_m),
                          ChainMap(x.n, y.n, inc_n))
    epi = TripleMorphism(y, z, ChainMap(y.m_plus, z.m_plus, proj_p), ChainMap(y.m_minus, z.m_minus, proj_m),
                         ChainMap(y.n, z.n, proj_n))
    return TripleSESRelation(x, y, z, mono, epi, f)


def random_weak_equivalence(f, size: int, rng: random.Random, evaluable: bool = True):
    """X -> Y with phi± inclusions of M± into M± ⊕ (acyclic), psi a random automorphism."""
    from .relative import RelTriple, TripleMorphism, WeakEquivRelation, base_change, transport

    x = (random_evaluable_triple if evaluable else random_triple)(f, size, rng)
    psi = random_autos(f.target, x.n.dims, rng)
    if rng.random() < 0.25:
        s = random_unit(f.target, rng)
        psi = {n: Matrix.identity(f.target, k).scale(s) for n, k in x.n.dims.items()}
    moved, _ = transport(x, psi)
    parts = []
    for m, u in ((x.m_plus, moved.u_plus), (x.m_minus, moved.u_minus)):
        e = random_acyclic(f.source, rng.randrange(size + 1), rng)
        m2 = direct_sum(m, e)
        fm2 = base_change(m2, f)
        v = random_null_homotopic(base_change(e, f), u.target, rng)
        comps = {}
        for k in sorted(set(fm2.dims) | set(u.target.dims)):
            comps[k] = hstack(f.target, u.target.dim(k), [u.comp(k), v.comp(k)])
        parts.append((m2, ChainMap(fm2, u.target, comps), ChainMap(m, m2, _inclusion(f.source, m.dims, m2.dims))))
    y = RelTriple(parts[0][0], parts[1][0], moved.n, parts[0][1], parts[1][1])
    y, (gp, gm) = conjugate_triple_sources(y, f, rng)
    phi_p = ChainMap(x.m_plus, y.m_plus, {k: gp[k] @ parts[0][2].comp(k) for k in y.m_plus.dims})
    phi_m = ChainMap(x.m_minus, y.m_minus, {k: gm[k] @ parts[1][2].comp(k) for k in y.m_minus.dims})
    return WeakEquivRelation(TripleMorphism(x, y, phi_p, phi_m, ChainMap(x.n, y.n, psi)), f)


def random_diagonal_triple(f, size: int, rng: random.Random, evaluable: bool = True):
    from .relative import TripleDiagonalRelation, base_change, diagonal_triple

    m = random_acyclic(f.source, size, rng) if evaluable else random_complex(f.source, size, rng)
    c, u = quasi_iso_extension(base_change(m, f), rng)
    return TripleDiagonalRelation(diagonal_triple(m, c, u), f)


# multicomplexes

def random_multicomplex(ring: Ring, sig, size: int, rng: random.Random, pieces: int | None = None):
    """Sum of tensor products of one-dimensional acyclics, moved by pointwise
    automorphisms; valid for ``sig`` by construction."""
    from . import multicube as mc

    pieces = rng.randrange(1, 3) if pieces is None else pieces
    total = None
    for _ in range(pieces):
        x = None
        for s in sig:
            k = max(1, rng.randrange(size + 1))
            counts = random_counts(k, rng, top_degree=2)
            if s == mc.BQ:
                y = mc.from_binary(random_binary_acyclic(ring, 0, rng, counts))
            else:
                y = mc.from_complex(random_acyclic(ring, 0, rng, counts))
            x = y if x is None else mc.tensor(x, y)
        total = x if total is None else mc.direct_sum(total, x)
    autos = {p: random_invertible(ring, k, rng) for p, k in total.dims.items()}
    return mc.conjugate(total, autos)


def corrupt_entry(x, rng: random.Random):
    """Change one entry of one differential slot whose source and target are nonzero.

    Returns the corrupted object and a description of the change.
    """
    from . import multicube as mc

    slots = []
    for i in range(x.n):
        for c in x.choices(i):
            for p in x.dims:
                q = mc._step(p, i)
                if x.dim(q):
                    slots.append((i, c, p))
    if not slots:
        raise ValueError("object has no differential slots to corrupt")
    i, c, p = rng.choice(slots)
    m = x.diff(i, c, p)
    r, s = rng.randrange(m.rows), rng.randrange(m.cols)
    delta = random_unit(x.ring, rng)
    new = m.with_entry(r, s, x.ring.add(m[r, s], delta))
    fams = [dict(fam) for fam in x.axes[i]]
    fams[c][p] = new
    return x.replace_axis(i, fams), {"axis": i, "choice": c, "pt": list(p), "entry": [r, s]}
