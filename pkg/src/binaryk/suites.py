"""Seeded property suites.

Each suite runs a number of random cases per check and returns :class:`Check`
records.  Case ``i`` of check ``name`` draws from ``Random(f"{seed}/{name}/{i}")``
so any failure can be replayed on its own from the witness.
"""
from __future__ import annotations

import itertools
import random
import time
import traceback
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable

from . import multicube as mc
from . import randgen as rg
from .binary import (SES, bot, diag, direct_sum_binary, direct_sum_dses, embed_nenashev, h_functor,
                     h_ses_witnesses, is_diagonal, ses_bot, ses_top, top, validate_binary, validate_ses)
from .complexes import (ChainComplex, ChainMap, cone, direct_sum, euler_char, homology, identity_map,
                        is_acyclic, is_quasi_iso, naive_filtration, shift, validate_complex_ses)
from .exactrings import Matrix, det, hstack, rank, rank_and_kernel, ring_from_string, snf
from .exactrings.rings import QQ, ZZ
from .ktorsion import (calibrate_epsilon, elementary_binary, k1_class, nenashev_det_oracle, ses_sign,
                       shift_sign, torsion)
from .relative import (ExactFunctorSpec, base_change, boundary, certify_rel_relation, correction_bracket,
                       from_k1, in_source_units, rel_class)

MAX_WITNESSES = 5


@dataclass
class Check:
    name: str
    cases: int = 0
    failed: int = 0
    witnesses: list[dict] = field(default_factory=list)
    info: dict[str, Any] = field(default_factory=dict)

    @property
    def status(self) -> str:
        if self.failed:
            return "fail"
        return "pass" if self.cases else "warn"

    def record(self, ok: bool, **witness) -> None:
        self.cases += 1
        if not ok:
            self.failed += 1
            if len(self.witnesses) < MAX_WITNESSES:
                self.witnesses.append(witness)

    def to_json(self) -> dict:
        out = {"name": self.name, "status": self.status, "cases": self.cases, "failed": self.failed}
        if self.witnesses:
            out["witness"] = self.witnesses
        if self.info:
            out["info"] = self.info
        return out


def case_rng(seed: int, name: str, i: int) -> random.Random:
    return random.Random(f"{seed}/{name}/{i}")


def _run(check: Check, seed: int, cases: int, body: Callable[[random.Random, int], Any]) -> Check:
    """Run ``body(rng, i)`` per case; it returns True, False or a witness dict."""
    for i in range(cases):
        rng = case_rng(seed, check.name, i)
        try:
            result = body(rng, i)
        except Exception as exc:  # a crash is a failure with a witness, not an abort
            tb = traceback.extract_tb(exc.__traceback__)[-1]
            check.record(False, case=i, error=f"{type(exc).__name__}: {exc}", at=f"{tb.name}:{tb.lineno}")
            continue
        if result is True:
            check.record(True)
        elif isinstance(result, dict):
            check.record(False, case=i, **result)
        else:
            check.record(False, case=i)
    return check


# oracles that avoid the library's elimination code

def naive_matmul(a: Matrix, b: Matrix) -> list[list]:
    r = a.ring
    out = []
    for i in range(a.rows):
        row = []
        for j in range(b.cols):
            acc = r.zero
            for k in range(a.cols):
                acc = r.add(acc, r.mul(a[i, k], b[k, j]))
            row.append(acc)
        out.append(row)
    return out


def cofactor_det(a: Matrix):
    """Laplace expansion along the first row."""
    r = a.ring
    n = a.rows
    if n == 0:
        return r.one

    def rec(rows: list[int], cols: list[int]):
        if len(rows) == 1:
            return a[rows[0], cols[0]]
        acc = r.zero
        for k, c in enumerate(cols):
            x = a[rows[0], c]
            if r.is_zero(x):
                continue
            minor = rec(rows[1:], cols[:k] + cols[k + 1:])
            term = r.mul(x, minor)
            acc = r.add(acc, term) if k % 2 == 0 else r.sub(acc, term)
        return acc

    return rec(list(range(n)), list(range(n)))


def homology_dims(c: ChainComplex) -> dict[int, int]:
    """``dim ker d_n - rank d_{n+1}`` from ranks alone."""
    return {n: c.dim(n) - rank(c.diff(n)) - rank(c.diff(n + 1)) for n in c.dims}


def induces_iso(f: ChainMap) -> bool:
    """Whether f induces isomorphisms on homology, computed from cycles and boundaries."""
    src, tgt = f.source, f.target
    for n in sorted(set(src.dims) | set(tgt.dims)):
        hs = homology_dims(src).get(n, 0)
        ht = homology_dims(tgt).get(n, 0)
        if hs != ht:
            return False
        if not hs:
            continue
        _, cycles = rank_and_kernel(src.diff(n))
        bnd = tgt.diff(n + 1)
        image = f.comp(n) @ cycles
        joint = hstack(src.ring, tgt.dim(n), [bnd, image])
        # f_* injective on H_n  <=>  rank [B_n | f(Z_n)] - rank B_n == dim H_n(src)
        if rank(joint) - rank(bnd) != hs:
            return False
    return True


def multi_oracle(x: mc.MultiComplex) -> bool:
    """Validity of a multicomplex from its assembled block operators.

    Each axis family becomes one square matrix D on the direct sum of all
    points.  Valid iff every D squares to zero, D's on distinct axes commute,
    and each D is exact (2 rank D = total dimension)."""
    pts = list(x.dims)
    offs, total = {}, 0
    for p in pts:
        offs[p] = total
        total += x.dim(p)
    ring = x.ring
    ops = {}
    for i in range(x.n):
        for c in x.choices(i):
            data = [[ring.zero] * total for _ in range(total)]
            for p in pts:
                q = p[:i] + (p[i] - 1,) + p[i + 1:]
                if q not in offs:
                    continue
                m = x.diff(i, c, p)
                if m.shape != (x.dim(q), x.dim(p)):
                    return False
                for r in range(m.rows):
                    for s in range(m.cols):
                        data[offs[q] + r][offs[p] + s] = m[r, s]
            ops[i, c] = Matrix(ring, total, total, data)
    for (i, c), d in ops.items():
        if not (d @ d).is_zero() or 2 * rank(d) != total:
            return False
    for (i, c), (j, e) in itertools.combinations(ops, 2):
        if i != j and ops[i, c] @ ops[j, e] != ops[j, e] @ ops[i, c]:
            return False
    return True


def _rings(*names: str):
    return [ring_from_string(n) for n in names]


# suites

def suite_linalg(seed: int, cases: int) -> list[Check]:
    checks = []
    for ring in _rings("F5", "F4", "Q", "Z"):
        def small(rng, rows, cols):
            if ring == QQ:
                return Matrix(ring, rows, cols, [[Fraction(rng.randint(-4, 4), rng.randint(1, 3))
                                                  for _ in range(cols)] for _ in range(rows)])
            if ring == ZZ:
                return Matrix(ring, rows, cols, [[rng.randint(-5, 5) for _ in range(cols)] for _ in range(rows)])
            return rg.random_matrix(ring, rows, cols, rng)

        def matmul_case(rng, i):
            r, k, c = rng.randrange(6), rng.randrange(6), rng.randrange(6)
            a, b = small(rng, r, k), small(rng, k, c)
            return (a @ b).tolist() == naive_matmul(a, b) or {"shape": [r, k, c]}

        def det_case(rng, i):
            n = rng.randrange(5)
            a, b = small(rng, n, n), small(rng, n, n)
            da, db = det(a), det(b)
            if det(a @ b) != ring.mul(da, db):
                return {"n": n, "why": "det(AB) != det(A)det(B)"}
            if da != cofactor_det(a):
                return {"n": n, "why": "det disagrees with cofactor expansion"}
            return True

        checks.append(_run(Check(f"linalg.matmul[{ring}]"), seed, cases, matmul_case))
        checks.append(_run(Check(f"linalg.det_multiplicative[{ring}]"), seed, cases, det_case))
        if ring == ZZ:
            def snf_case(rng, i):
                r, c = rng.randrange(5), rng.randrange(5)
                a = small(rng, r, c)
                u, s, v = snf(a)
                if u @ a @ v != s:
                    return {"why": "U a V != S", "shape": [r, c]}
                if det(u) not in (1, -1) or det(v) not in (1, -1):
                    return {"why": "U or V not unimodular"}
                if any(s[i, j] for i in range(r) for j in range(c) if i != j):
                    return {"why": "S not diagonal"}
                f = [s[i, i] for i in range(min(r, c))]
                if any(x < 0 for x in f):
                    return {"why": "negative diagonal"}
                if any((x == 0 and y != 0) or (x and y % x) for x, y in zip(f, f[1:])):
                    return {"why": "divisibility chain broken", "diag": f}
                return True
            checks.append(_run(Check("linalg.snf[Z]"), seed, cases, snf_case))
        else:
            def kernel_case(rng, i):
                r, c = rng.randrange(6), rng.randrange(6)
                a = small(rng, r, c)
                rk, ker = rank_and_kernel(a)
                if rk + ker.cols != c or not (a @ ker).is_zero() or rank(ker) != ker.cols:
                    return {"shape": [r, c]}
                return True
            checks.append(_run(Check(f"linalg.rank_kernel[{ring}]"), seed, cases, kernel_case))
    return checks


def suite_complexes(seed: int, cases: int) -> list[Check]:
    rings = _rings("F5", "Q", "F4")

    def cone_id(rng, i):
        c = rg.random_acyclic(rings[i % 3], rng.randrange(5), rng) if i % 2 else \
            rg.random_complex(rings[i % 3], rng.randrange(4), rng)
        k = cone(identity_map(c))
        return (is_acyclic(k) and all(h == 0 for h in homology_dims(k).values())) or {"dims": dict(c.dims)}

    def euler(rng, i):
        ring = rings[i % 3]
        a, b = rg.random_complex(ring, 3, rng), rg.random_complex(ring, 3, rng)
        if euler_char(direct_sum(a, b)) != euler_char(a) + euler_char(b):
            return {"why": "chi of a sum"}
        if euler_char(shift(a)) != -euler_char(a):
            return {"why": "chi of a shift"}
        d, f = rg.quasi_iso_extension(a, rng)
        g = rg.random_null_homotopic(a, d, rng)
        for m in (f, g):
            if euler_char(cone(m)) != euler_char(m.target) - euler_char(m.source):
                return {"why": "chi of a cone"}
        if euler_char(a) != sum((-1) ** n * h for n, h in homology_dims(a).items()):
            return {"why": "chi differs from the homology alternating sum"}
        return True

    def filtration(rng, i):
        ring = rings[i % 3]
        c = rg.random_complex(ring, 4, rng)
        steps = naive_filtration(c)
        seen: dict[int, int] = {}
        for sub, inc, quo in steps:
            nxt = inc.target
            j = max(quo.dims) if quo.dims else None
            epi = ChainMap(nxt, quo, {n: Matrix.identity(ring, k) for n, k in quo.dims.items()})
            v = validate_complex_ses(SES(sub, nxt, quo, inc, epi))
            if not v:
                return {"why": v.message}
            if any(m.rows and m.cols and not m.is_zero() for m in quo.d.values()):
                return {"why": "quotient has a differential"}
            if j is not None:
                if dict(quo.dims) != {j: c.dim(j)}:
                    return {"why": "quotient is not the single piece", "degree": j}
                seen[j] = quo.dim(j)
        if steps and (steps[0][0].dims or steps[-1][1].target != c):
            return {"why": "filtration does not run from 0 to c"}
        return seen == dict(c.dims) or {"why": "quotients do not recover the dimensions"}

    def quasi_iso(rng, i):
        ring = rings[i % 3]
        a = rg.random_complex(ring, 3, rng)
        if rng.random() < 0.5:
            _, f = rg.quasi_iso_extension(a, rng)
        else:
            f = rg.random_null_homotopic(a, rg.random_complex(ring, 3, rng), rng)
        return is_quasi_iso(f) == induces_iso(f) or {"source": dict(a.dims)}

    def sum_homology(rng, i):
        ring = rings[i % 3]
        a, b = rg.random_complex(ring, 3, rng), rg.random_complex(ring, 3, rng)
        s = direct_sum(a, b)
        ok = all(homology(s, n) == homology(a, n) + homology(b, n) for n in s.dims)
        return ok or {"why": "homology of a sum"}

    return [
        _run(Check("complexes.cone_identity_acyclic"), seed, cases, cone_id),
        _run(Check("complexes.euler_identities"), seed, cases, euler),
        _run(Check("complexes.naive_filtration"), seed, cases, filtration),
        _run(Check("complexes.quasi_iso_vs_homology"), seed, cases, quasi_iso),
        _run(Check("complexes.sum_homology"), seed, cases, sum_homology),
    ]


def suite_torsion(seed: int, cases: int) -> list[Check]:
    rings = _rings("F5", "F7", "Q", "F4")

    def normalization(rng, i):
        ring = rings[i % 4]
        a = rg.random_unit(ring, rng)
        n = rng.randrange(-2, 3)
        t = torsion(ChainComplex.elementary(ring, a, n))
        expect = a if n % 2 == 0 else ring.inv(a)
        return t.value == expect or {"a": ring.to_str(a), "degree": n}

    def cone_id(rng, i):
        c = rg.random_acyclic(rings[i % 4], rng.randrange(5), rng)
        return torsion(cone(identity_map(c))).is_one() or {"dims": dict(c.dims)}

    def shift_rule(rng, i):
        c = rg.random_acyclic(rings[i % 4], rng.randrange(5), rng)
        lhs = torsion(shift(c)).value
        rhs = c.ring.mul(c.ring.from_int(shift_sign(c)), torsion(c).inverse().value)
        return lhs == rhs or {"dims": dict(c.dims)}

    def ses_rule(rng, i):
        ring = rings[i % 4]
        x = rg.random_acyclic(ring, rng.randrange(4), rng)
        z = rg.random_acyclic(ring, rng.randrange(4), rng)
        g = rg.random_graded_map(ring, z.dims, x.dims, rng)
        dims = {n: x.dim(n) + z.dim(n) for n in set(x.dims) | set(z.dims)}
        y = ChainComplex(ring, dims, rg._twisted_row(x, z, g))
        expect = ring.mul(ring.from_int(ses_sign(x, z)), ring.mul(torsion(x).value, torsion(z).value))
        return torsion(y).value == expect or {"left": dict(x.dims), "right": dict(z.dims)}

    def integral_signs(rng, i):
        c = rg.random_acyclic(ZZ, rng.randrange(4), rng)
        t = torsion(c).value
        q = torsion(ChainComplex(QQ, c.dims, {n: m.map(Fraction, QQ) for n, m in c.d.items()})).value
        return (t in (1, -1) and t == q) or {"dims": dict(c.dims)}

    return [
        _run(Check("torsion.normalization"), seed, cases, normalization),
        _run(Check("torsion.cone_identity"), seed, cases, cone_id),
        _run(Check("torsion.shift"), seed, cases, shift_rule),
        _run(Check("torsion.based_ses"), seed, cases, ses_rule),
        _run(Check("torsion.integral_signs"), seed, cases, integral_signs),
    ]


def suite_k1(seed: int, cases: int) -> list[Check]:
    rings = _rings("F5", "F7", "Q", "F4")

    def diagonal(rng, i):
        c = rg.random_acyclic(rings[i % 4], rng.randrange(6), rng)
        return k1_class(diag(c)).is_one() or {"dims": dict(c.dims)}

    def ses(rng, i):
        s = rg.random_binary_ses(rings[i % 4], rng.randrange(1, 4), rng)
        v = validate_ses(s)
        if not v:
            return {"why": f"generator produced an invalid sequence: {v.message}"}
        lhs = k1_class(s.middle)
        rhs = k1_class(s.left) * k1_class(s.right)
        return lhs == rhs or {"middle": str(lhs), "product": str(rhs)}

    def rows_exact(rng, i):
        s = rg.random_binary_ses(rings[i % 4], rng.randrange(1, 4), rng)
        for name, row in (("top", ses_top(s)), ("bot", ses_bot(s))):
            v = validate_ses(row)
            if not v:
                return {"row": name, "why": v.message}
        return True

    def split_by_bot(rng, i):
        c = rg.random_complex(rings[i % 4], 4, rng)
        return (bot(diag(c)) == c and top(diag(c)) == c and is_diagonal(diag(c))) or {"dims": dict(c.dims)}

    def plus_diagonal(rng, i):
        ring = rings[i % 4]
        n = rg.random_binary_acyclic(ring, 3, rng)
        c = rg.random_acyclic(ring, 3, rng)
        return k1_class(direct_sum_binary(n, diag(c))) == k1_class(n) or {"dims": dict(n.dims)}

    checks = [
        _run(Check("k1.diagonal_trivial"), seed, cases, diagonal),
        _run(Check("k1.ses_multiplicative"), seed, cases, ses),
        _run(Check("k1.rows_exact"), seed, cases, rows_exact),
        _run(Check("k1.diag_split_by_bot"), seed, cases, split_by_bot),
        _run(Check("k1.sum_with_diagonal"), seed, cases, plus_diagonal),
    ]
    surj = Check("k1.surjective")
    if cases:
        for ring in _rings("F4", "F5", "F7", "F9"):
            for a in ring.elements():
                if not ring.is_zero(a):
                    surj.record(k1_class(elementary_binary(ring, a)).value == a, ring=str(ring), a=ring.to_str(a))
    checks.append(surj)
    return checks


def suite_hfunctor(seed: int, cases: int) -> list[Check]:
    rings = _rings("F5", "Q", "F4", "F7")

    def witnesses(rng, i):
        n = rg.random_binary_acyclic(rings[i % 4], rng.randrange(5), rng)
        s1, s2 = h_ses_witnesses(n)
        for s in (s1, s2):
            v = validate_ses(s)
            if not v:
                return {"why": v.message}
        return True

    def invariance(rng, i):
        n = rg.random_binary_acyclic(rings[i % 4], rng.randrange(5), rng)
        h = h_functor(n)
        if not (validate_binary(h) and h.is_acyclic()):
            return {"why": "H(n) not in B^q"}
        for k in h.dims:
            if h.dim(k) != n.dim(k) + n.dim(k - 1):
                return {"why": "dimensions of H(n)", "degree": k}
        return k1_class(h) == k1_class(n) or {"H": str(k1_class(h)), "n": str(k1_class(n))}

    return [
        _run(Check("hfunctor.witnesses_exact"), seed, cases, witnesses),
        _run(Check("hfunctor.k1_invariant"), seed, cases, invariance),
    ]


def suite_nenashev(seed: int, cases: int) -> list[Check]:
    rings = _rings("F5", "F7", "Q")
    samples = []
    for i in range(cases):
        rng = case_rng(seed, "nenashev.samples", i)
        samples.append(rg.random_dses(rings[i % 3], rng.randrange(4), rng.randrange(4), rng))
    if cases:
        f5 = ring_from_string("F5")
        samples.append(rg.r_example(f5, 2))

    cal = Check("nenashev.calibrate_epsilon")
    eps = None
    if samples:
        try:
            eps = calibrate_epsilon(samples)
        except Exception as exc:
            cal.record(False, error=str(exc))
        else:
            pinned = sum(1 for s in samples if nenashev_det_oracle(s).value not in (s.ring.one, s.ring.neg(s.ring.one)))
            cal.info.update(epsilon=eps, samples=len(samples), pinning_samples=pinned)
            for k, s in enumerate(samples):
                lhs = k1_class(embed_nenashev(s))
                rhs = nenashev_det_oracle(s) ** eps
                cal.record(lhs == rhs, sample=k, ring=str(s.ring), k1=str(lhs), oracle=str(rhs))

    def sections(rng, i):
        s = samples[i]
        return nenashev_det_oracle(s) == nenashev_det_oracle(s, reverse_pivots=True) or {"sample": i}

    def block_sum(rng, i):
        s = samples[i]
        t = rg.random_dses(s.ring, rng.randrange(3), rng.randrange(3), rng)
        lhs = nenashev_det_oracle(direct_sum_dses(s, t))
        return lhs == nenashev_det_oracle(s) * nenashev_det_oracle(t) or {"sample": i}

    def doubled(rng, i):
        s = samples[i]
        d = rg.NenashevDSES(s.ring, s.a, s.b, s.c, s.i, s.i, s.p, s.p)
        return (nenashev_det_oracle(d).is_one() and is_diagonal(embed_nenashev(d))) or {"sample": i}

    return [
        cal,
        _run(Check("nenashev.section_independent"), seed, cases, sections),
        _run(Check("nenashev.block_sum"), seed, cases, block_sum),
        _run(Check("nenashev.doubled_trivial"), seed, cases, doubled),
    ]


def suite_relative(seed: int, cases: int) -> list[Check]:
    f2, f4 = _rings("F2", "F4")
    f = ExactFunctorSpec(f2, f4)
    size = 3

    def ses(rng, i):
        r = rg.random_triple_ses(f, size, rng, evaluable=i % 4 != 3)
        v = certify_rel_relation(r)
        return bool(v) or {"why": v.message}

    def diagonal(rng, i):
        r = rg.random_diagonal_triple(f, size, rng, evaluable=i % 4 != 3)
        v = certify_rel_relation(r)
        if not v:
            return {"why": v.message}
        return (not r.triple.n.is_acyclic() or rel_class(r.triple, f).is_trivial()) or {"why": "nontrivial"}

    def weak(rng, i):
        r = rg.random_weak_equivalence(f, size, rng, evaluable=i % 4 != 3)
        v = certify_rel_relation(r)
        return bool(v) or {"why": v.message}

    def bracket(rng, i):
        t = rg.random_evaluable_triple(f, size, rng)
        return in_source_units(correction_bracket(t, f).value, f) or {"value": str(correction_bracket(t, f))}

    def source_k1(rng, i):
        n = rg.random_binary_acyclic(f2, rng.randrange(5), rng)
        return rel_class(from_k1(base_change(n, f), f), f).is_trivial() or {"dims": dict(n.dims)}

    def boundary_case(rng, i):
        if i % 2:
            n = rg.random_binary_acyclic(f4, rng.randrange(5), rng)
            return boundary(from_k1(n, f)) == 0 or {"why": "boundary of from_k1"}
        t = rg.random_triple(f, size, rng)
        chi = sum((-1) ** n * k for n, k in t.m_plus.dims.items()) - \
            sum((-1) ** n * k for n, k in t.m_minus.dims.items())
        return (boundary(t) == chi == 0) or {"boundary": boundary(t), "chi": chi}

    cosets = Check("relative.cosets_realized")
    if cases:
        classes = []
        for a in f4.elements():
            if not f4.is_zero(a):
                c = rel_class(from_k1(elementary_binary(f4, a), f), f)
                classes.append(c)
                cosets.record(c.order() == (1 if a == f4.one else 3), a=f4.to_str(a), order=c.order())
        distinct = sum(1 for x, y in itertools.combinations(classes, 2) if x != y)
        cosets.record(distinct == 3, why="classes of F4* not pairwise distinct mod F2*")
        cosets.info["classes"] = [str(c) for c in classes]

    return [
        _run(Check("relative.ses_relation"), seed, cases, ses),
        _run(Check("relative.diagonal_relation"), seed, cases, diagonal),
        _run(Check("relative.weak_equivalence"), seed, cases, weak),
        _run(Check("relative.bracket_in_source_units"), seed, 2 * cases, bracket),
        _run(Check("relative.source_k1_trivial"), seed, cases, source_k1),
        cosets,
        _run(Check("relative.boundary"), seed, cases, boundary_case),
    ]


def suite_multicube(seed: int, cases: int) -> list[Check]:
    ring = ring_from_string("F7")
    sigs = [[mc.BQ, mc.BQ], [mc.BQ, mc.CQ], [mc.CQ, mc.BQ], [mc.CQ, mc.CQ]]

    def gen(rng, sig):
        return rg.random_multicomplex(ring, sig, 3, rng)

    def accepts(rng, i):
        sig = sigs[i % 4]
        x = gen(rng, sig)
        v = mc.validate_multicomplex(x, sig)
        return (bool(v) and multi_oracle(x)) or {"why": v.message or "oracle rejects generated object"}

    def splitting(rng, i):
        sig = sigs[i % 4]
        x = gen(rng, sig)
        for axis in range(2):
            if sig[axis] == mc.CQ:
                d = mc.axis_diag(x, axis)
                if mc.axis_bot(d, axis) != x or not mc.is_axis_diagonal(d, axis):
                    return {"axis": axis}
                up = list(sig)
                up[axis] = mc.BQ
                if not mc.validate_multicomplex(d, up):
                    return {"axis": axis, "why": "upgraded object rejected"}
        return True

    def cross(rng, i):
        x = gen(rng, [mc.BQ, mc.BQ])
        for f, g in itertools.product((mc.axis_top, mc.axis_bot), repeat=2):
            if f(g(x, 1), 0) != g(f(x, 0), 1):
                return {"functors": [f.__name__, g.__name__]}
        y = gen(rng, [mc.CQ, mc.CQ])
        if mc.axis_diag(mc.axis_diag(y, 0), 1) != mc.axis_diag(mc.axis_diag(y, 1), 0):
            return {"functors": ["axis_diag", "axis_diag"]}
        return True

    mutations = Check("multicube.mutations_rejected")
    equivalent = 0
    k = 0
    while mutations.cases < cases and k < 20 * cases + 20:
        rng = case_rng(seed, mutations.name, k)
        sig = sigs[k % 4]
        x = gen(rng, sig)
        y, where = rg.corrupt_entry(x, rng)
        k += 1
        accepted = bool(mc.validate_multicomplex(y, sig))
        if multi_oracle(y):
            equivalent += 1
            if not accepted:
                mutations.failed += 1
                mutations.witnesses.append({"case": k - 1, "why": "valid mutant rejected", **where})
            continue
        mutations.record(not accepted, case=k - 1, **where)
    mutations.info.update(equivalent_mutants=equivalent, drawn=k)

    def certify(rng, i):
        sig = sigs[i % 4]
        x, z = gen(rng, sig), gen(rng, sig)
        rel = mc.split_ses(x, z)
        if not mc.certify_relation(rel, sig):
            return {"why": "split sequence rejected"}
        # broken: kill the epi at one point where the right object is nonzero
        pts = [p for p in rel.middle.dims if z.dim(p)]
        p = rng.choice(pts)
        epi = dict(rel.epi)
        epi[p] = Matrix(ring, z.dim(p), rel.middle.dim(p))
        if mc.certify_relation(mc.SESRelation(x, rel.middle, z, rel.mono, epi), sig):
            return {"why": "broken sequence accepted", "pt": list(p)}
        binary_axes = [a for a in range(2) if sig[a] == mc.BQ]
        for a in range(2):
            if sig[a] == mc.CQ:
                d = mc.axis_diag(x, a)
                up = list(sig)
                up[a] = mc.BQ
                if not mc.certify_relation(mc.DiagonalRelation(d, a), up):
                    return {"why": "diagonal relation rejected", "axis": a}
        for a in binary_axes:
            really = dict(x.axes[a][0]) == dict(x.axes[a][1])
            if bool(mc.certify_relation(mc.DiagonalRelation(x, a), sig)) != really:
                return {"why": "diagonal certificate disagrees with entrywise comparison", "axis": a}
        return True

    def one_dim(rng, i):
        b = rg.random_binary_acyclic(ring, rng.randrange(5), rng)
        x = mc.from_binary(b)
        if mc.to_binary(x) != b:
            return {"why": "round trip"}
        if bool(mc.validate_multicomplex(x, [mc.BQ])) != (bool(validate_binary(b)) and b.is_acyclic()):
            return {"why": "validators disagree"}
        if mc.is_axis_diagonal(x, 0) != is_diagonal(b):
            return {"why": "diagonal tests disagree"}
        d = rg.random_dses(ring, rng.randrange(3), rng.randrange(3), rng)
        return bool(mc.validate_multicomplex(mc.from_binary(embed_nenashev(d)), [mc.BQ])) or {"why": "dses"}

    return [
        _run(Check("multicube.accepts_generated"), seed, cases, accepts),
        _run(Check("multicube.split_identity"), seed, cases, splitting),
        _run(Check("multicube.cross_axis"), seed, cases, cross),
        mutations,
        _run(Check("multicube.certify"), seed, cases, certify),
        _run(Check("multicube.matches_binary"), seed, cases, one_dim),
    ]


# name -> (suite, default case count)
SUITES: dict[str, tuple[Callable[[int, int], list[Check]], int]] = {
    "linalg": (suite_linalg, 500),
    "complexes": (suite_complexes, 200),
    "torsion": (suite_torsion, 200),
    "k1": (suite_k1, 200),
    "hfunctor": (suite_hfunctor, 100),
    "nenashev": (suite_nenashev, 100),
    "relative": (suite_relative, 100),
    "multicube": (suite_multicube, 100),
}


def run_suites(seed: int, cases: int | None = None, names=None) -> tuple[list[Check], dict[str, float]]:
    """Run the named suites (all by default); returns checks and per-suite seconds."""
    checks: list[Check] = []
    timing = {}
    for name in names or SUITES:
        fn, default = SUITES[name]
        t0 = time.perf_counter()
        checks.extend(fn(seed, default if cases is None else cases))
        timing[name] = round(time.perf_counter() - t0, 3)
    return checks, timing
