"""JSON wire format for rings, matrices, complexes and the objects built on them.

Every top-level payload carries ``"kind"`` (one of :data:`KINDS`) and, except
for triples, a ``"ring"`` descriptor.  Matrix entries are strings parsed
exactly by the ring (``"2/3"`` over Q, ``"x+1"`` over F4); bare integers are
accepted too.  Degree keys are strings because JSON object keys are.

complex:       {"degrees": {"0": 2, "1": 2}, "d": {"1": [["1", "0"], ["0", "1"]]}}
binary:        {"degrees": {...}, "top": {"d": {...}}, "bot": {"d": {...}}}
dses:          {"A": 1, "B": 2, "C": 1, "i": [...], "j": [...], "p": [...], "q": [...]}
multicomplex:  {"support": [{"pt": [i, j], "dim": d}], "signature": ["Bq", "Cq"],
                "axes": [{"top": [{"pt": [..], "d": [[..]]}], "bot": [...]}, {"d": [...]}]}
triple:        {"functor": {...}, "m_plus": complex, "m_minus": complex, "n": binary,
                "u_plus": {"0": [[..]]}, "u_minus": {...}}

Relation payloads (``multi_ses``, ``multi_diagonal``, ``triple_ses``,
``triple_diagonal``, ``weak_equivalence``) nest the objects above inline.
"""
from __future__ import annotations

import json
from typing import Any

from .binary import BinaryComplex, NenashevDSES, bot, top
from .complexes import ChainComplex, ChainMap
from .errors import BinaryKError, ParseError
from .exactrings import Matrix
from .exactrings.rings import Ring, ring_from_descriptor
from .multicube import BQ, CQ, DiagonalRelation, MultiComplex, SESRelation
from .relative import (ExactFunctorSpec, RelTriple, TripleDiagonalRelation, TripleMorphism,
                       TripleSESRelation, WeakEquivRelation, base_change)

KINDS = ("complex", "binary", "dses", "multicomplex", "triple", "multi_ses", "multi_diagonal",
         "triple_ses", "triple_diagonal", "weak_equivalence")


def _require(payload: dict, key: str):
    try:
        return payload[key]
    except (KeyError, TypeError):
        raise ParseError(f"missing field {key!r}") from None


def _int(x, what: str) -> int:
    if isinstance(x, bool):
        raise ParseError(f"{what} must be an integer")
    try:
        return int(x)
    except (TypeError, ValueError):
        raise ParseError(f"{what} must be an integer, got {x!r}") from None


# matrices

def parse_matrix(ring: Ring, rows: Any, shape: tuple[int, int]) -> Matrix:
    """Parse a row-major array; an empty array takes the expected shape."""
    if not isinstance(rows, list) or any(not isinstance(r, list) for r in rows):
        raise ParseError("a matrix must be a list of rows")
    if not rows or not rows[0]:
        if any(rows):
            raise ParseError("ragged matrix")
        if not rows and shape[0] and shape[1]:
            raise ParseError(f"empty matrix where shape {shape} was expected")
        return Matrix(ring, *shape) if not rows else Matrix(ring, len(rows), 0)
    try:
        return Matrix.parse(ring, rows)
    except BinaryKError as exc:
        raise ParseError(str(exc)) from exc


def dump_matrix(m: Matrix) -> list[list[str]]:
    return m.to_strings()


# graded data

def _degree_map(raw: Any, what: str) -> dict[int, Any]:
    if raw is None:
        return {}
    if not isinstance(raw, dict):
        raise ParseError(f"{what} must be an object keyed by degree")
    return {_int(k, f"{what} degree"): v for k, v in raw.items()}


def _parse_dims(raw: Any) -> dict[int, int]:
    dims = {n: _int(k, f"dimension in degree {n}") for n, k in _degree_map(raw, "degrees").items()}
    if any(k < 0 for k in dims.values()):
        raise ParseError("negative dimension")
    return dims


def _parse_diffs(ring: Ring, dims: dict[int, int], raw: Any) -> dict[int, Matrix]:
    return {n: parse_matrix(ring, rows, (dims.get(n - 1, 0), dims.get(n, 0)))
            for n, rows in _degree_map(raw, "d").items()}


def _dump_dims(dims) -> dict[str, int]:
    return {str(n): k for n, k in sorted(dims.items())}


def _dump_diffs(d) -> dict[str, list]:
    return {str(n): dump_matrix(m) for n, m in sorted(d.items())}


def _ring_of(payload: dict, ring: Ring | None) -> Ring:
    if "ring" in payload:
        return ring_from_descriptor(payload["ring"])
    if ring is None:
        raise ParseError("missing ring descriptor")
    return ring


def parse_complex(payload: dict, ring: Ring | None = None) -> ChainComplex:
    ring = _ring_of(payload, ring)
    dims = _parse_dims(payload.get("degrees"))
    return ChainComplex(ring, dims, _parse_diffs(ring, dims, payload.get("d")))


def dump_complex(c: ChainComplex, with_ring: bool = True) -> dict:
    out: dict[str, Any] = {"kind": "complex"}
    if with_ring:
        out["ring"] = c.ring.descriptor()
    out["degrees"] = _dump_dims(c.dims)
    out["d"] = _dump_diffs(c.d)
    return out


def parse_binary(payload: dict, ring: Ring | None = None) -> BinaryComplex:
    ring = _ring_of(payload, ring)
    dims = _parse_dims(payload.get("degrees"))
    rows = []
    for row in ("top", "bot"):
        part = payload.get(row) or {}
        if not isinstance(part, dict):
            raise ParseError(f"{row} must be an object with a 'd' field")
        extra = set(part) - {"d"}
        if extra:
            raise ParseError(f"unexpected fields in {row}: {sorted(extra)}")
        rows.append(_parse_diffs(ring, dims, part.get("d")))
    return BinaryComplex(ring, dims, rows[0], rows[1])


def dump_binary(b: BinaryComplex, with_ring: bool = True) -> dict:
    out: dict[str, Any] = {"kind": "binary"}
    if with_ring:
        out["ring"] = b.ring.descriptor()
    out["degrees"] = _dump_dims(b.dims)
    out["top"] = {"d": _dump_diffs(b.top_d)}
    out["bot"] = {"d": _dump_diffs(b.bot_d)}
    return out


def parse_chain_map(raw: Any, source, target) -> ChainMap:
    """Components keyed by degree; missing degrees are zero."""
    comps = {n: parse_matrix(source.ring, rows, (target.dim(n), source.dim(n)))
             for n, rows in _degree_map(raw, "map").items()}
    return ChainMap(source, target, comps)


def dump_chain_map(f: ChainMap) -> dict[str, list]:
    return _dump_diffs(f.comps)


# Nenashev double short exact sequences

def parse_dses(payload: dict, ring: Ring | None = None) -> NenashevDSES:
    ring = _ring_of(payload, ring)
    a, b, c = (_int(_require(payload, k), k) for k in ("A", "B", "C"))
    shapes = {"i": (b, a), "j": (b, a), "p": (c, b), "q": (c, b)}
    maps = {k: parse_matrix(ring, _require(payload, k), s) for k, s in shapes.items()}
    return NenashevDSES(ring, a, b, c, maps["i"], maps["j"], maps["p"], maps["q"])


def dump_dses(n: NenashevDSES) -> dict:
    return {"kind": "dses", "ring": n.ring.descriptor(), "A": n.a, "B": n.b, "C": n.c,
            "i": dump_matrix(n.i), "j": dump_matrix(n.j), "p": dump_matrix(n.p), "q": dump_matrix(n.q)}


# multicomplexes

def _point(raw: Any, n: int | None = None) -> tuple[int, ...]:
    if not isinstance(raw, list) or not raw:
        raise ParseError(f"bad lattice point {raw!r}")
    pt = tuple(_int(x, "coordinate") for x in raw)
    if n is not None and len(pt) != n:
        raise ParseError(f"point {list(pt)} is not in Z^{n}")
    return pt


def parse_multicomplex(payload: dict, ring: Ring | None = None) -> tuple[MultiComplex, list[str]]:
    """Returns the object and its declared signature (defaulting to its shape)."""
    ring = _ring_of(payload, ring)
    support = _require(payload, "support")
    if not isinstance(support, list):
        raise ParseError("support must be a list of {pt, dim}")
    dims: dict[tuple[int, ...], int] = {}
    n = None
    for entry in support:
        pt = _point(_require(entry, "pt"), n)
        n = len(pt)
        dims[pt] = _int(_require(entry, "dim"), "dim")
    axes_raw = _require(payload, "axes")
    if not isinstance(axes_raw, list) or not axes_raw:
        raise ParseError("axes must be a non-empty list")
    n = n or len(axes_raw)
    axes = []
    for i, ax in enumerate(axes_raw):
        if not isinstance(ax, dict):
            raise ParseError(f"axis {i} must be an object")
        names = ("top", "bot") if "top" in ax or "bot" in ax else ("d",)
        fams = []
        for name in names:
            fam = {}
            for entry in ax.get(name) or []:
                pt = _point(_require(entry, "pt"), n)
                tgt = pt[:i] + (pt[i] - 1,) + pt[i + 1:]
                fam[pt] = parse_matrix(ring, _require(entry, "d"), (dims.get(tgt, 0), dims.get(pt, 0)))
            fams.append(fam)
        axes.append(fams)
    x = MultiComplex(ring, n, dims, axes)
    sig = payload.get("signature")
    if sig is None:
        sig = list(x.signature())
    if not isinstance(sig, list) or any(s not in (BQ, CQ) for s in sig):
        raise ParseError(f"bad signature {sig!r}")
    return x, sig


def dump_multicomplex(x: MultiComplex, sig=None, with_ring: bool = True) -> dict:
    out: dict[str, Any] = {"kind": "multicomplex"}
    if with_ring:
        out["ring"] = x.ring.descriptor()
    out["signature"] = list(sig or x.signature())
    out["support"] = [{"pt": list(p), "dim": k} for p, k in x.dims.items()]
    axes = []
    for i in range(x.n):
        names = ("top", "bot") if x.is_binary(i) else ("d",)
        axes.append({name: [{"pt": list(p), "d": dump_matrix(m)} for p, m in sorted(fam.items())]
                     for name, fam in zip(names, x.axes[i])})
    out["axes"] = axes
    return out


def _parse_point_maps(raw: Any, src: MultiComplex, tgt: MultiComplex) -> dict:
    if not isinstance(raw, list):
        raise ParseError("point maps must be a list of {pt, m}")
    out = {}
    for entry in raw:
        pt = _point(_require(entry, "pt"), src.n)
        out[pt] = parse_matrix(src.ring, _require(entry, "m"), (tgt.dim(pt), src.dim(pt)))
    return out


def _dump_point_maps(maps) -> list:
    return [{"pt": list(p), "m": dump_matrix(m)} for p, m in sorted(maps.items()) if m.rows and m.cols]


# functors and triples

def parse_functor(payload: Any) -> ExactFunctorSpec:
    if not isinstance(payload, dict):
        raise ParseError("functor descriptor must be an object")
    kind = payload.get("functor", "base_change")
    source = ring_from_descriptor(_require(payload, "source"))
    target = ring_from_descriptor(payload.get("target", payload["source"]))
    try:
        return ExactFunctorSpec(source, target, kind)
    except BinaryKError as exc:
        raise ParseError(str(exc)) from exc


def parse_triple(payload: dict, f: ExactFunctorSpec | None = None) -> tuple[RelTriple, ExactFunctorSpec]:
    if "functor" in payload:
        f = parse_functor(payload["functor"])
    if f is None:
        raise ParseError("triple needs a functor descriptor")
    mp = parse_complex(_require(payload, "m_plus"), f.source)
    mm = parse_complex(_require(payload, "m_minus"), f.source)
    n = parse_binary(_require(payload, "n"), f.target)
    fmp, fmm = base_change(mp, f), base_change(mm, f)
    up = parse_chain_map(payload.get("u_plus"), fmp, top(n))
    um = parse_chain_map(payload.get("u_minus"), fmm, bot(n))
    return RelTriple(mp, mm, n, up, um), f


def dump_triple(t: RelTriple, f: ExactFunctorSpec, with_functor: bool = True) -> dict:
    out: dict[str, Any] = {"kind": "triple"}
    if with_functor:
        out["functor"] = f.descriptor()
    out["m_plus"] = dump_complex(t.m_plus, with_ring=False)
    out["m_minus"] = dump_complex(t.m_minus, with_ring=False)
    out["n"] = dump_binary(t.n, with_ring=False)
    out["u_plus"] = dump_chain_map(t.u_plus)
    out["u_minus"] = dump_chain_map(t.u_minus)
    return out


def _parse_morphism(raw: dict, s: RelTriple, t: RelTriple, f: ExactFunctorSpec) -> TripleMorphism:
    return TripleMorphism(s, t,
                          parse_chain_map(raw.get("phi_plus"), s.m_plus, t.m_plus),
                          parse_chain_map(raw.get("phi_minus"), s.m_minus, t.m_minus),
                          parse_chain_map(raw.get("psi"), s.n, t.n))


def _dump_morphism(m: TripleMorphism) -> dict:
    return {"phi_plus": dump_chain_map(m.phi_plus), "phi_minus": dump_chain_map(m.phi_minus),
            "psi": dump_chain_map(m.psi)}


# relations

def parse_relation(payload: dict):
    kind = payload.get("kind")
    if kind == "multi_diagonal":
        x, sig = parse_multicomplex(_require(payload, "object"), _payload_ring(payload))
        return DiagonalRelation(x, _int(_require(payload, "axis"), "axis")), sig
    if kind == "multi_ses":
        ring = _payload_ring(payload)
        (l, sig), (m, _), (r, _) = (parse_multicomplex(_require(payload, k), ring)
                                    for k in ("left", "middle", "right"))
        mono = _parse_point_maps(_require(payload, "mono"), l, m)
        epi = _parse_point_maps(_require(payload, "epi"), m, r)
        return SESRelation(l, m, r, mono, epi), sig
    f = parse_functor(_require(payload, "functor"))
    if kind == "triple_diagonal":
        t, _ = parse_triple(_require(payload, "triple"), f)
        return TripleDiagonalRelation(t, f), None
    if kind == "weak_equivalence":
        s, _ = parse_triple(_require(payload, "source"), f)
        t, _ = parse_triple(_require(payload, "target"), f)
        return WeakEquivRelation(_parse_morphism(_require(payload, "morphism"), s, t, f), f), None
    if kind == "triple_ses":
        l, m, r = (parse_triple(_require(payload, k), f)[0] for k in ("left", "middle", "right"))
        mono = _parse_morphism(_require(payload, "mono"), l, m, f)
        epi = _parse_morphism(_require(payload, "epi"), m, r, f)
        return TripleSESRelation(l, m, r, mono, epi, f), None
    raise ParseError(f"unknown relation kind {kind!r}")


def _payload_ring(payload: dict) -> Ring | None:
    return ring_from_descriptor(payload["ring"]) if "ring" in payload else None


def dump_relation(r, sig=None) -> dict:
    if isinstance(r, DiagonalRelation):
        return {"kind": "multi_diagonal", "axis": r.axis, "object": dump_multicomplex(r.obj, sig)}
    if isinstance(r, SESRelation):
        return {"kind": "multi_ses", "ring": r.middle.ring.descriptor(),
                "left": dump_multicomplex(r.left, sig, False), "middle": dump_multicomplex(r.middle, sig, False),
                "right": dump_multicomplex(r.right, sig, False),
                "mono": _dump_point_maps(r.mono), "epi": _dump_point_maps(r.epi)}
    if isinstance(r, TripleDiagonalRelation):
        return {"kind": "triple_diagonal", "functor": r.functor.descriptor(),
                "triple": dump_triple(r.triple, r.functor, False)}
    if isinstance(r, WeakEquivRelation):
        m = r.morphism
        return {"kind": "weak_equivalence", "functor": r.functor.descriptor(),
                "source": dump_triple(m.source, r.functor, False), "target": dump_triple(m.target, r.functor, False),
                "morphism": _dump_morphism(m)}
    if isinstance(r, TripleSESRelation):
        f = r.functor
        return {"kind": "triple_ses", "functor": f.descriptor(),
                "left": dump_triple(r.left, f, False), "middle": dump_triple(r.middle, f, False),
                "right": dump_triple(r.right, f, False),
                "mono": _dump_morphism(r.mono), "epi": _dump_morphism(r.epi)}
    raise TypeError(f"cannot serialize {type(r).__name__}")


# dispatch

def infer_kind(payload: Any) -> str:
    if not isinstance(payload, dict):
        raise ParseError("payload must be a JSON object")
    kind = payload.get("kind")
    if kind is not None:
        if kind not in KINDS:
            raise ParseError(f"unknown payload kind {kind!r}")
        return kind
    if "functor" in payload:
        return "triple"
    if "A" in payload:
        return "dses"
    if "support" in payload:
        return "multicomplex"
    if "top" in payload or "bot" in payload:
        return "binary"
    if "degrees" in payload:
        return "complex"
    raise ParseError("cannot tell what kind of object this payload describes")


def load(payload: Any):
    """Parse any payload; returns ``(kind, value)``.

    The value is a ChainComplex, BinaryComplex, NenashevDSES, ``(MultiComplex,
    signature)``, ``(RelTriple, functor)`` or ``(relation, signature)``.
    """
    kind = infer_kind(payload)
    try:
        if kind == "complex":
            return kind, parse_complex(payload)
        if kind == "binary":
            return kind, parse_binary(payload)
        if kind == "dses":
            return kind, parse_dses(payload)
        if kind == "multicomplex":
            return kind, parse_multicomplex(payload)
        if kind == "triple":
            return kind, parse_triple(payload)
        return kind, parse_relation(payload)
    except ParseError:
        raise
    except BinaryKError as exc:
        raise ParseError(str(exc)) from exc
    except (AttributeError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed {kind} payload: {exc}") from exc


def read_json(path) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from exc
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror}") from exc


def canonical(payload: Any) -> str:
    """Stable serialization used for digests."""
    return json.dumps(payload, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
