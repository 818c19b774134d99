"""The layer-group embedding criterion between two chains.

A candidate embedding is given coordinatewise: a skeleton map plus one hom
per source layer; the induced element map carries (u, g, dotted) to
(skeleton_map(u), layer_maps[u](g), dotted).  The checker reports each clause
separately: skeleton order/least/partition preservation, commuting
transition squares, subgroup membership both ways on class-I layers, unit
covers on class-J layers, and a direct order/product/constants check on
sampled elements.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import islice

from . import ogroup as og
from .bunch import Bunch, transition
from .chain import Chain, ChainElement
from .errors import ParseError, TypeMismatch


@dataclass(frozen=True, eq=False)
class EmbeddingSpec:
    skeleton_map: dict[str, str]
    layer_maps: dict[str, og.Hom]


def element_map(spec: EmbeddingSpec, x: ChainElement) -> ChainElement:
    fn = og.hom_fn(spec.layer_maps[x.layer])
    return ChainElement(spec.skeleton_map[x.layer], fn(x.g), x.dotted)


def identity_embedding(src: Bunch) -> EmbeddingSpec:
    """The coordinatewise identity, for targets extending ``src``'s layers."""
    return EmbeddingSpec({u: u for u in src.skeleton},
                         {u: og.identity(src.groups[u]) for u in src.skeleton})


@dataclass
class ClauseResult:
    clause: str
    subject: str
    ok: bool
    method: str  # proved | tested
    detail: str = ""


@dataclass
class EmbeddingReport:
    clauses: list[ClauseResult] = field(default_factory=list)
    samples: int = 0

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.clauses)

    def render(self) -> str:
        lines = []
        for c in self.clauses:
            state = "ok" if c.ok else "FAIL"
            detail = f" -- {c.detail}" if c.detail else ""
            lines.append(f"{state:4s} {c.clause:18s} {c.subject}{detail} [{c.method}]")
        lines.append("embedding ok" if self.ok else "embedding FAILED")
        return "\n".join(lines)


def _typecheck(src: Bunch, dst: Bunch, spec: EmbeddingSpec) -> None:
    for u in src.skeleton:
        if u not in spec.skeleton_map:
            raise TypeMismatch(f"skeleton_map misses layer {u!r}")
        v = spec.skeleton_map[u]
        if v not in dst.partition:
            raise TypeMismatch(f"skeleton_map sends {u!r} to unknown layer {v!r}")
        h = spec.layer_maps.get(u)
        if h is None:
            raise TypeMismatch(f"layer_maps misses layer {u!r}")
        if h.source != src.groups[u] or h.target != dst.groups[v]:
            raise TypeMismatch(f"layer map for {u!r} has wrong source or target group")


def check_embedding(src: Chain, dst: Chain, spec: EmbeddingSpec,
                    samples: int = 64) -> EmbeddingReport:
    """Run every embedding clause; exhaustive on finite sources ("proved"),
    sampled otherwise ("tested")."""
    sb, db = src.bunch, dst.bunch
    _typecheck(sb, db, spec)
    report = EmbeddingReport(samples=samples)
    smap = spec.skeleton_map
    finite = src.is_finite
    method = "proved" if finite else "tested"

    positions = [db.index(smap[u]) for u in sb.skeleton]
    ok = all(positions[i] < positions[i + 1] for i in range(len(positions) - 1))
    report.clauses.append(ClauseResult(
        "skeleton-order", "skeleton", ok, "proved",
        "" if ok else "image positions are not strictly ascending"))
    ok = smap[sb.least()] == db.least()
    report.clauses.append(ClauseResult(
        "least-element", sb.least(), ok, "proved",
        "" if ok else f"least layer maps to {smap[sb.least()]!r}"))
    for u in sb.skeleton:
        ok = sb.partition[u] == db.partition[smap[u]]
        report.clauses.append(ClauseResult(
            "partition", u, ok, "proved",
            "" if ok else f"class {sb.partition[u]} maps onto class {db.partition[smap[u]]}"))

    def layer_pool(u: str) -> list:
        return list(islice(og.g_enumerate(sb.groups[u]), samples))

    for u in sb.skeleton:
        h = spec.layer_maps[u]
        hr = og.hom_check(h, samples)
        fn = og.hom_fn(h)
        cmp_s = og.cmp_fn(sb.groups[u])
        cmp_d = og.cmp_fn(db.groups[smap[u]])
        strict_ok = True
        pool = layer_pool(u)
        for a in pool:
            for c in pool:
                if cmp_s(a, c) < 0 and cmp_d(fn(a), fn(c)) >= 0:
                    strict_ok = False
                    break
            if not strict_ok:
                break
        lm = "proved" if og.group_is_trivial(sb.groups[u]) else "tested"
        report.clauses.append(ClauseResult(
            "layer-group-hom", u, hr.ok and strict_ok, lm,
            "" if hr.ok and strict_ok else (hr.failures + ["not strictly order-preserving"])[0]))

    for i, u in enumerate(sb.skeleton):
        for v in sb.skeleton[i:]:
            if db.index(smap[u]) > db.index(smap[v]):
                report.clauses.append(ClauseResult(
                    "transition-square", f"{u}->{v}", False, "proved",
                    "image layers are not skeleton-ordered"))
                continue
            src_tr = og.hom_fn(transition(sb, u, v))
            dst_tr = og.hom_fn(transition(db, smap[u], smap[v]))
            fu = og.hom_fn(spec.layer_maps[u])
            fv = og.hom_fn(spec.layer_maps[v])
            bad = None
            for a in layer_pool(u):
                if fv(src_tr(a)) != dst_tr(fu(a)):
                    bad = a
                    break
            lm = "proved" if og.group_is_trivial(sb.groups[u]) else "tested"
            report.clauses.append(ClauseResult(
                "transition-square", f"{u}->{v}", bad is None, lm,
                "" if bad is None else f"square does not commute at {bad!r}"))

    for u in sb.skeleton:
        if sb.partition[u] != "I":
            continue
        if db.partition[smap[u]] != "I":
            report.clauses.append(ClauseResult(
                "subgroup-both-ways", u, False, "proved",
                "image layer carries no subgroup"))
            continue
        mem_s = og.member_fn(sb.subgroups[u])
        mem_d = og.member_fn(db.subgroups[smap[u]])
        fn = og.hom_fn(spec.layer_maps[u])
        bad = None
        for a in layer_pool(u):
            if mem_s(a) != mem_d(fn(a)):
                bad = a
                break
        lm = "proved" if og.group_is_trivial(sb.groups[u]) else "tested"
        report.clauses.append(ClauseResult(
            "subgroup-both-ways", u, bad is None, lm,
            "" if bad is None else f"membership not reflected at {bad!r}"))

    for u in sb.skeleton:
        if sb.partition[u] != "J":
            continue
        fn = og.hom_fn(spec.layer_maps[u])
        up_s = og.g_cover_up(sb.groups[u], og.g_unit(sb.groups[u]))
        up_d = og.g_cover_up(db.groups[smap[u]], og.g_unit(db.groups[smap[u]]))
        ok = up_s is not None and fn(up_s) == up_d
        report.clauses.append(ClauseResult(
            "unit-cover", u, ok, "proved",
            "" if ok else f"cover of the unit maps to {fn(up_s)!r}, expected {up_d!r}"))

    pool = list(islice(src.enumerate_elements(), samples))
    images = [element_map(spec, x) for x in pool]
    bad = None
    for i, x in enumerate(pool):
        for j, y in enumerate(pool):
            if src.compare(x, y) != dst.compare(images[i], images[j]):
                bad = (x, y)
                break
        if bad:
            break
    report.clauses.append(ClauseResult(
        "element-order", "carrier", bad is None, method,
        "" if bad is None else f"order not preserved at {bad}"))
    bad = None
    for i, x in enumerate(pool):
        for j, y in enumerate(pool):
            if element_map(spec, src.mul(x, y)) != dst.mul(images[i], images[j]):
                bad = (x, y)
                break
        if bad:
            break
    report.clauses.append(ClauseResult(
        "element-product", "carrier", bad is None, method,
        "" if bad is None else f"product not preserved at {bad}"))
    ts, fs = src.constants()
    td, fd = dst.constants()
    ok = element_map(spec, ts) == td and element_map(spec, fs) == fd
    report.clauses.append(ClauseResult(
        "element-constants", "t, f", ok, "proved",
        "" if ok else "constants not preserved"))
    return report


# ---------------------------------------------------------------------------
# spec files


def serialize_embedding_spec(spec: EmbeddingSpec, src: Bunch) -> str:
    doc = {
        "skeleton_map": {u: spec.skeleton_map[u] for u in src.skeleton},
        "layer_maps": {u: og.hom_to_json(spec.layer_maps[u]) for u in src.skeleton},
    }
    return json.dumps(doc, indent=2)


def parse_embedding_spec(text: str, src: Bunch, dst: Bunch) -> EmbeddingSpec:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"line {e.lineno}, column {e.colno}: {e.msg}") from None
    if not isinstance(doc, dict) or set(doc) != {"skeleton_map", "layer_maps"}:
        raise ParseError("embedding spec needs exactly skeleton_map and layer_maps")
    smap = doc["skeleton_map"]
    lmaps = doc["layer_maps"]
    if not isinstance(smap, dict) or set(smap) != set(src.skeleton):
        raise ParseError("skeleton_map: must map exactly the source skeleton")
    if not isinstance(lmaps, dict) or set(lmaps) != set(src.skeleton):
        raise ParseError("layer_maps: must map exactly the source skeleton")
    layer_maps = {}
    for u in src.skeleton:
        v = smap[u]
        if v not in dst.partition:
            raise ParseError(f"skeleton_map.{u}: unknown target layer {v!r}")
        try:
            layer_maps[u] = og.hom_from_json(lmaps[u], src.groups[u], dst.groups[v])
        except ParseError as e:
            raise ParseError(f"layer_maps.{u}: {e}") from None
    return EmbeddingSpec(dict(smap), layer_maps)
