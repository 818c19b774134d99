"""The involutive FL_e-chain built over a validated bunch.

Carrier points are triples (layer, group element, dotted flag); dotted points
exist only on class-I layers for elements of the designated subgroup and sit
immediately below their undotted originals.  Order, product, residual
complement, and residuum are all decided from the bunch data:

* order: push both points up to the higher layer; a strict group comparison
  decides, and ties are broken by layer position and dottedness;
* product: multiply the lifted group parts in the higher layer's group; the
  result is dotted when the higher operand is dotted across distinct layers,
  or, within one class-I layer, when the product lands in the subgroup and
  the operands are not both undotted subgroup members;
* complement: invert the group part, then dot (class-I subgroup members),
  take the lower cover (class-J), or leave as is;
* residuum: x -> y = not(x * not(y)).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import islice
from typing import Iterator, NamedTuple

from . import ogroup as og
from .bunch import Bunch, BunchType, bunch_type, structural_problems
from .errors import (CoverMissing, LayerOrderError, ParseError, TypeMismatch,
                     UnknownLayer)

LT, EQ, GT = og.LT, og.EQ, og.GT


class ChainElement(NamedTuple):
    layer: str
    g: og.GElem
    dotted: bool = False


class Chain:
    """Decidable chain over a validated bunch; immutable and pure."""

    def __init__(self, bunch: Bunch):
        problems = structural_problems(bunch)
        if problems:
            raise TypeMismatch(f"bunch is structurally broken: {problems[0]}")
        self.bunch = bunch
        self._idx = {u: i for i, u in enumerate(bunch.skeleton)}
        self._cls = dict(bunch.partition)
        self._group = dict(bunch.groups)
        self._unit = {u: og.g_unit(g) for u, g in bunch.groups.items()}
        self._cmp = {u: og.cmp_fn(g) for u, g in bunch.groups.items()}
        self._op = {u: og.op_fn(g) for u, g in bunch.groups.items()}
        self._inv = {u: og.inv_fn(g) for u, g in bunch.groups.items()}
        self._member = {u: og.member_fn(s) for u, s in bunch.subgroups.items()}
        self._tr: dict[tuple[str, str], callable] = {}
        sk = bunch.skeleton
        for i, u in enumerate(sk):
            self._tr[(u, u)] = lambda x: x
            fns: list = []
            for j in range(i + 1, len(sk)):
                fns = fns + [og.hom_fn(bunch.steps[(sk[j - 1], sk[j])])]
                self._tr[(u, sk[j])] = _fold(list(fns))

    # -- structure ---------------------------------------------------------

    def type(self) -> BunchType:
        return bunch_type(self.bunch)

    @property
    def is_finite(self) -> bool:
        return all(og.group_is_trivial(g) for g in self._group.values())

    def check_element(self, x: ChainElement) -> None:
        """Raise unless ``x`` is a carrier point of this chain."""
        if x.layer not in self._idx:
            raise UnknownLayer(f"layer {x.layer!r} not in skeleton")
        og.g_check(self._group[x.layer], x.g)
        if x.dotted:
            if self._cls[x.layer] != "I":
                raise TypeMismatch(f"dotted element on non-class-I layer {x.layer!r}")
            if not self._member[x.layer](x.g):
                raise TypeMismatch("dotted element outside the designated subgroup")

    def zeta(self, u: str, v: str, x: ChainElement) -> og.GElem:
        """Lift ``x`` from layer ``u`` into the group of layer ``v`` (the dot
        is discarded before the transition is applied)."""
        if x.layer != u:
            raise TypeMismatch(f"element lives on layer {x.layer!r}, not {u!r}")
        iu, iv = self._layer_index(u), self._layer_index(v)
        if iu > iv:
            raise LayerOrderError(f"zeta requested downward: {u!r} above {v!r}")
        return self._tr[(u, v)](x.g)

    def _layer_index(self, u: str) -> int:
        try:
            return self._idx[u]
        except KeyError:
            raise UnknownLayer(f"layer {u!r} not in skeleton") from None

    # -- order and algebra ---------------------------------------------------

    def compare(self, x: ChainElement, y: ChainElement) -> int:
        if x == y:
            return EQ
        u, v = x.layer, y.layer
        iu, iv = self._idx[u], self._idx[v]
        if iu == iv:
            c = self._cmp[u](x.g, y.g)
            if c:
                return c
            return LT if x.dotted else GT
        if iu < iv:
            c = self._cmp[v](self._tr[(u, v)](x.g), y.g)
            if c:
                return c
            return GT if y.dotted else LT
        c = self._cmp[u](x.g, self._tr[(v, u)](y.g))
        if c:
            return c
        return LT if x.dotted else GT

    def mul(self, x: ChainElement, y: ChainElement) -> ChainElement:
        u, v = x.layer, y.layer
        if u == v:
            p = self._op[u](x.g, y.g)
            if self._cls[u] == "I":
                mem = self._member[u]
                if mem(p) and not (not x.dotted and not y.dotted
                                   and mem(x.g) and mem(y.g)):
                    return ChainElement(u, p, True)
            return ChainElement(u, p, False)
        if self._idx[u] < self._idx[v]:
            lo, hi = x, y
        else:
            lo, hi = y, x
        w = hi.layer
        p = self._op[w](self._tr[(lo.layer, w)](lo.g), hi.g)
        return ChainElement(w, p, hi.dotted)

    def negate(self, x: ChainElement) -> ChainElement:
        u = x.layer
        inv = self._inv[u](x.g)
        cls = self._cls[u]
        if cls == "I":
            if not x.dotted and self._member[u](x.g):
                return ChainElement(u, inv, True)
            return ChainElement(u, inv, False)
        if cls == "J":
            down = og.g_cover_down(self._group[u], inv)
            if down is None:
                raise CoverMissing(f"class-J layer {u!r} has no covers")
            return ChainElement(u, down, False)
        return ChainElement(u, inv, False)

    def residuum(self, x: ChainElement, y: ChainElement) -> ChainElement:
        return self.negate(self.mul(x, self.negate(y)))

    def constants(self) -> tuple[ChainElement, ChainElement]:
        t = ChainElement(self.bunch.least(), self._unit[self.bunch.least()], False)
        return t, self.negate(t)

    def bounds(self) -> tuple[ChainElement, ChainElement] | None:
        """(top, bottom) when the chain is bounded, else None.

        A one-element chain is bounded; otherwise boundedness needs the
        greatest layer to be class I with a trivial group, making its unit the
        top and the dotted unit the bottom.
        """
        sk = self.bunch.skeleton
        if (len(sk) == 1 and self._cls[sk[0]] == "O"
                and og.group_is_trivial(self._group[sk[0]])):
            t = ChainElement(sk[0], self._unit[sk[0]], False)
            return t, t
        top_layer = sk[-1]
        if self._cls[top_layer] == "I" and og.group_is_trivial(self._group[top_layer]):
            u = self._unit[top_layer]
            return ChainElement(top_layer, u, False), ChainElement(top_layer, u, True)
        return None

    def is_bounded(self) -> bool:
        return self.bounds() is not None

    # -- enumeration ---------------------------------------------------------

    def _layer_blocks(self, u: str) -> Iterator[list[ChainElement]]:
        dotted_too = self._cls[u] == "I"
        member = self._member.get(u)
        for g in og.g_enumerate(self._group[u]):
            block = [ChainElement(u, g, False)]
            if dotted_too and member(g):
                block.append(ChainElement(u, g, True))
            yield block

    def enumerate_elements(self) -> Iterator[ChainElement]:
        """Round-robin over the layer streams; a dotted companion is emitted
        immediately after its undotted original.  Every point appears once."""
        streams = [self._layer_blocks(u) for u in self.bunch.skeleton]
        while streams:
            alive = []
            for s in streams:
                block = next(s, None)
                if block is None:
                    continue
                alive.append(s)
                yield from block
            streams = alive


def _fold(fns: list) -> callable:
    if len(fns) == 1:
        return fns[0]
    def apply(x, fns=tuple(fns)):
        for f in fns:
            x = f(x)
        return x
    return apply


# ---------------------------------------------------------------------------
# element literals: `layer:g` and `layer:d:g`


def format_element(chain: Chain, x: ChainElement) -> str:
    chain.check_element(x)
    g = og.format_gelem(chain.bunch.groups[x.layer], x.g)
    return f"{x.layer}:d:{g}" if x.dotted else f"{x.layer}:{g}"


def parse_element(chain: Chain, text: str) -> ChainElement:
    layer, sep, rest = text.strip().partition(":")
    if not sep:
        raise ParseError(f"element literal needs 'layer:value', got {text!r}")
    if layer not in chain.bunch.partition:
        raise UnknownLayer(f"layer {layer!r} not in skeleton")
    dotted = False
    if rest.startswith("d:"):
        dotted = True
        rest = rest[2:]
    g = og.parse_gelem(chain.bunch.groups[layer], rest)
    x = ChainElement(layer, g, dotted)
    chain.check_element(x)
    return x


# ---------------------------------------------------------------------------
# law checking


@dataclass
class LawResult:
    law: str
    checked: int
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


@dataclass
class LawReport:
    results: list[LawResult]
    pool_size: int

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)

    def render(self) -> str:
        lines = [f"{'ok' if r.ok else 'FAIL':4s} {r.law:14s} {r.checked} samples"
                 + (f" -- {r.failures[0]}" if r.failures else "")
                 for r in self.results]
        return "\n".join(lines)


def check_chain_laws(chain: Chain, samples: int = 10_000, pool_size: int = 48,
                     seed: int = 0) -> LawReport:
    """Sample-check the chain axioms on random triples from an enumerated pool.

    Covers order totality/transitivity, commutativity, associativity, the
    unit law, monotonicity, adjointness, involution, and the odd/even shape
    of the falsum.  Finite chains get their whole carrier as the pool.
    """
    pool = list(islice(chain.enumerate_elements(), pool_size))
    n = len(pool)
    rng = random.Random(seed)
    triples = [(rng.randrange(n), rng.randrange(n), rng.randrange(n))
               for _ in range(samples)]
    t, f = chain.constants()
    cmp = chain.compare
    raw_mul = chain.mul
    mul_memo: dict = {}

    def mul(a, b):
        key = (a, b)
        r = mul_memo.get(key)
        if r is None:
            r = raw_mul(a, b)
            mul_memo[key] = r
            mul_memo[(b, a)] = r
        return r

    neg_memo: dict = {}

    def neg(a):
        r = neg_memo.get(a)
        if r is None:
            r = chain.negate(a)
            neg_memo[a] = r
        return r

    results = []

    res = LawResult("totality", len(triples))
    for i, j, k in triples:
        x, y, z = pool[i], pool[j], pool[k]
        if cmp(x, y) != -cmp(y, x):
            res.failures.append(f"asymmetry broken at {x}, {y}")
        elif (x == y) != (cmp(x, y) == EQ):
            res.failures.append(f"equality vs EQ mismatch at {x}, {y}")
        elif cmp(x, y) <= 0 and cmp(y, z) <= 0 and cmp(x, z) > 0:
            res.failures.append(f"transitivity broken at {x}, {y}, {z}")
        if res.failures:
            break
    results.append(res)

    res = LawResult("commutativity", len(triples))
    for i, j, _ in triples:
        x, y = pool[i], pool[j]
        if raw_mul(x, y) != raw_mul(y, x):
            res.failures.append(f"{x} * {y}")
            break
    results.append(res)

    res = LawResult("associativity", len(triples))
    for i, j, k in triples:
        x, y, z = pool[i], pool[j], pool[k]
        if mul(mul(x, y), z) != mul(x, mul(y, z)):
            res.failures.append(f"{x}, {y}, {z}")
            break
    results.append(res)

    res = LawResult("unit", n)
    for x in pool:
        if raw_mul(t, x) != x or raw_mul(x, t) != x:
            res.failures.append(f"{x}")
            break
    results.append(res)

    res = LawResult("monotonicity", len(triples))
    for i, j, k in triples:
        x, y, z = pool[i], pool[j], pool[k]
        if cmp(x, y) <= 0 and cmp(mul(x, z), mul(y, z)) > 0:
            res.failures.append(f"{x} <= {y} but products reversed with {z}")
            break
    results.append(res)

    res = LawResult("adjointness", len(triples))
    for i, j, k in triples:
        x, v, z = pool[i], pool[j], pool[k]
        r = neg(mul(x, neg(z)))
        if (cmp(mul(x, v), z) <= 0) != (cmp(v, r) <= 0):
            res.failures.append(f"x={x}, v={v}, z={z}")
            break
    results.append(res)

    res = LawResult("involution", n)
    for x in pool:
        if neg(neg(x)) != x:
            res.failures.append(f"{x}")
            break
    results.append(res)

    res = LawResult("falsum-shape", n)
    kind = chain.type()
    if kind == BunchType.ODD:
        if f != t:
            res.failures.append("odd chain must fix the unit under complement")
    else:
        if cmp(f, t) != LT:
            res.failures.append("even chain needs falsum strictly below unit")
        else:
            for x in pool:
                if cmp(f, x) == LT and cmp(x, t) == LT:
                    res.failures.append(f"{x} lies strictly between falsum and unit")
                    break
    results.append(res)

    return LawReport(results, n)
