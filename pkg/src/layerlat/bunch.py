"""Bunches of layer groups: a finite totally ordered skeleton of layers, one
abelian o-group per layer, designated subgroups on class-I layers, and
order-hom transitions stored on covering pairs and composed on demand.

Layer classes are "O" (only ever the least layer), "J" (discrete layers whose
transitions collapse the unit's lower cover), and "I" (layers carrying a
subgroup whose elements get dotted companions in the reconstructed chain).
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from itertools import islice

from . import ogroup as og
from .errors import LayerOrderError, ParseError, UnknownLayer

LAYER_CLASSES = ("O", "J", "I")


class BunchType(enum.Enum):
    ODD = "Odd"
    EVEN_NON_IDEM_F = "EvenNonIdemF"
    EVEN_IDEM_F = "EvenIdemF"


@dataclass(frozen=True, eq=False)
class Bunch:
    """Immutable bunch; maps are plain dicts treated as frozen after build.

    ``skeleton`` is the ascending list of layer labels (list order *is* the
    skeleton order); ``steps`` holds one hom per consecutive pair.
    """

    skeleton: tuple[str, ...]
    partition: dict[str, str]
    groups: dict[str, og.OGroup]
    subgroups: dict[str, og.Subgroup]
    steps: dict[tuple[str, str], og.Hom]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Bunch):
            return NotImplemented
        return (self.skeleton == other.skeleton and self.partition == other.partition
                and self.groups == other.groups and self.subgroups == other.subgroups
                and self.steps == other.steps)

    def least(self) -> str:
        return self.skeleton[0]

    def index(self, layer: str) -> int:
        try:
            return self.skeleton.index(layer)
        except ValueError:
            raise UnknownLayer(f"layer {layer!r} not in skeleton {list(self.skeleton)}") from None

    def class_of(self, layer: str) -> str:
        self.index(layer)
        return self.partition[layer]

    def group_of(self, layer: str) -> og.OGroup:
        self.index(layer)
        return self.groups[layer]

    def consecutive_pairs(self) -> list[tuple[str, str]]:
        return list(zip(self.skeleton, self.skeleton[1:]))

    def kappa_j_free(self) -> bool:
        return all(c != "J" for c in self.partition.values())


def bunch_type(b: Bunch) -> BunchType:
    cls = b.partition[b.least()]
    if cls == "O":
        return BunchType.ODD
    if cls == "J":
        return BunchType.EVEN_NON_IDEM_F
    return BunchType.EVEN_IDEM_F


def transition(b: Bunch, u: str, v: str) -> og.Hom:
    """The composed transition hom from layer ``u`` up to layer ``v``."""
    iu, iv = b.index(u), b.index(v)
    if iu > iv:
        raise LayerOrderError(f"transition requested downward: {u!r} above {v!r}")
    if iu == iv:
        return og.identity(b.groups[u])
    hom = b.steps[(b.skeleton[iu], b.skeleton[iu + 1])]
    for i in range(iu + 1, iv):
        hom = og.hom_compose(b.steps[(b.skeleton[i], b.skeleton[i + 1])], hom)
    return hom


# ---------------------------------------------------------------------------
# validation


@dataclass
class CheckResult:
    clause: str
    subject: str
    ok: bool
    method: str  # structural | exact | sampled
    detail: str = ""


@dataclass
class ValidationReport:
    checks: list[CheckResult] = field(default_factory=list)
    samples: int = 0

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def violations(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.ok]

    def render(self) -> str:
        lines = []
        for c in self.checks:
            state = "ok" if c.ok else "VIOLATION"
            detail = f" -- {c.detail}" if c.detail else ""
            lines.append(f"{state:9s} {c.clause:12s} {c.subject}{detail} [{c.method}]")
        lines.append(f"{'ok' if self.ok else 'FAIL'} ({len(self.checks)} checks, {self.samples} samples per sampled clause)")
        return "\n".join(lines)


def structural_problems(b: Bunch) -> list[str]:
    """Structural-completeness defects that make the bunch unusable."""
    problems = []
    if not b.skeleton:
        return ["skeleton is empty"]
    if len(set(b.skeleton)) != len(b.skeleton):
        problems.append("skeleton labels are not distinct")
    for u in b.skeleton:
        if not u or ":" in u:
            problems.append(f"layer label {u!r} is empty or contains ':'")
    layer_set = set(b.skeleton)
    if set(b.partition) != layer_set:
        problems.append("partition does not cover exactly the skeleton")
    for u, c in b.partition.items():
        if c not in LAYER_CLASSES:
            problems.append(f"partition[{u!r}] = {c!r} is not one of {LAYER_CLASSES}")
    if set(b.groups) != layer_set:
        problems.append("groups do not cover exactly the skeleton")
    kappa_i = {u for u in b.skeleton if b.partition.get(u) == "I"}
    if set(b.subgroups) != kappa_i:
        problems.append("subgroups must be given for exactly the class-I layers")
    for u, sub in b.subgroups.items():
        if u in b.groups and sub.ambient != b.groups[u]:
            problems.append(f"subgroup of {u!r} has wrong ambient group")
    expected_pairs = set(zip(b.skeleton, b.skeleton[1:]))
    if set(b.steps) != expected_pairs:
        problems.append("steps must be given for exactly the consecutive layer pairs")
    for (u, v), hom in b.steps.items():
        if u in b.groups and hom.source != b.groups[u]:
            problems.append(f"step {u!r}->{v!r} has wrong source group")
        if v in b.groups and hom.target != b.groups[v]:
            problems.append(f"step {u!r}->{v!r} has wrong target group")
    return problems


def validate(b: Bunch, samples: int = 100) -> ValidationReport:
    """Check every bunch law; returns a report and never raises.

    Structural shortcuts are used where a clause holds by construction (a
    constant-unit transition lands in any subgroup; a whole subgroup absorbs
    anything); otherwise the first ``samples`` enumerated elements of the
    relevant source group are pushed through the transitions.
    """
    report = ValidationReport(samples=samples)
    problems = structural_problems(b)
    for p in problems:
        report.checks.append(CheckResult("structure", "bunch", False, "structural", p))
    if problems:
        return report
    report.checks.append(CheckResult("structure", "bunch", True, "structural"))

    least = b.least()
    for u in b.skeleton:
        if b.partition[u] == "O" and u != least:
            report.checks.append(CheckResult(
                "G1", u, False, "structural", "class O is reserved for the least layer"))
    if not any(c.clause == "G1" and not c.ok for c in report.checks):
        report.checks.append(CheckResult("G1", least, True, "structural"))

    # identity transitions hold by definition of `transition`
    report.checks.append(CheckResult("D1", "all layers", True, "structural"))

    for u in b.skeleton:
        if b.partition[u] != "J":
            continue
        group = b.groups[u]
        if not og.is_discrete(group):
            report.checks.append(CheckResult(
                "G2", u, False, "structural",
                f"class-J layer group {group!r} is not discrete"))
            continue
        report.checks.append(CheckResult("G2", f"{u} discrete", True, "structural"))
        down = og.g_cover_down(group, og.g_unit(group))
        iu = b.index(u)
        for v in b.skeleton[iu + 1:]:
            fn = og.hom_fn(transition(b, u, v))
            ok = fn(down) == og.g_unit(b.groups[v])
            report.checks.append(CheckResult(
                "G2", f"{u}->{v}", ok, "exact",
                "" if ok else "transition does not collapse the unit's lower cover"))

    for v in b.skeleton:
        if b.partition[v] != "I":
            continue
        sub = b.subgroups[v]
        member = og.member_fn(sub)
        iv = b.index(v)
        for u in b.skeleton[:iv]:
            hom = transition(b, u, v)
            if og.subgroup_is_whole(sub) or og.hom_is_constant_unit(hom):
                report.checks.append(CheckResult("G3", f"{u}->{v}", True, "structural"))
                continue
            fn = og.hom_fn(hom)
            bad = None
            for x in islice(og.g_enumerate(b.groups[u]), samples):
                if not member(fn(x)):
                    bad = x
                    break
            report.checks.append(CheckResult(
                "G3", f"{u}->{v}", bad is None, "sampled",
                "" if bad is None else f"{og.format_gelem(b.groups[u], bad)} maps outside the subgroup"))

    n = len(b.skeleton)
    for i in range(n):
        for j in range(i, n):
            for k in range(j, n):
                u, v, w = b.skeleton[i], b.skeleton[j], b.skeleton[k]
                direct = og.hom_fn(transition(b, u, w))
                first = og.hom_fn(transition(b, u, v))
                second = og.hom_fn(transition(b, v, w))
                bad = None
                for x in islice(og.g_enumerate(b.groups[u]), samples):
                    if direct(x) != second(first(x)):
                        bad = x
                        break
                report.checks.append(CheckResult(
                    "D2", f"{u}->{v}->{w}", bad is None, "sampled",
                    "" if bad is None else f"composition disagrees at {og.format_gelem(b.groups[u], bad)}"))
    return report


# ---------------------------------------------------------------------------
# serialization


def serialize_bunch(b: Bunch) -> str:
    doc = {
        "skeleton": list(b.skeleton),
        "partition": {u: b.partition[u] for u in b.skeleton},
        "groups": {u: og.group_to_json(b.groups[u]) for u in b.skeleton},
        "subgroups": {u: og.subgroup_to_json(b.subgroups[u])
                      for u in b.skeleton if u in b.subgroups},
        "steps": {f"{u}->{v}": og.hom_to_json(b.steps[(u, v)])
                  for (u, v) in b.consecutive_pairs()},
    }
    return json.dumps(doc, indent=2)


def bunch_to_json(b: Bunch) -> dict:
    return json.loads(serialize_bunch(b))


def parse_bunch(text: str) -> Bunch:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"line {e.lineno}, column {e.colno}: {e.msg}") from None
    return bunch_from_json(doc)


def bunch_from_json(doc) -> Bunch:
    if not isinstance(doc, dict):
        raise ParseError("bunch document must be an object")
    unknown = set(doc) - {"skeleton", "partition", "groups", "subgroups", "steps"}
    if unknown:
        raise ParseError(f"unknown fields {sorted(unknown)}")
    for key in ("skeleton", "partition", "groups", "steps"):
        if key not in doc:
            raise ParseError(f"missing field {key!r}")
    skeleton = doc["skeleton"]
    if not (isinstance(skeleton, list) and skeleton
            and all(isinstance(u, str) for u in skeleton)):
        raise ParseError("skeleton: must be a nonempty list of layer labels")
    if len(set(skeleton)) != len(skeleton):
        raise ParseError("skeleton: labels must be distinct")
    for u in skeleton:
        if not u or ":" in u:
            raise ParseError(f"skeleton: bad label {u!r}")

    partition = doc["partition"]
    if not isinstance(partition, dict) or set(partition) != set(skeleton):
        raise ParseError("partition: must map exactly the skeleton labels")
    for u, c in partition.items():
        if c not in LAYER_CLASSES:
            raise ParseError(f"partition.{u}: class must be one of {LAYER_CLASSES}, got {c!r}")

    groups_doc = doc["groups"]
    if not isinstance(groups_doc, dict) or set(groups_doc) != set(skeleton):
        raise ParseError("groups: must map exactly the skeleton labels")
    groups = {}
    for u in skeleton:
        try:
            groups[u] = og.group_from_json(groups_doc[u])
        except ParseError as e:
            raise ParseError(f"groups.{u}: {e}") from None

    subgroups_doc = doc.get("subgroups", {})
    if not isinstance(subgroups_doc, dict):
        raise ParseError("subgroups: must be an object")
    kappa_i = {u for u in skeleton if partition[u] == "I"}
    missing = kappa_i - set(subgroups_doc)
    if missing:
        raise ParseError(f"subgroups.{sorted(missing)[0]}: required for class-I layer")
    extra = set(subgroups_doc) - kappa_i
    if extra:
        raise ParseError(f"subgroups.{sorted(extra)[0]}: layer is not class I")
    subgroups = {}
    for u in sorted(kappa_i, key=skeleton.index):
        try:
            subgroups[u] = og.subgroup_from_json(subgroups_doc[u], groups[u])
        except ParseError as e:
            raise ParseError(f"subgroups.{u}: {e}") from None

    steps_doc = doc["steps"]
    if not isinstance(steps_doc, dict):
        raise ParseError("steps: must be an object")
    expected = {f"{u}->{v}": (u, v) for u, v in zip(skeleton, skeleton[1:])}
    if set(steps_doc) != set(expected):
        raise ParseError(f"steps: keys must be exactly {sorted(expected)}")
    steps = {}
    for key, (u, v) in expected.items():
        try:
            steps[(u, v)] = og.hom_from_json(steps_doc[key], groups[u], groups[v])
        except ParseError as e:
            raise ParseError(f"steps.{key}: {e}") from None

    return Bunch(tuple(skeleton), dict(partition), groups, subgroups, steps)
