"""Core data model for weighted and constrained argumentation frameworks.

An attack graph is a finite, ordered set of argument ids plus a set of
directed attack pairs.  A weighted framework (WAF) attaches an initial
weight in [0, 1] to every argument; a constrained framework (CAF) instead
attaches an interval of admissible acceptability degrees, and optionally a
strictly positive modification cost per argument.

Canonical JSON wire format (also used by the CLI and the HTTP service):

    {"arguments": [{"id": "a", "interval": [0.8, 1.0], "cost": 3}, ...],
     "attacks": [["a", "b"], ...]}

``interval`` defaults to [0, 1] and ``cost`` to 1.  An argument entry may
also carry ``weight`` (read only by operations that need a WAF) or
``degree`` (read only by inversion).  Unknown keys are ignored with a
warning.

Argument order is the declaration order in the input document and is
preserved through every vector operation, so matrix indexing and
traversal order stay deterministic.  All values are immutable after
construction and safe to share across threads.
"""

from __future__ import annotations

import json
import warnings
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field

#: Absolute tolerance for interval and degree comparisons.
ABS_TOL = 1e-9

#: Per-argument values in [0, 1], keyed by argument id.
WeightVector = dict[str, float]
DegreeVector = dict[str, float]


class InvalidFrameworkError(ValueError):
    """A document or constructor argument violates the data model."""


@dataclass(frozen=True)
class Interval:
    """Closed sub-interval of [0, 1] of admissible acceptability degrees."""

    lo: float
    hi: float

    def __post_init__(self) -> None:
        lo, hi = float(self.lo), float(self.hi)
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)
        if not (0.0 <= lo <= hi <= 1.0):
            raise InvalidFrameworkError(
                f"interval [{lo}, {hi}] violates 0 <= lo <= hi <= 1"
            )

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def contains(self, x: float, tol: float = ABS_TOL) -> bool:
        return self.lo - tol <= x <= self.hi + tol


FULL_INTERVAL = Interval(0.0, 1.0)


@dataclass(frozen=True)
class AttackGraph:
    """Directed attack graph over named arguments.

    Self-attacks are permitted: the attack relation may be any subset of
    A x A.  Attack pairs must be unique and may only name declared
    arguments.
    """

    arguments: tuple[str, ...]
    attacks: tuple[tuple[str, str], ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "arguments", tuple(self.arguments))
        object.__setattr__(
            self, "attacks", tuple((src, dst) for src, dst in self.attacks)
        )
        declared: set[str] = set()
        for a in self.arguments:
            if not isinstance(a, str) or not a:
                raise InvalidFrameworkError(
                    f"argument id {a!r} must be a non-empty string"
                )
            if a in declared:
                raise InvalidFrameworkError(f"duplicate argument id {a!r}")
            declared.add(a)
        seen_pairs: set[tuple[str, str]] = set()
        for src, dst in self.attacks:
            if src not in declared:
                raise InvalidFrameworkError(
                    f"attack source {src!r} is not a declared argument"
                )
            if dst not in declared:
                raise InvalidFrameworkError(
                    f"attack target {dst!r} is not a declared argument"
                )
            if (src, dst) in seen_pairs:
                raise InvalidFrameworkError(f"duplicate attack ({src!r}, {dst!r})")
            seen_pairs.add((src, dst))
        index = {a: i for i, a in enumerate(self.arguments)}
        by_target: dict[str, list[str]] = {a: [] for a in self.arguments}
        for src, dst in self.attacks:
            by_target[dst].append(src)
        object.__setattr__(self, "_index", index)
        object.__setattr__(
            self,
            "_attackers",
            {
                a: tuple(sorted(srcs, key=index.__getitem__))
                for a, srcs in by_target.items()
            },
        )

    def index_of(self, argument: str) -> int:
        try:
            return self._index[argument]  # type: ignore[attr-defined]
        except KeyError:
            raise InvalidFrameworkError(f"unknown argument {argument!r}") from None


def attackers(graph: AttackGraph, argument: str) -> tuple[str, ...]:
    """Sources of the attacks targeting ``argument``, in declaration order."""
    graph.index_of(argument)
    return graph._attackers[argument]  # type: ignore[attr-defined]


def _validated_values(
    graph: AttackGraph, values: Mapping[str, float], what: str
) -> dict[str, float]:
    out: dict[str, float] = {}
    for a in graph.arguments:
        if a not in values:
            raise InvalidFrameworkError(f"missing {what} for argument {a!r}")
        v = float(values[a])
        if not (-ABS_TOL <= v <= 1.0 + ABS_TOL):
            raise InvalidFrameworkError(
                f"argument {a!r}: {what} {v} outside [0, 1]"
            )
        out[a] = min(1.0, max(0.0, v))
    extra = set(values) - set(graph.arguments)
    if extra:
        raise InvalidFrameworkError(
            f"{what} given for undeclared arguments {sorted(extra)!r}"
        )
    return out


@dataclass(frozen=True)
class WAF:
    """Attack graph plus an initial weight in [0, 1] per argument."""

    graph: AttackGraph
    weights: WeightVector

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "weights", _validated_values(self.graph, self.weights, "weight")
        )


@dataclass(frozen=True)
class CAF:
    """Attack graph with per-argument degree intervals and modification costs.

    Costs default to 1 for every argument and must be strictly positive.
    """

    graph: AttackGraph
    intervals: dict[str, Interval]
    costs: dict[str, float] = field(default_factory=dict)

    def __post_init__(self) -> None:
        ivals: dict[str, Interval] = {}
        for a in self.graph.arguments:
            if a not in self.intervals:
                raise InvalidFrameworkError(f"missing interval for argument {a!r}")
            iv = self.intervals[a]
            if not isinstance(iv, Interval):
                iv = Interval(*iv)
            ivals[a] = iv
        extra = set(self.intervals) - set(self.graph.arguments)
        if extra:
            raise InvalidFrameworkError(
                f"intervals given for undeclared arguments {sorted(extra)!r}"
            )
        costs: dict[str, float] = {}
        for a in self.graph.arguments:
            c = float(self.costs.get(a, 1.0))
            if not c > 0.0:
                raise InvalidFrameworkError(
                    f"argument {a!r}: cost {c} must be strictly positive"
                )
            costs[a] = c
        extra = set(self.costs) - set(self.graph.arguments)
        if extra:
            raise InvalidFrameworkError(
                f"costs given for undeclared arguments {sorted(extra)!r}"
            )
        object.__setattr__(self, "intervals", ivals)
        object.__setattr__(self, "costs", costs)

    def min_corner(self) -> DegreeVector:
        return {a: self.intervals[a].lo for a in self.graph.arguments}

    def max_corner(self) -> DegreeVector:
        return {a: self.intervals[a].hi for a in self.graph.arguments}

    def with_intervals(self, updates: Mapping[str, Interval]) -> "CAF":
        """New CAF with some intervals replaced; graph and costs shared."""
        merged = dict(self.intervals)
        merged.update(updates)
        return CAF(self.graph, merged, self.costs)


# --- JSON wire format ------------------------------------------------------

_KNOWN_ARG_KEYS = {"id", "interval", "cost", "weight", "degree"}
_KNOWN_TOP_KEYS = {"arguments", "attacks"}


def _read_document(text: str | bytes | Mapping) -> Mapping:
    if isinstance(text, Mapping):
        return text
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidFrameworkError(f"malformed JSON: {exc}") from None
    if not isinstance(doc, Mapping):
        raise InvalidFrameworkError("top-level JSON value must be an object")
    return doc


def _number(raw, what: str, arg_id: str) -> float:
    if isinstance(raw, bool) or not isinstance(raw, (int, float)):
        raise InvalidFrameworkError(f"argument {arg_id!r}: {what} must be a number")
    return float(raw)


class _Parsed:
    """Intermediate result shared by the CAF/WAF/degree parsers."""

    def __init__(self, doc: Mapping):
        for key in doc:
            if key not in _KNOWN_TOP_KEYS:
                warnings.warn(f"ignoring unknown key {key!r}", stacklevel=4)
        raw_args = doc.get("arguments")
        if not isinstance(raw_args, Sequence) or isinstance(raw_args, (str, bytes)):
            raise InvalidFrameworkError('"arguments" must be a list')
        ids: list[str] = []
        self.intervals: dict[str, Interval] = {}
        self.costs: dict[str, float] = {}
        self.weights: dict[str, float] = {}
        self.degrees: dict[str, float] = {}
        for entry in raw_args:
            if not isinstance(entry, Mapping):
                raise InvalidFrameworkError("argument entries must be objects")
            if "id" not in entry or not isinstance(entry["id"], str) or not entry["id"]:
                raise InvalidFrameworkError(
                    'argument entries need a non-empty string "id"'
                )
            arg_id = entry["id"]
            ids.append(arg_id)
            for key in entry:
                if key not in _KNOWN_ARG_KEYS:
                    warnings.warn(
                        f"ignoring unknown key {key!r} in argument {arg_id!r}",
                        stacklevel=4,
                    )
            if "interval" in entry:
                raw_iv = entry["interval"]
                if not isinstance(raw_iv, Sequence) or len(raw_iv) != 2:
                    raise InvalidFrameworkError(
                        f"argument {arg_id!r}: interval must be a [lo, hi] pair"
                    )
                lo = _number(raw_iv[0], "interval bound", arg_id)
                hi = _number(raw_iv[1], "interval bound", arg_id)
                try:
                    self.intervals[arg_id] = Interval(lo, hi)
                except InvalidFrameworkError as exc:
                    raise InvalidFrameworkError(f"argument {arg_id!r}: {exc}") from None
            else:
                self.intervals[arg_id] = FULL_INTERVAL
            if "cost" in entry:
                c = _number(entry["cost"], "cost", arg_id)
                if not c > 0.0:
                    raise InvalidFrameworkError(
                        f"argument {arg_id!r}: cost {c} must be strictly positive"
                    )
                self.costs[arg_id] = c
            if "weight" in entry:
                self.weights[arg_id] = _number(entry["weight"], "weight", arg_id)
            if "degree" in entry:
                self.degrees[arg_id] = _number(entry["degree"], "degree", arg_id)
        raw_attacks = doc.get("attacks", [])
        if not isinstance(raw_attacks, Sequence) or isinstance(raw_attacks, (str, bytes)):
            raise InvalidFrameworkError('"attacks" must be a list of [src, dst] pairs')
        attack_pairs: list[tuple[str, str]] = []
        for pair in raw_attacks:
            if (
                not isinstance(pair, Sequence)
                or isinstance(pair, (str, bytes))
                or len(pair) != 2
                or not all(isinstance(x, str) for x in pair)
            ):
                raise InvalidFrameworkError(
                    '"attacks" entries must be [source id, target id] pairs'
                )
            attack_pairs.append((pair[0], pair[1]))
        self.graph = AttackGraph(tuple(ids), tuple(attack_pairs))


def parse_caf(text: str | bytes | Mapping) -> CAF:
    """Parse the canonical JSON document into a CAF, applying defaults."""
    parsed = _Parsed(_read_document(text))
    return CAF(parsed.graph, parsed.intervals, parsed.costs)


def parse_waf(text: str | bytes | Mapping) -> WAF:
    """Parse a document into a WAF; missing weights default to 1."""
    parsed = _Parsed(_read_document(text))
    weights = {a: parsed.weights.get(a, 1.0) for a in parsed.graph.arguments}
    return WAF(parsed.graph, weights)


def parse_degrees(text: str | bytes | Mapping) -> tuple[AttackGraph, DegreeVector]:
    """Parse a document carrying a ``degree`` for every argument."""
    parsed = _Parsed(_read_document(text))
    for a in parsed.graph.arguments:
        if a not in parsed.degrees:
            raise InvalidFrameworkError(f"missing degree for argument {a!r}")
    degrees = _validated_values(parsed.graph, parsed.degrees, "degree")
    return parsed.graph, degrees


def caf_to_document(caf: CAF) -> dict:
    """Plain-dict form of a CAF in the canonical wire format."""
    args = []
    for a in caf.graph.arguments:
        iv = caf.intervals[a]
        entry: dict = {"id": a, "interval": [iv.lo, iv.hi]}
        cost = caf.costs[a]
        if cost != 1.0:
            entry["cost"] = int(cost) if cost == int(cost) else cost
        args.append(entry)
    return {
        "arguments": args,
        "attacks": [[src, dst] for src, dst in caf.graph.attacks],
    }


def serialize_caf(caf: CAF) -> str:
    """Serialize a CAF so that ``parse_caf(serialize_caf(caf)) == caf``."""
    return json.dumps(caf_to_document(caf), separators=(",", ":"))
