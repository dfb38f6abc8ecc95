"""Support-set policies and the Rayner closure axioms, for rank-one supports.

A :class:`SupportDescriptor` is ``(1/d) * (P ∪ T)`` with ``P`` a finite set of
integers and ``T`` an eventually periodic tail ``{k >= s : k mod p in R}``.
Periodic tails (rather than plain cofinite ones) keep the class closed under
union, shift and positive rational scaling.
"""
from __future__ import annotations

import enum
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator

__all__ = [
    "Tail",
    "SupportDescriptor",
    "PolicyKind",
    "FamilyPolicy",
    "AxiomResult",
    "FamilyReport",
    "family_member",
    "family_check_axioms",
    "family_check_oaut_stability",
    "sample_descriptors",
    "kappa_finite_fixture",
]


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


@dataclass(frozen=True)
class Tail:
    start: int
    period: int
    residues: frozenset

    def __contains__(self, k: int) -> bool:
        return k >= self.start and k % self.period in self.residues

    def reperiod(self, p: int) -> "Tail":
        """Same set, written with a period that is a multiple of the current one."""
        reps = frozenset(r + j * self.period for r in self.residues for j in range(p // self.period))
        return Tail(self.start, p, reps)


def _minimal_period(period: int, residues: frozenset) -> tuple[int, frozenset]:
    for p in range(1, period + 1):
        if period % p:
            continue
        reduced = frozenset(r % p for r in residues)
        if frozenset(r for r in range(period) if r % p in reduced) == residues:
            return p, reduced
    return period, residues


class SupportDescriptor:
    """A well-ordered subset of (1/d)Z given by finite points plus a periodic tail."""

    __slots__ = ("level", "points", "tail")

    def __init__(self, level: int, points: Iterable[int] = (), tail: Tail | None = None):
        if level < 1:
            raise ValueError("level must be positive")
        pts = set(int(k) for k in points)
        if tail is not None and not tail.residues:
            tail = None
        if tail is not None:
            p, reps = _minimal_period(tail.period, frozenset(r % tail.period for r in tail.residues))
            s = tail.start
            pts = {k for k in pts if not (k >= s and k % p in reps)}
            # pull the start down over points that continue the tail
            while True:
                k = s - 1
                if k % p not in reps:
                    s = k
                elif k in pts:
                    pts.discard(k)
                    s = k
                else:
                    break
            while (s % p) not in reps:
                s += 1
            tail = Tail(s, p, reps)
        g = level
        for k in pts:
            g = math.gcd(g, k)
        if tail is not None:
            g = math.gcd(g, tail.start)
            g = math.gcd(g, tail.period)
            for r in tail.residues:
                g = math.gcd(g, r)
        if g > 1:
            pts = {k // g for k in pts}
            if tail is not None:
                tail = Tail(tail.start // g, tail.period // g, frozenset(r // g for r in tail.residues))
            level //= g
        self.level = level
        self.points = tuple(sorted(pts))
        self.tail = tail

    # -- constructors ----------------------------------------------------------

    @classmethod
    def finite(cls, values: Iterable) -> "SupportDescriptor":
        vals = [Fraction(v) for v in values]
        d = 1
        for v in vals:
            d = _lcm(d, v.denominator)
        return cls(d, (v * d for v in vals))

    @classmethod
    def with_tail(cls, values: Iterable, start, step=None) -> "SupportDescriptor":
        """Finite ``values`` plus every multiple of ``step`` at or above ``start``.

        ``step`` defaults to 1/d for the common level d of the inputs.
        """
        vals = [Fraction(v) for v in values]
        start = Fraction(start)
        d = start.denominator
        for v in vals:
            d = _lcm(d, v.denominator)
        if step is None:
            step = Fraction(1, d)
        step = Fraction(step)
        d = _lcm(d, step.denominator)
        s, p = int(start * d), int(step * d)
        return cls(d, (v * d for v in vals), Tail(s, p, frozenset({s % p})))

    # -- queries ---------------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, SupportDescriptor):
            return NotImplemented
        return (self.level, self.points, self.tail) == (other.level, other.points, other.tail)

    def __hash__(self):
        return hash((self.level, self.points, self.tail))

    def __contains__(self, g) -> bool:
        k = Fraction(g) * self.level
        if k.denominator != 1:
            return False
        k = int(k)
        return k in self.points or (self.tail is not None and k in self.tail)

    @property
    def is_finite(self) -> bool:
        return self.tail is None

    def cardinality(self):
        """Number of elements, or ``None`` for an infinite (countable) support."""
        return len(self.points) if self.tail is None else None

    def minimum(self):
        first = [Fraction(k, self.level) for k in self.points[:1]]
        if self.tail is not None:
            first.append(Fraction(self.tail.start, self.level))
        return min(first) if first else None

    def elements_below(self, ceiling) -> list:
        c = Fraction(ceiling) * self.level
        out = set(k for k in self.points if k < c)
        t = self.tail
        if t is not None:
            k = t.start
            while k < c:
                if k % t.period in t.residues:
                    out.add(k)
                k += 1
        return [Fraction(k, self.level) for k in sorted(out)]

    def _at_level(self, d: int):
        f = d // self.level
        tail = None
        if self.tail is not None:
            t = self.tail
            tail = Tail(t.start * f, t.period * f, frozenset(r * f for r in t.residues))
        return [k * f for k in self.points], tail

    # -- closure operations ----------------------------------------------------

    def union(self, other: "SupportDescriptor") -> "SupportDescriptor":
        d = _lcm(self.level, other.level)
        p1, t1 = self._at_level(d)
        p2, t2 = other._at_level(d)
        if t1 is None or t2 is None:
            return SupportDescriptor(d, p1 + p2, t1 or t2)
        p = _lcm(t1.period, t2.period)
        t1, t2 = t1.reperiod(p), t2.reperiod(p)
        s = max(t1.start, t2.start)
        extra = [k for t in (t1, t2) for k in range(t.start, s) if k in t]
        tail = Tail(s, p, t1.residues | t2.residues)
        return SupportDescriptor(d, p1 + p2 + extra, tail)

    def shift(self, g) -> "SupportDescriptor":
        g = Fraction(g)
        d = _lcm(self.level, g.denominator)
        pts, t = self._at_level(d)
        h = int(g * d)
        tail = None
        if t is not None:
            tail = Tail(t.start + h, t.period, frozenset((r + h) % t.period for r in t.residues))
        return SupportDescriptor(d, (k + h for k in pts), tail)

    def scale(self, q) -> "SupportDescriptor":
        """q·A for a positive rational q = m/n: level d·n, numerators times m."""
        q = Fraction(q)
        if q <= 0:
            raise ValueError("scale must be positive")
        m, n = q.numerator, q.denominator
        tail = None
        if self.tail is not None:
            t = self.tail
            tail = Tail(t.start * m, t.period * m, frozenset(r * m for r in t.residues))
        return SupportDescriptor(self.level * n, (k * m for k in self.points), tail)

    def subsets(self) -> Iterator["SupportDescriptor"]:
        """A few proper subsets: drop one point, or cut the tail to its first elements."""
        for i in range(len(self.points)):
            yield SupportDescriptor(self.level, self.points[:i] + self.points[i + 1:], self.tail)
        if self.tail is not None:
            t = self.tail
            head = [k for k in range(t.start, t.start + 2 * t.period) if k in t]
            yield SupportDescriptor(self.level, list(self.points) + head)

    def __str__(self):
        parts = [str(Fraction(k, self.level)) for k in self.points]
        if self.tail is not None:
            t = self.tail
            res = ",".join(str(r) for r in sorted(t.residues))
            parts.append(f"tail>={Fraction(t.start, self.level)} (k mod {t.period} in {{{res}}})/{self.level}")
        return "{" + ", ".join(parts) + "}"

    __repr__ = __str__


class PolicyKind(enum.Enum):
    PUISEUX = "puiseux"
    CARDINALITY = "cardinality"
    LATTICE = "lattice"


@dataclass(frozen=True)
class FamilyPolicy:
    kind: PolicyKind
    bound: int | None = None  # for CARDINALITY; None means countable

    @classmethod
    def puiseux(cls) -> "FamilyPolicy":
        return cls(PolicyKind.PUISEUX)

    @classmethod
    def cardinality(cls, bound: int | None = None) -> "FamilyPolicy":
        if bound is not None and bound < 1:
            raise ValueError("cardinality bound must be positive")
        return cls(PolicyKind.CARDINALITY, bound)

    @classmethod
    def lattice(cls) -> "FamilyPolicy":
        return cls(PolicyKind.LATTICE)

    @property
    def is_field_family(self) -> bool:
        """Finite cardinality bounds are fixtures, not field families."""
        return not (self.kind is PolicyKind.CARDINALITY and self.bound is not None)

    def __str__(self):
        if self.kind is PolicyKind.CARDINALITY:
            return f"cardinality<{self.bound if self.bound is not None else 'countable'}"
        return self.kind.value


def family_member(policy: FamilyPolicy, a: SupportDescriptor) -> bool:
    if policy.kind is PolicyKind.CARDINALITY and policy.bound is not None:
        return a.tail is None and len(a.points) < policy.bound
    return True


@dataclass(frozen=True)
class AxiomResult:
    axiom: str
    status: str  # "pass", "fail", "structural" or "not sampled"
    checked: int = 0
    witness: str | None = None

    @property
    def ok(self) -> bool:
        return self.status != "fail"


@dataclass
class FamilyReport:
    policy: FamilyPolicy
    results: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.ok for r in self.results)

    def failures(self) -> list:
        return [r for r in self.results if not r.ok]

    def lines(self) -> list:
        out = [f"policy={self.policy}"]
        for r in self.results:
            line = f"{r.axiom}={r.status} checked={r.checked}"
            if r.witness:
                line += f" witness={r.witness}"
            out.append(line)
        out.append(f"verdict={'pass' if self.passed else 'fail'}")
        return out

    def __str__(self):
        return "\n".join(self.lines())


def _sums_below(a: SupportDescriptor, ceiling) -> SupportDescriptor:
    """All nonempty finite sums of positive elements of A that lie below ``ceiling``."""
    gens = [g for g in a.elements_below(ceiling) if g > 0]
    c = Fraction(ceiling)
    reached = set()
    frontier = set(gens)
    while frontier:
        reached |= frontier
        frontier = {x + g for x in frontier for g in gens if x + g < c} - reached
    return SupportDescriptor.finite(sorted(reached))


def _check(name: str, cases, policy) -> AxiomResult:
    n = 0
    for label, target in cases:
        n += 1
        if not family_member(policy, target):
            return AxiomResult(name, "fail", n, f"{label} -> {target}")
    return AxiomResult(name, "pass", n)


def family_check_axioms(policy: FamilyPolicy, samples, ceiling) -> FamilyReport:
    """Sampled R1-R6 over member samples; R6 only below ``ceiling``."""
    samples = [s for s in samples if family_member(policy, s)]
    ceiling = Fraction(ceiling)
    rep = FamilyReport(policy)
    rep.results.append(AxiomResult("R1", "structural", len(samples)))
    rep.results.append(AxiomResult("R2", "not sampled"))

    def unions():
        for i, a in enumerate(samples):
            for b in samples[i + 1:]:
                yield f"{a} U {b}", a.union(b)

    def subsets():
        for a in samples:
            for b in a.subsets():
                yield f"{b} in {a}", b

    def shifts():
        for a in samples:
            for g in (Fraction(1, a.level), Fraction(-1), Fraction(3, 2)):
                yield f"{a} + {g}", a.shift(g)

    def sums():
        for a in samples:
            yield f"sums({a}) < {ceiling}", _sums_below(a, ceiling)

    rep.results.append(_check("R3", unions(), policy))
    rep.results.append(_check("R4", subsets(), policy))
    rep.results.append(_check("R5", shifts(), policy))
    rep.results.append(_check("R6", sums(), policy))
    return rep


def family_check_oaut_stability(policy: FamilyPolicy, scales, samples) -> FamilyReport:
    """q·A stays in the family for every positive scale q and member sample A."""
    samples = [s for s in samples if family_member(policy, s)]
    cases = ((f"{q} * {a}", a.scale(q)) for q in scales for a in samples)
    rep = FamilyReport(policy)
    rep.results.append(_check("oaut", cases, policy))
    return rep


def sample_descriptors(seed: int, count: int = 20, max_level: int = 6) -> list:
    """Seeded descriptors with small levels, a few points and sometimes a tail."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        d = rng.randint(1, max_level)
        pts = rng.sample(range(0, 4 * d), rng.randint(0, 4))
        tail = None
        if rng.random() < 0.5:
            s = rng.randint(4 * d, 6 * d)
            p = rng.randint(1, 3)
            tail = Tail(s, p, frozenset({s % p}))
        out.append(SupportDescriptor(d, pts, tail))
    return out


def kappa_finite_fixture():
    """CardinalityBounded(3) and two members whose union has four points."""
    policy = FamilyPolicy.cardinality(3)
    a = SupportDescriptor.finite([0, 1])
    b = SupportDescriptor.finite([2, 3])
    return policy, [a, b]
