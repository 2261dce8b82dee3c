"""Charge redistribution with exact rationals.

Every vertex starts with its degree as charge; rules R1.1-R1.5, R2, R3, R4
move charge between vertices and Rg settles positive/negative vertices
against one global pot.  The ledger records each individual transfer.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .classify import VertexClassification, analyze_components
from .density import format_rational
from .graph import Graph, one_links

POT = -1  # ledger id for the common pot

R1_1 = Fraction(2, 5)
R1_2 = Fraction(3, 5)
R1_3 = Fraction(1, 2)
R1_4 = Fraction(3, 8)
R1_5 = Fraction(1, 5)
R2 = Fraction(1, 10)
R3 = Fraction(5, 8)
R4 = Fraction(4, 5)
RG_IN = Fraction(2, 5)
RG_OUT = Fraction(1, 5)


@dataclass(frozen=True)
class Transfer:
    rule: str
    giver: int
    receiver: int
    amount: Fraction

    def to_json(self) -> dict:
        return {
            "rule": self.rule,
            "giver": "pot" if self.giver == POT else self.giver,
            "receiver": "pot" if self.receiver == POT else self.receiver,
            "amount": format_rational(self.amount),
        }


@dataclass
class ChargeState:
    charge: dict[int, Fraction]
    pot: Fraction = Fraction(0)
    ledger: list[Transfer] = field(default_factory=list)

    def move(self, rule: str, giver: int, receiver: int, amount: Fraction) -> None:
        for v, sign in ((giver, -1), (receiver, 1)):
            if v == POT:
                self.pot += sign * amount
            else:
                self.charge[v] += sign * amount
        self.ledger.append(Transfer(rule, giver, receiver, amount))

    def total(self) -> Fraction:
        return sum(self.charge.values(), Fraction(0)) + self.pot


def initial_charges(g: Graph) -> ChargeState:
    return ChargeState({v: Fraction(g.degree(v)) for v in g.vertices})


def r1_rule(g: Graph, weak: set[int], cls: VertexClassification,
            x: int, a: int, y: int) -> tuple[str, Fraction] | None:
    """Which R1 sub-rule (if any) sends charge from ``x`` to ``a`` on link ``x-a-y``."""
    dy = g.degree(y)
    if dy <= 7:
        if x in weak:
            return "R1.1", R1_1
        if y in weak:
            return "R1.2", R1_2
        return "R1.3", R1_3
    if dy <= 14:
        return "R1.4", R1_4
    if a not in cls.negative:
        return "R1.5", R1_5
    return None


def r2_applies(g: Graph, x: int, u: int) -> bool:
    """``u`` has degree 3 and, besides ``x``, one degree-2 and one degree-<=7 neighbour."""
    if g.degree(u) != 3:
        return False
    p, q = sorted(g.adj[u] - {x})
    dp, dq = g.degree(p), g.degree(q)
    return (dp == 2 and dq <= 7) or (dq == 2 and dp <= 7)


def apply_rules(g: Graph, cls: VertexClassification, k: int | None = None) -> ChargeState:
    """One pass of every rule instance. ``k`` is accepted for interface symmetry."""
    cs = initial_charges(g)
    weak = cls.weak
    for x in g.vertices:
        d = g.degree(x)
        if 3 <= d <= 7:
            for link in one_links(g, x):
                hit = r1_rule(g, weak, cls, x, link.through, link.y)
                if hit is not None:
                    cs.move(hit[0], x, link.through, hit[1])
            for u in sorted(g.adj[x]):
                if r2_applies(g, x, u):
                    cs.move("R2", x, u, R2)
        elif 8 <= d <= 14:
            for u in sorted(g.adj[x]):
                cs.move("R3", x, u, R3)
        elif d >= 15:
            for u in sorted(g.adj[x]):
                cs.move("R4", x, u, R4)
    for v in sorted(cls.positive):
        cs.move("Rg", v, POT, RG_IN)
    for v in sorted(cls.negative):
        cs.move("Rg", POT, v, RG_OUT)
    return cs


def replay_ledger(g: Graph, ledger: list[Transfer]) -> ChargeState:
    cs = initial_charges(g)
    for t in ledger:
        cs.move(t.rule, t.giver, t.receiver, t.amount)
    return cs


@dataclass
class ComponentBound:
    vertices: list[int]
    negatives: int
    positives: int
    holds: bool

    def to_json(self) -> dict:
        return {"vertices": self.vertices, "n": self.negatives, "p": self.positives,
                "holds": self.holds}


@dataclass
class DischargeReport:
    deficient: list[tuple[int, Fraction]]
    pot_value: Fraction
    component_bounds: list[ComponentBound] = field(default_factory=list)
    ledger: list[Transfer] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.deficient and self.pot_value >= 0

    def to_json(self) -> dict:
        return {
            "deficient": [{"vertex": v, "charge": format_rational(c)} for v, c in self.deficient],
            "pot": format_rational(self.pot_value),
            "components": [cb.to_json() for cb in self.component_bounds],
            "ledger": [t.to_json() for t in self.ledger],
        }


def verify_min_charge(cs: ChargeState) -> DischargeReport:
    deficient = [(v, c) for v, c in sorted(cs.charge.items()) if c < 3]
    return DischargeReport(deficient, cs.pot, ledger=list(cs.ledger))


def pot_component_check(h: Graph, cls: VertexClassification) -> list[ComponentBound]:
    """Per H(G) component: negatives ``n``, positives ``p`` and ``p >= ceil(n/2)``."""
    return [
        ComponentBound(r.vertices, r.negatives, r.positives,
                       r.positives >= math.ceil(r.negatives / 2))
        for r in analyze_components(h, cls)
    ]
