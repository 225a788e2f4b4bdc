"""Association rules: metric computation, enumeration, filtering, ranking.

Metrics follow the usual definitions: confidence = support / antecedent
support, lift = support / (antecedent support * consequent support),
leverage = support - antecedent support * consequent support. When called
with Fraction supports all four come out exact; floats are equally
accepted for reconstructing metrics from published (rounded) tables.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .apriori import FrequentItemsets, MiningConfig
from .core import Itemset
from .errors import InconsistentSupportError, InternalError, UndefinedMetricError

Number = float | Fraction


@dataclass(frozen=True)
class MetricSet:
    antecedent_support: Number
    consequent_support: Number
    support: Number
    confidence: Number
    lift: Number
    leverage: Number


@dataclass(frozen=True)
class Rule:
    antecedent: Itemset
    consequent: Itemset
    metrics: MetricSet


@dataclass
class RuleSet:
    rules: list[Rule] = field(default_factory=list)
    n_transactions: int | None = None

    def __len__(self) -> int:
        return len(self.rules)

    def __iter__(self):
        return iter(self.rules)


def metrics(supp_xy: Number, supp_x: Number, supp_y: Number) -> MetricSet:
    """MetricSet from the joint and marginal supports of a rule X => Y."""
    if supp_x == 0 or supp_y == 0:
        raise UndefinedMetricError("metrics undefined for zero antecedent/consequent support")
    if supp_xy > min(supp_x, supp_y):
        raise InconsistentSupportError(
            f"joint support {supp_xy} exceeds a marginal ({supp_x}, {supp_y})"
        )
    return MetricSet(
        antecedent_support=supp_x,
        consequent_support=supp_y,
        support=supp_xy,
        confidence=supp_xy / supp_x,
        lift=supp_xy / (supp_x * supp_y),
        leverage=supp_xy - supp_x * supp_y,
    )


def generate_rules(fi: FrequentItemsets, cfg: MiningConfig) -> RuleSet:
    """Every partition X => Y of every frequent itemset, filtered and ranked.

    Filters: confidence >= min_confidence, lift strictly > min_lift, and
    (when set) consequent == target_consequent. Multi-item consequents are
    enumerated like any other partition.
    """
    n = fi.n_transactions
    rules: list[Rule] = []
    for z, c_z in fi.counts.items():
        if len(z) < 2:
            continue
        supp_z = Fraction(c_z, n)
        for r in range(1, len(z)):
            for ant in combinations(z, r):
                cons = tuple(i for i in z if i not in ant)
                try:
                    c_a = fi.counts[ant]
                    c_c = fi.counts[cons]
                except KeyError as exc:
                    raise InternalError(
                        f"downward closure violated: missing support for {exc.args[0]}"
                    ) from None
                m = metrics(supp_z, Fraction(c_a, n), Fraction(c_c, n))
                if m.confidence >= cfg.min_confidence and m.lift > cfg.min_lift:
                    rules.append(Rule(ant, cons, m))
    rs = RuleSet(rules, n)
    if cfg.target_consequent is not None:
        rs = filter_rules(rs, cfg.target_consequent)
    return sort_rules(dedup_rules(rs))


def filter_rules(rs: RuleSet, target: Itemset) -> RuleSet:
    """Rules whose consequent equals the target itemset, order preserved."""
    return RuleSet([r for r in rs.rules if r.consequent == tuple(target)], rs.n_transactions)


def dedup_rules(rs: RuleSet) -> RuleSet:
    """Drop later exact (antecedent, consequent) duplicates.

    X => Y and Y => X are distinct rules and both survive.
    """
    seen = set()
    kept = []
    for r in rs.rules:
        key = (r.antecedent, r.consequent)
        if key not in seen:
            seen.add(key)
            kept.append(r)
    return RuleSet(kept, rs.n_transactions)


def sort_rules(rs: RuleSet) -> RuleSet:
    """Descending support, then descending confidence, then antecedent and
    consequent lexicographically: a total deterministic order."""
    ordered = sorted(
        rs.rules,
        key=lambda r: (-r.metrics.support, -r.metrics.confidence, r.antecedent, r.consequent),
    )
    return RuleSet(ordered, rs.n_transactions)
