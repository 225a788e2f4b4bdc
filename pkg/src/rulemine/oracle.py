"""Brute-force reference miner for cross-checking the Apriori path.

Everything here is deliberately naive: full enumeration of the itemset
lattice and full transaction scans per itemset. The min-support predicate
is re-implemented here on purpose (not imported from the apriori module)
so a threshold bug in either path shows up as a disagreement.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import combinations

from .apriori import FrequentItemsets, MiningConfig
from .core import TransactionSet
from .errors import CapacityError
from .rules import Rule, RuleSet, dedup_rules, metrics, sort_rules

MAX_ORACLE_ITEMS = 24


def _meets_threshold(count: int, n: int, min_support: float) -> bool:
    # Independent re-statement of the support predicate: count/n >= min_support,
    # with the product snapped to an integer when within 1e-9 of one.
    target = min_support * n
    needed = math.floor(target)
    if target - needed > 1e-9:
        needed += 1
    return count >= needed


def brute_frequent(ts: TransactionSet, min_support: float) -> FrequentItemsets:
    """Every frequent itemset by exhaustive lattice enumeration."""
    items = ts.item_ids()
    if len(items) > MAX_ORACLE_ITEMS:
        raise CapacityError(
            f"oracle refuses {len(items)} items (limit {MAX_ORACLE_ITEMS})"
        )
    rows = ts.transactions()
    n = len(rows)
    counts = {}
    for k in range(1, len(items) + 1):
        for combo in combinations(items, k):
            member = set(combo)
            count = sum(1 for row in rows if member <= row)
            if _meets_threshold(count, n, min_support):
                counts[combo] = count
    return FrequentItemsets(counts, n)


def brute_rules(ts: TransactionSet, cfg: MiningConfig) -> RuleSet:
    """All rules over the brute-forced frequent itemsets, filtered and
    ranked the same way as the main path."""
    fi = brute_frequent(ts, cfg.min_support)
    rows = ts.transactions()
    n = len(rows)
    rules = []
    for z in fi.counts:
        if len(z) < 2:
            continue
        for r in range(1, len(z)):
            for ant in combinations(z, r):
                cons = tuple(i for i in z if i not in ant)
                # supports recomputed by direct scan, independent of fi
                ant_set, cons_set, z_set = set(ant), set(cons), set(z)
                supp_z = Fraction(sum(1 for row in rows if z_set <= row), n)
                supp_a = Fraction(sum(1 for row in rows if ant_set <= row), n)
                supp_c = Fraction(sum(1 for row in rows if cons_set <= row), n)
                m = metrics(supp_z, supp_a, supp_c)
                if m.confidence >= cfg.min_confidence and m.lift > cfg.min_lift:
                    rules.append(Rule(ant, cons, m))
    rs = RuleSet(rules, n)
    if cfg.target_consequent is not None:
        rs = RuleSet(
            [r for r in rs.rules if r.consequent == tuple(cfg.target_consequent)], n
        )
    return sort_rules(dedup_rules(rs))
