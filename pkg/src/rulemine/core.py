"""Items, itemsets, and the immutable vertical transaction store.

Itemsets are plain tuples of item ids in strictly increasing order (the
canonical form); tuple equality and ordering then coincide with itemset
equality and a total order. Transaction covers are stored one Python int
per item, bit t set when transaction t contains the item, so itemset
support is a chain of ``&`` plus ``bit_count()``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import InvalidItemError, UndefinedSupportError

Itemset = tuple[int, ...]


@dataclass(frozen=True)
class Item:
    id: int
    name: str


class ItemCatalog:
    """Bidirectional mapping between item names and dense ids 0..n-1."""

    def __init__(self, names: Sequence[str]):
        seen = set()
        for name in names:
            if not name:
                raise InvalidItemError("item name must be non-empty")
            if name in seen:
                raise InvalidItemError(f"duplicate item name: {name!r}")
            seen.add(name)
        self._names = list(names)
        self._ids = {name: i for i, name in enumerate(self._names)}

    def __len__(self) -> int:
        return len(self._names)

    def __iter__(self) -> Iterator[Item]:
        return (Item(i, n) for i, n in enumerate(self._names))

    def names(self) -> list[str]:
        return list(self._names)

    def id_of(self, name: str) -> int:
        try:
            return self._ids[name]
        except KeyError:
            raise InvalidItemError(f"unknown item name: {name!r}") from None

    def name_of(self, item_id: int) -> str:
        if 0 <= item_id < len(self._names):
            return self._names[item_id]
        raise InvalidItemError(f"unknown item id: {item_id}")

    def __contains__(self, name: str) -> bool:
        return name in self._ids


def canonical_itemset(items: Iterable[int]) -> Itemset:
    """Sort and deduplicate item ids into the canonical tuple form."""
    return tuple(sorted(set(items)))


class TransactionSet:
    """Immutable binary transaction database in vertical (per-item) form.

    ``covers`` maps item id -> bitset int over transaction indices. The
    mapping is copied at construction and never mutated afterwards, so a
    TransactionSet can be shared freely.
    """

    def __init__(self, n_transactions: int, covers: Mapping[int, int]):
        if n_transactions < 0:
            raise ValueError("n_transactions must be >= 0")
        full = (1 << n_transactions) - 1
        for item_id, bits in covers.items():
            if bits & ~full:
                raise InvalidItemError(
                    f"cover of item {item_id} references transactions"
                    f" >= {n_transactions}"
                )
        self._n = n_transactions
        self._covers = dict(covers)

    @classmethod
    def from_transactions(
        cls, transactions: Sequence[Iterable[int]], item_ids: Iterable[int] | None = None
    ) -> "TransactionSet":
        """Build from a horizontal list of transactions (iterables of ids).

        ``item_ids`` fixes the item universe; by default it is the union of
        ids seen in the transactions.
        """
        rows = [set(t) for t in transactions]
        if item_ids is None:
            universe = set()
            for row in rows:
                universe |= row
        else:
            universe = set(item_ids)
        covers = {i: 0 for i in universe}
        for t, row in enumerate(rows):
            for i in row:
                if i not in covers:
                    raise InvalidItemError(f"transaction {t} uses unknown item id {i}")
                covers[i] |= 1 << t
        return cls(len(rows), covers)

    @property
    def n_transactions(self) -> int:
        return self._n

    @property
    def n_items(self) -> int:
        return len(self._covers)

    def item_ids(self) -> list[int]:
        return sorted(self._covers)

    def cover_bits(self, item_id: int) -> int:
        try:
            return self._covers[item_id]
        except KeyError:
            raise InvalidItemError(f"unknown item id: {item_id}") from None

    def transactions(self) -> list[frozenset[int]]:
        """Horizontal view: one frozenset of item ids per transaction."""
        rows: list[set[int]] = [set() for _ in range(self._n)]
        for item_id, bits in self._covers.items():
            while bits:
                low = bits & -bits
                rows[low.bit_length() - 1].add(item_id)
                bits ^= low
        return [frozenset(r) for r in rows]


def _bits_to_indices(bits: int) -> set[int]:
    out = set()
    while bits:
        low = bits & -bits
        out.add(low.bit_length() - 1)
        bits ^= low
    return out


def cover_bits_of(ts: TransactionSet, s: Itemset) -> int:
    """Bitset of transactions containing every item of s (all-ones for s=())."""
    bits = (1 << ts.n_transactions) - 1
    for i in s:
        bits &= ts.cover_bits(i)
        if not bits:
            break
    return bits


def cover_of(ts: TransactionSet, s: Itemset) -> set[int]:
    """Set of transaction indices containing every item of s."""
    return _bits_to_indices(cover_bits_of(ts, s))


def support_of(ts: TransactionSet, s: Itemset) -> Fraction:
    """Exact support |cover(s)| / n_transactions as a Fraction."""
    if ts.n_transactions == 0:
        raise UndefinedSupportError("support is undefined over an empty transaction set")
    return Fraction(cover_bits_of(ts, s).bit_count(), ts.n_transactions)
