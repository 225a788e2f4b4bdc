import random

from hypothesis import strategies as st

from rulemine.core import TransactionSet


@st.composite
def transaction_sets(draw, max_items=8, max_transactions=30, min_transactions=1):
    """Random small TransactionSet with a fixed item universe."""
    n_items = draw(st.integers(min_value=1, max_value=max_items))
    rows = draw(
        st.lists(
            st.sets(st.integers(min_value=0, max_value=n_items - 1)),
            min_size=min_transactions,
            max_size=max_transactions,
        )
    )
    return TransactionSet.from_transactions(rows, item_ids=range(n_items))


def random_transaction_set(rng: random.Random, max_items=10, max_transactions=64):
    """Seeded random TransactionSet for loop-style property checks."""
    n_items = rng.randint(2, max_items)
    n_rows = rng.randint(1, max_transactions)
    density = rng.uniform(0.1, 0.7)
    rows = [
        {i for i in range(n_items) if rng.random() < density} for _ in range(n_rows)
    ]
    return TransactionSet.from_transactions(rows, item_ids=range(n_items))
