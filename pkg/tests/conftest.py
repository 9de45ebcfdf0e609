"""Shared helpers for the test suite."""
from qgrass.limits import MayaDiagram


def random_maya(rng, max_order: int = 4, floor: int = -4) -> MayaDiagram:
    """Seeded diagram of order at most max_order with prefix entries >= floor."""
    r = rng.randint(1, max_order)
    if r == 1:
        return MayaDiagram.identity()
    entries = sorted(rng.sample(range(floor, r - 1), r - 1))
    return MayaDiagram.from_entries(entries)
