import numpy as np
import pytest

from cut600.model import Model


@pytest.fixture(scope="session")
def model():
    return Model.build()


def random_independent_set(model, seed: int, size_cap: int = 24) -> tuple[int, ...]:
    """Deterministic pseudo-random cut: greedy picks from a shuffled order."""
    rng = np.random.default_rng(seed)
    order = rng.permutation(120)
    chosen: list[int] = []
    blocked = 0
    for v in order:
        v = int(v)
        if blocked & (1 << v):
            continue
        chosen.append(v)
        blocked |= model.nbr_mask[v] | (1 << v)
        if len(chosen) >= size_cap:
            break
    return tuple(sorted(chosen))
