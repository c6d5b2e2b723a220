import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Tuple, TypeVar

import numpy as np

logger = logging.getLogger(__name__)

T = TypeVar("T")

# stream ids keep the generators of different experiments apart under one seed
ANALYTIC_STREAM = 0
GEOMETRIC_STREAM = 1
COUNT_STREAM = 2
BLOCK_STREAM = 3
BIASED_STREAM = 4

_OPEN_UNIT_BITS = 53


def child_rng(seed: int, stream_id: int, chunk: int = 0) -> np.random.Generator:
    """
    A generator derived deterministically from (seed, stream_id, chunk).

    Children of one seed are statistically independent and do not depend on
    the order in which they are created.

    Examples:
        >>> float(child_rng(42, 0, 3).random()) == float(child_rng(42, 0, 3).random())
        True
    """
    sequence = np.random.SeedSequence(entropy=int(seed), spawn_key=(int(stream_id), int(chunk)))
    return np.random.default_rng(sequence)


def chunk_plan(n: int, chunk_size: int) -> List[Tuple[int, int]]:
    """(chunk index, draws) pairs covering n draws in fixed-size chunks."""
    if n <= 0:
        return []
    full, rest = divmod(int(n), int(chunk_size))
    plan = [(i, chunk_size) for i in range(full)]
    if rest:
        plan.append((full, rest))
    return plan


def run_chunks(
    task: Callable[[int, int], T],
    plan: List[Tuple[int, int]],
    workers: int = 1,
) -> List[T]:
    """
    Apply `task(chunk_index, size)` over a plan, returning results in plan order.

    Each task must draw only from its own `child_rng`, so the result is the
    same for every thread count.
    """
    logger.debug("running %d chunk(s) on %d worker(s)", len(plan), workers)
    if workers > 1 and len(plan) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(lambda item: task(*item), plan))
    return [task(index, size) for index, size in plan]


def open_uniform(rng: np.random.Generator, size: int) -> np.ndarray:
    """Uniform draws on the open interval (0, 1) at 53-bit resolution."""
    return (rng.integers(0, 2**_OPEN_UNIT_BITS, size=size) + 0.5) / 2.0**_OPEN_UNIT_BITS


__all__ = [
    "ANALYTIC_STREAM",
    "GEOMETRIC_STREAM",
    "COUNT_STREAM",
    "BLOCK_STREAM",
    "BIASED_STREAM",
    "child_rng",
    "chunk_plan",
    "run_chunks",
    "open_uniform",
]
