"""
Extremal digraph families and seeded random instances.

Random draws come from SplitMix64 so an edge list can be regenerated from its
seed in any language:

    state = (state + 0x9E3779B97F4A7C15) mod 2**64
    z = state
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9 mod 2**64
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB mod 2**64
    output z ^ (z >> 31)

A uniform float is (output >> 11) * 2**-53 and a fair coin is the output's
top bit. random_oriented visits pairs i < j in lexicographic order, draws a
float for inclusion and, if included, a coin for the direction (set: i -> j).
random_tournament draws only the coin.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple, Union

from .digraph import OrientedDigraph
from .errors import PreconditionError

logger = logging.getLogger(__name__)

_MASK64 = (1 << 64) - 1
FAMILIES = ('cycle', 'cycle_power', 'blowup_cycle', 'random_oriented', 'tournament')


class SplitMix64:
    """64-bit SplitMix generator."""

    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def next_float(self) -> float:
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def coin(self) -> bool:
        return bool(self.next_u64() >> 63)


def cycle_power(n: int, k: int) -> OrientedDigraph:
    """Arcs i -> i+1, ..., i+k (mod n)."""
    if k < 1 or n < 2 * k + 1:
        raise PreconditionError(f"cycle power needs k >= 1 and n >= 2k+1, got n={n}, k={k}")
    arcs = [(i, (i + s) % n) for i in range(n) for s in range(1, k + 1)]
    return OrientedDigraph.from_arcs(n, arcs)


def blowup_cycle(length: int, t: int) -> OrientedDigraph:
    """Each vertex of a directed cycle replaced by t copies; vertex (i, a) is i*t + a."""
    if length < 3 or t < 1:
        raise PreconditionError(f"blow-up needs length >= 3 and t >= 1, got {length}, {t}")
    arcs = [
        (i * t + a, ((i + 1) % length) * t + b)
        for i in range(length) for a in range(t) for b in range(t)
    ]
    return OrientedDigraph.from_arcs(length * t, arcs)


def random_oriented(n: int, p: Union[float, Fraction], seed: int) -> OrientedDigraph:
    if not 0 <= p <= 1:
        raise PreconditionError(f"arc probability must lie in [0, 1], got {p}")
    if n < 0:
        raise PreconditionError("vertex count must be nonnegative")
    rng = SplitMix64(seed)
    arcs: List[Tuple[int, int]] = []
    for i in range(n):
        for j in range(i + 1, n):
            if rng.next_float() < p:
                arcs.append((i, j) if rng.coin() else (j, i))
    return OrientedDigraph.from_arcs(n, arcs)


def random_tournament(n: int, seed: int) -> OrientedDigraph:
    if n < 1:
        raise PreconditionError("a tournament needs at least one vertex")
    rng = SplitMix64(seed)
    arcs = [(i, j) if rng.coin() else (j, i) for i in range(n) for j in range(i + 1, n)]
    return OrientedDigraph.from_arcs(n, arcs)


@dataclass(frozen=True)
class GenSpec:
    family: str
    n: int = 0
    k: int = 1
    t: int = 1
    p: Union[float, Fraction] = 0.5
    seed: int = 0

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise PreconditionError(f"unknown family {self.family!r}; choose from {', '.join(FAMILIES)}")
        if self.n < 1:
            raise PreconditionError("n must be at least 1")


def generate(spec: GenSpec) -> OrientedDigraph:
    """Build the digraph described by a GenSpec (n is the cycle length for blowup_cycle)."""
    logger.info("generating %s", spec)
    if spec.family == 'cycle':
        return cycle_power(spec.n, 1)
    if spec.family == 'cycle_power':
        return cycle_power(spec.n, spec.k)
    if spec.family == 'blowup_cycle':
        return blowup_cycle(spec.n, spec.t)
    if spec.family == 'random_oriented':
        return random_oriented(spec.n, spec.p, spec.seed)
    return random_tournament(spec.n, spec.seed)
