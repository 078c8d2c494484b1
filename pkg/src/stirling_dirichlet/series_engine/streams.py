"""Coefficient streams: deterministic generators of series coefficients."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import count, islice
from typing import Callable, Iterable, Iterator

__all__ = ["Decay", "CoefficientStream"]


@dataclass(frozen=True)
class Decay:
    """Declared asymptotic shape of a stream, used when sizing tails.

    ``kind`` is ``"power"`` for values ~ C n**-exponent (ln n)**log_power,
    ``"fast"`` for geometric or factorial decay, ``"finite"`` when the
    generator terminates.
    """

    kind: str = "power"
    exponent: float = 0.0
    log_power: int = 0

    def __post_init__(self):
        if self.kind not in ("power", "fast", "finite"):
            raise ValueError(f"unknown decay kind {self.kind!r}")


@dataclass(frozen=True)
class CoefficientStream:
    """Successive coefficients starting at an arbitrary index.

    ``generate(start)`` returns an iterable of the values at ``start``,
    ``start + 1``, ...  Values may be ints, Fractions, mpf or gmpy2 mpfr;
    generators that produce reals work at the gmpy2 precision active when
    they are advanced, which the summation engine sets.
    """

    generate: Callable[[int], Iterable]
    decay: Decay = field(default_factory=Decay)
    name: str = ""
    first: int = 0

    def iterate(self, start: int | None = None) -> Iterator:
        start = self.first if start is None else start
        if start < self.first:
            raise ValueError(f"stream {self.name!r} starts at index {self.first}")
        return iter(self.generate(start))

    def take(self, n_values: int, start: int | None = None) -> list:
        return list(islice(self.iterate(start), n_values))

    def __call__(self, index: int):
        return next(self.iterate(index))

    @classmethod
    def from_function(cls, fn: Callable[[int], object], decay: Decay | None = None,
                      name: str = "", first: int = 0) -> "CoefficientStream":
        def generate(start):
            return (fn(i) for i in count(start))

        return cls(generate, decay or Decay(), name or getattr(fn, "__name__", ""), first)

    @classmethod
    def constant(cls, value, name: str = "constant") -> "CoefficientStream":
        return cls.from_function(lambda i: value, Decay("power", 0.0), name)

    @classmethod
    def zero(cls) -> "CoefficientStream":
        return cls(lambda start: iter(()), Decay("finite"), "zero")
