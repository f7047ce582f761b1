"""Counter-based random streams keyed by (seed, stream, unit).

Every independent unit of work (one uniform-sampler run, one block of
trials) gets its own Philox counter range, so results do not depend on how
units are spread over worker processes.
"""

from __future__ import annotations

import numpy as np

MASK64 = (1 << 64) - 1
TWO64 = 1 << 64

STREAM_GENERATE = 1
STREAM_SAMPLE = 2
STREAM_ESTIMATE = 3
STREAM_FULL_SCAN = 4
STREAM_CHECK = 5

_UNIT53 = 2.0**-53


class RandomSource:
    """Uniform integers and biased coins drawn from a Philox4x64 stream.

    ``integer`` is exactly uniform (rejection on the 64-bit word), ``coin``
    compares a 53-bit uniform against the float value of the probability.
    """

    __slots__ = ("seed", "stream", "unit", "_bits", "_buf", "_pos", "_chunk")

    def __init__(self, seed: int, stream: int = 0, unit: int = 0):
        self.seed = seed
        self.stream = stream
        self.unit = unit
        key = (seed & MASK64) | ((stream & MASK64) << 64)
        self._bits = np.random.Philox(key=key, counter=(unit & ((1 << 128) - 1)) << 128)
        self._buf: list[int] = []
        self._pos = 0
        self._chunk = 32

    def _raw(self) -> int:
        if self._pos == len(self._buf):
            self._buf = self._bits.random_raw(self._chunk).tolist()
            self._pos = 0
            if self._chunk < 8192:
                self._chunk *= 2
        x = self._buf[self._pos]
        self._pos += 1
        return x

    def integer(self, n: int) -> int:
        """Uniform integer in ``[0, n)``."""
        if n <= 0:
            raise ValueError("integer(n) needs n >= 1")
        if n == 1:
            return 0
        limit = TWO64 - TWO64 % n
        while True:
            x = self._raw()
            if x < limit:
                return x % n

    def uniform(self) -> float:
        return (self._raw() >> 11) * _UNIT53

    def coin(self, p) -> bool:
        """True with probability ``p`` (a float or anything with ``__float__``)."""
        return self.uniform() < float(p)
