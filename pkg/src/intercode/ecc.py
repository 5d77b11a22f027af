"""Block codes used by the exchange and block-coded schemes.

Codewords are ``numpy`` integer vectors.  Received words may carry the value
:data:`JUNK` (-1) in coordinates that match no codeword at all; junk never
agrees with any codeword coordinate.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Any, Iterable, Optional, Sequence

import numpy as np

JUNK = -1
MAX_REPETITION_BITS = 24
BRUTE_FORCE_CAP = 1 << 20
_TABLE_FIELD_CAP = 1 << 10


class CapExceeded(RuntimeError):
    """Brute-force decoding was requested on a message space that is too large."""


def _factor_prime_power(q: int) -> tuple[int, int]:
    if q < 2:
        raise ValueError(f"field size must be >= 2, got {q}")
    p = next(d for d in itertools.chain(range(2, math.isqrt(q) + 1), [q]) if q % d == 0)
    k, rest = 0, q
    while rest % p == 0:
        rest //= p
        k += 1
    if rest != 1:
        raise ValueError(f"{q} is not a prime power")
    return p, k


def _poly_mod(a: list[int], f: list[int], p: int) -> list[int]:
    # Coefficients little-endian; f monic.
    a = a[:]
    while len(a) >= len(f):
        lead = a[-1] % p
        if lead:
            shift = len(a) - len(f)
            for i, c in enumerate(f):
                a[shift + i] = (a[shift + i] - lead * c) % p
        a.pop()
    return a


def _is_irreducible(f: list[int], p: int) -> bool:
    k = len(f) - 1
    for deg in range(1, k // 2 + 1):
        for tail in itertools.product(range(p), repeat=deg):
            g = list(tail) + [1]
            if not any(_poly_mod(f, g, p)):
                return False
    return True


class GaloisField:
    """Arithmetic in GF(q).  Prime fields use modular arithmetic; prime powers use tables."""

    def __init__(self, q: int):
        self.p, self.k = _factor_prime_power(q)
        self.q = q
        self.add_table = self.mul_table = None
        if self.k > 1:
            if q > _TABLE_FIELD_CAP:
                raise ValueError(f"extension fields above {_TABLE_FIELD_CAP} elements are not supported")
            self._build_tables()

    def _build_tables(self) -> None:
        p, k, q = self.p, self.k, self.q
        f = next(list(t) + [1] for t in itertools.product(range(p), repeat=k)
                 if _is_irreducible(list(t) + [1], p))
        digits = np.array([[(x // p ** i) % p for i in range(k)] for x in range(q)], dtype=np.int64)
        weights = p ** np.arange(k)
        self.add_table = ((digits[:, None, :] + digits[None, :, :]) % p) @ weights

        def mul(a: int, b: int) -> int:
            prod = [0] * (2 * k - 1)
            for i in range(k):
                for j in range(k):
                    prod[i + j] += int(digits[a, i]) * int(digits[b, j])
            rem = _poly_mod([c % p for c in prod], f, p) + [0] * k
            return sum(rem[i] * p ** i for i in range(k))

        table = np.zeros((q, q), dtype=np.int64)
        for a in range(1, q):
            for b in range(a, q):
                table[a, b] = table[b, a] = mul(a, b)
        self.mul_table = table

    def add(self, a, b):
        if self.k == 1:
            return (a + b) % self.q
        return self.add_table[a, b]

    def mul(self, a, b):
        if self.k == 1:
            return (a * b) % self.q
        return self.mul_table[a, b]

    def eval_poly(self, coeffs: Sequence[int], xs: np.ndarray) -> np.ndarray:
        acc = np.zeros_like(xs)
        for c in reversed(list(coeffs)):
            acc = self.add(self.mul(acc, xs), np.int64(c))
        return np.asarray(acc, dtype=np.int64)


class BlockCode:
    """Injective map from a finite message space into ``alphabet ** length``."""

    length: int
    q: int
    min_distance: int
    num_messages: Optional[int]
    is_repetition = False

    def encode(self, message) -> np.ndarray:
        raise NotImplementedError

    def message_id(self, message) -> int:
        return int(message)

    def messages(self) -> Iterable:
        if self.num_messages is None:
            raise CapExceeded("message space is not enumerable")
        return range(self.num_messages)

    @property
    def relative_distance(self) -> float:
        return self.min_distance / self.length

    def codebook(self) -> np.ndarray:
        """Matrix of all codewords, row ``i`` encoding message id ``i``."""
        if self.num_messages is None or self.num_messages * self.length > 64 * BRUTE_FORCE_CAP:
            raise CapExceeded(f"codebook of {self.num_messages} messages is too large")
        cached = getattr(self, "_codebook", None)
        if cached is None:
            cached = np.stack([self.encode(m) for m in self.messages()])
            self._codebook = cached
        return cached


@dataclass(eq=False)
class RepetitionCode(BlockCode):
    """An ``n``-bit message written as one symbol of a ``2**n`` alphabet, ``length`` times."""

    bits: int
    length: int
    is_repetition = True

    def __post_init__(self) -> None:
        if self.length < 1:
            raise ValueError("length must be >= 1")
        if not 1 <= self.bits <= MAX_REPETITION_BITS:
            raise ValueError(f"bits must be in [1, {MAX_REPETITION_BITS}], got {self.bits}")
        self.q = 1 << self.bits
        self.num_messages = self.q
        self.min_distance = self.length

    def encode(self, message) -> np.ndarray:
        m = int(message)
        if not 0 <= m < self.q:
            raise ValueError(f"message {m} outside [0, {self.q})")
        return np.full(self.length, m, dtype=np.int64)


@dataclass(eq=False)
class ConcatenatedCode(BlockCode):
    """``copies`` back-to-back copies of a base codeword."""

    base: BlockCode
    copies: int

    def __post_init__(self) -> None:
        if self.copies < 1:
            raise ValueError("copies must be >= 1")
        self.length = self.base.length * self.copies
        self.q = self.base.q
        self.num_messages = self.base.num_messages
        self.min_distance = self.base.min_distance * self.copies
        self.is_repetition = self.base.is_repetition

    def encode(self, message) -> np.ndarray:
        return np.tile(self.base.encode(message), self.copies)

    def message_id(self, message) -> int:
        return self.base.message_id(message)

    def messages(self) -> Iterable:
        return self.base.messages()


@dataclass(eq=False)
class ReedSolomonCode(BlockCode):
    """Evaluations of a degree < ``k`` polynomial at the field elements ``0 .. length-1``.

    Messages are either an integer id (base-``q`` digits, least significant
    first, are the polynomial coefficients) or a length-``k`` symbol sequence.
    """

    k: int
    length: int
    q: int
    field_: GaloisField = field(init=False, repr=False)

    def __post_init__(self) -> None:
        if not 1 <= self.k <= self.length <= self.q:
            raise ValueError(f"need 1 <= k <= length <= q, got k={self.k}, length={self.length}, q={self.q}")
        self.field_ = GaloisField(self.q)
        self.points = np.arange(self.length, dtype=np.int64)
        self.min_distance = self.length - self.k + 1
        size = self.q ** self.k
        self.num_messages = size if size <= BRUTE_FORCE_CAP else None

    def symbols(self, message) -> tuple[int, ...]:
        if isinstance(message, (int, np.integer)):
            m = int(message)
            if not 0 <= m < self.q ** self.k:
                raise ValueError(f"message id {m} out of range")
            return tuple((m // self.q ** i) % self.q for i in range(self.k))
        coeffs = tuple(int(c) for c in message)
        if len(coeffs) != self.k or any(not 0 <= c < self.q for c in coeffs):
            raise ValueError(f"message must be {self.k} symbols in [0, {self.q})")
        return coeffs

    def message_id(self, message) -> int:
        return sum(c * self.q ** i for i, c in enumerate(self.symbols(message)))

    def encode(self, message) -> np.ndarray:
        return self.field_.eval_poly(self.symbols(message), self.points)


def make_repetition_code(n: int, length: int) -> RepetitionCode:
    return RepetitionCode(n, length)


def make_rs_code(k: int, length: int, q: int) -> ReedSolomonCode:
    return ReedSolomonCode(k, length, q)


def hamming(a: np.ndarray, b: np.ndarray) -> int:
    return int(np.count_nonzero(np.asarray(a) != np.asarray(b)))


def _majority(code: BlockCode, word: np.ndarray) -> tuple[int, int]:
    valid = word[(word >= 0) & (word < code.q)]
    if valid.size == 0:
        return 0, code.length
    counts = np.bincount(valid, minlength=code.q) if code.q <= 1 << 16 else None
    if counts is not None:
        best = int(np.argmax(counts))  # argmax returns the smallest index on ties
        return best, code.length - int(counts[best])
    values, counts = np.unique(valid, return_counts=True)
    best = int(values[np.argmax(counts)])
    return best, code.length - int(counts.max())


def min_distance_decode(code: BlockCode, word) -> tuple[int, int]:
    """Closest message (smallest id on ties) and its Hamming distance."""
    word = np.asarray(word, dtype=np.int64)
    if word.shape != (code.length,):
        raise ValueError(f"word length {word.shape} does not match code length {code.length}")
    if code.is_repetition:
        return _majority(code, word)
    if code.num_messages is None or code.num_messages > BRUTE_FORCE_CAP:
        raise CapExceeded(f"no brute-force decoding above {BRUTE_FORCE_CAP} messages")
    book = code.codebook()
    dist = np.count_nonzero(book != word, axis=1)
    best = int(np.argmin(dist))
    return best, int(dist[best])


@dataclass
class ReceivedBlock:
    """A received word together with the codewords it was assembled from.

    ``constituents`` lists messages (the sender's first).  Every non-junk
    coordinate of ``word`` equals that coordinate of some constituent.
    """

    word: np.ndarray
    constituents: list = field(default_factory=list)

    def check(self, code: BlockCode, max_constituents: int = 3) -> None:
        if len(self.constituents) > max_constituents:
            raise ValueError(f"at most {max_constituents} constituents allowed")
        word = np.asarray(self.word)
        if word.shape != (code.length,):
            raise ValueError("word length does not match the code")
        covered = word == JUNK
        for m in self.constituents:
            covered |= code.encode(m) == word
        if not covered.all():
            raise ValueError("word has coordinates matching no constituent and not tagged junk")


def list_decode(code: BlockCode, block: ReceivedBlock, radius: float,
                list_cap: Optional[int] = None) -> list[tuple[Any, float]]:
    """Constituents within relative distance ``radius`` of the word, closest first."""
    seen: dict[int, tuple[Any, float]] = {}
    for m in block.constituents:
        mid = code.message_id(m)
        if mid in seen:
            continue
        delta = hamming(code.encode(m), block.word) / code.length
        if delta <= radius + 1e-12:
            seen[mid] = (m, delta)
    out = sorted(seen.items(), key=lambda kv: (kv[1][1], kv[0]))
    result = [v for _, v in out]
    if list_cap is not None:
        result = result[:list_cap]
    return result


def brute_force_list_decode(code: BlockCode, word, radius: float) -> list[tuple[int, float]]:
    """Every message id within relative distance ``radius`` (exhaustive oracle)."""
    word = np.asarray(word, dtype=np.int64)
    book = code.codebook()
    delta = np.count_nonzero(book != word, axis=1) / code.length
    ids = np.nonzero(delta <= radius + 1e-12)[0]
    return sorted(((int(i), float(delta[i])) for i in ids), key=lambda t: (t[1], t[0]))


def vote_weight(delta: float) -> float:
    if not 0.0 <= delta <= 1.0:
        raise ValueError(f"relative distance must lie in [0, 1], got {delta}")
    return max(1.0 - 2.0 * delta, 0.0)


def smallest_prime_at_least(x: int) -> int:
    n = max(2, x)
    while any(n % d == 0 for d in range(2, math.isqrt(n) + 1)):
        n += 1
    return n
