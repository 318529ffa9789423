"""Free noncommutative words of modes and the normal-ordering identities.

Fields here use the weight-one labelling a(z) = sum_n a_n z**(-n-1).  All
identities are checked in the free algebra: no commutation relations are
imposed, so anything that holds is a pure rearrangement.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from .distributions import as_window
from .fields import FieldSymbol

NCWord = tuple  # tuple of (symbol name, mode index), length <= 2


class WordSeries:
    """sum over (z-exp, w-exp) of a Q-linear combination of NCWords."""

    __slots__ = ("_data",)

    def __init__(self, data: Mapping[tuple[int, int], Mapping[NCWord, Fraction]] | None = None):
        clean = {}
        for key, combo in (data or {}).items():
            c = {w: Fraction(v) for w, v in combo.items() if v}
            if c:
                clean[key] = c
        self._data = clean

    def __add__(self, other: "WordSeries") -> "WordSeries":
        out = {k: dict(v) for k, v in self._data.items()}
        for key, combo in other._data.items():
            tgt = out.setdefault(key, {})
            for w, v in combo.items():
                tgt[w] = tgt.get(w, 0) + v
        return WordSeries(out)

    def __neg__(self):
        return WordSeries({k: {w: -v for w, v in c.items()} for k, c in self._data.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: "WordSeries") -> "WordSeries":
        out: dict = {}
        for (i1, k1), c1 in self._data.items():
            for (i2, k2), c2 in other._data.items():
                tgt = out.setdefault((i1 + i2, k1 + k2), {})
                for w1, v1 in c1.items():
                    for w2, v2 in c2.items():
                        w = w1 + w2
                        tgt[w] = tgt.get(w, 0) + v1 * v2
        return WordSeries(out)

    def dz(self) -> "WordSeries":
        return WordSeries({(i - 1, k): {w: v * i for w, v in c.items()}
                           for (i, k), c in self._data.items() if i})

    def is_zero(self) -> bool:
        return not self._data

    def keys(self):
        return sorted(self._data)

    def __eq__(self, other):
        if not isinstance(other, WordSeries):
            return NotImplemented
        return self._data == other._data

    def __repr__(self):
        return f"WordSeries({sum(len(c) for c in self._data.values())} words)"


def field_series(a: FieldSymbol, window, var: str = "z",
                 modes: Iterable[int] | None = None) -> WordSeries:
    """a(var) = sum_n a_n var**(-n-1) over |n| <= window (or the given modes)."""
    window = as_window(window)
    ns = window.range() if modes is None else modes
    data = {}
    for n in ns:
        key = (-n - 1, 0) if var == "z" else (0, -n - 1)
        data[key] = {((a.name, n),): 1}
    return WordSeries(data)


def split_series(s: WordSeries) -> tuple[WordSeries, WordSeries]:
    """(negative part, positive part): z-exponents < 0 versus >= 0."""
    neg = {k: c for k, c in s._data.items() if k[0] < 0}
    pos = {k: c for k, c in s._data.items() if k[0] >= 0}
    return WordSeries(neg), WordSeries(pos)


def split_field(a: FieldSymbol, window, modes: Iterable[int] | None = None):
    """a(z)_- = sum_{n>=0} a_n z**(-n-1) and a(z)_+ = sum_{n<0} a_n z**(-n-1)."""
    return split_series(field_series(a, window, "z", modes))


def commutator(x: WordSeries, y: WordSeries) -> WordSeries:
    return x * y - y * x


def normal_ordered(a: FieldSymbol, b: FieldSymbol, window) -> WordSeries:
    """:a(z)b(w): = a(z)_+ b(w) + b(w) a(z)_-."""
    neg, pos = split_field(a, window)
    bw = field_series(b, window, "w")
    return pos * bw + bw * neg


def verify_normal_order_identity(a: FieldSymbol, b: FieldSymbol, window) -> bool:
    """Both rearrangement identities, coefficient by coefficient:

    a(z)b(w) = [a(z)_-, b(w)] + :a(z)b(w):
    b(w)a(z) = -[a(z)_+, b(w)] + :a(z)b(w):
    """
    az = field_series(a, window, "z")
    bw = field_series(b, window, "w")
    neg, pos = split_series(az)
    nord = pos * bw + bw * neg
    first = az * bw == commutator(neg, bw) + nord
    second = bw * az == -commutator(pos, bw) + nord
    return first and second
