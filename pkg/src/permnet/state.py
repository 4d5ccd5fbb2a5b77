"""Sparse multi-mode Fock state vectors."""

from __future__ import annotations

from typing import Iterable, Iterator, Mapping

import numpy as np

from .errors import DimensionMismatch

#: Amplitudes smaller than this are dropped after a transform.
PRUNE_ATOL = 1e-14


class FockState:
    """A pure state ``sum_k a_k |k>`` stored as ``{occupation tuple: amplitude}``.

    Keys are occupation vectors of length ``modes``. Iteration and
    serialisation follow sorted key order, so two equal states always print
    the same way.
    """

    __slots__ = ("modes", "_amps")

    def __init__(self, modes: int, amplitudes: Mapping | Iterable = ()):
        if modes < 1:
            raise ValueError(f"modes must be positive, got {modes}")
        self.modes = int(modes)
        self._amps: dict[tuple[int, ...], complex] = {}
        items = amplitudes.items() if isinstance(amplitudes, Mapping) else amplitudes
        for key, amp in items:
            self.add(key, amp)

    @classmethod
    def basis(cls, occupation) -> "FockState":
        occ = tuple(int(x) for x in occupation)
        return cls(len(occ), {occ: 1.0})

    @classmethod
    def vacuum(cls, modes: int) -> "FockState":
        return cls.basis((0,) * modes)

    def _key(self, occupation) -> tuple[int, ...]:
        key = tuple(int(x) for x in occupation)
        if len(key) != self.modes:
            raise DimensionMismatch(f"occupation {key} has length {len(key)}, expected {self.modes}")
        if any(x < 0 for x in key):
            raise ValueError(f"negative occupation in {key}")
        return key

    def add(self, occupation, amplitude) -> None:
        """Accumulate ``amplitude`` onto ``|occupation>``."""
        key = self._key(occupation)
        self._amps[key] = self._amps.get(key, 0.0) + complex(amplitude)

    def __getitem__(self, occupation) -> complex:
        return self._amps.get(self._key(occupation), 0.0 + 0.0j)

    def __contains__(self, occupation) -> bool:
        return self._key(occupation) in self._amps

    def __len__(self) -> int:
        return len(self._amps)

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        return iter(sorted(self._amps))

    def items(self) -> list[tuple[tuple[int, ...], complex]]:
        return [(k, self._amps[k]) for k in sorted(self._amps)]

    def pruned(self, atol: float = PRUNE_ATOL) -> "FockState":
        return FockState(self.modes, {k: a for k, a in self._amps.items() if abs(a) >= atol})

    def norm2(self) -> float:
        return float(sum(abs(a) ** 2 for a in self._amps.values()))

    def total_photons(self) -> int:
        """Largest photon number present (0 for an empty state)."""
        return max((sum(k) for k in self._amps), default=0)

    def __add__(self, other: "FockState") -> "FockState":
        if not isinstance(other, FockState):
            return NotImplemented
        if other.modes != self.modes:
            raise DimensionMismatch(f"cannot add {self.modes}-mode and {other.modes}-mode states")
        out = FockState(self.modes, self._amps)
        for k, a in other._amps.items():
            out.add(k, a)
        return out

    def __mul__(self, scalar) -> "FockState":
        s = complex(scalar)
        return FockState(self.modes, {k: s * a for k, a in self._amps.items()})

    __rmul__ = __mul__

    def max_abs_diff(self, other: "FockState") -> float:
        """Entrywise ``max |a_k - b_k|`` over the union of supports."""
        if other.modes != self.modes:
            raise DimensionMismatch(f"{self.modes}-mode vs {other.modes}-mode state")
        keys = set(self._amps) | set(other._amps)
        return max((abs(self[k] - other[k]) for k in keys), default=0.0)

    def to_array(self, cutoff: int | None = None) -> np.ndarray:
        """Dense amplitude tensor with one axis per mode.

        Each axis has length ``cutoff`` (default: one more than the largest
        occupation present).
        """
        if cutoff is None:
            cutoff = 1 + max((max(k) for k in self._amps), default=0)
        out = np.zeros((cutoff,) * self.modes, dtype=np.complex128)
        for k, a in self._amps.items():
            out[k] += a
        return out

    def to_json(self) -> dict:
        return {
            "modes": self.modes,
            "amplitudes": [
                {"occupation": list(k), "amplitude": [a.real, a.imag]} for k, a in self.items()
            ],
        }

    @classmethod
    def from_json(cls, doc: Mapping) -> "FockState":
        return cls(
            doc["modes"],
            [(e["occupation"], complex(*e["amplitude"])) for e in doc["amplitudes"]],
        )

    def __repr__(self) -> str:
        terms = ", ".join(f"{k}: {a:.6g}" for k, a in self.items()[:6])
        more = ", ..." if len(self) > 6 else ""
        return f"FockState(modes={self.modes}, {{{terms}{more}}})"
