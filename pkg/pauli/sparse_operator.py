from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Tuple, Union

import numpy as np

from pauli.pauli_string import PauliString, commutes, multiply
from utils.exceptions import DimensionError, ParameterError


WORD_BITS = 64
_WORD_MASK = (1 << WORD_BITS) - 1


@dataclass(frozen=True)
class PauliTerm:
    string: PauliString
    coeff: float


def num_words(n: int) -> int:
    return (n + WORD_BITS - 1) // WORD_BITS


def masks_to_words(masks: Iterable[int], n: int) -> np.ndarray:
    """Pack Python int masks into a (len, words) uint64 block matrix."""
    masks = list(masks)
    blocks = np.zeros((len(masks), num_words(n)), dtype=np.uint64)
    for w in range(blocks.shape[1]):
        shift = WORD_BITS * w
        blocks[:, w] = np.fromiter(((m >> shift) & _WORD_MASK for m in masks), dtype=np.uint64, count=len(masks))
    return blocks


def words_to_mask(row: np.ndarray) -> int:
    mask = 0
    for w, value in enumerate(row):
        mask |= int(value) << (WORD_BITS * w)
    return mask


def canonical_merge(x: np.ndarray, z: np.ndarray, c: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Sum duplicate Pauli keys and drop exact zeros.

    Rows come back ordered lexicographically on (z_mask, x_mask), most
    significant word first. The sort is stable, so duplicates are summed in
    their input order and the result is bit-reproducible.
    """
    if c.size == 0:
        return x, z, c
    n_words = x.shape[1]
    sort_keys = [x[:, w] for w in range(n_words)] + [z[:, w] for w in range(n_words)]
    order = np.lexsort(sort_keys)
    xs, zs, cs = x[order], z[order], c[order]

    new_group = np.ones(cs.size, dtype=bool)
    new_group[1:] = np.any(xs[1:] != xs[:-1], axis=1) | np.any(zs[1:] != zs[:-1], axis=1)
    starts = np.flatnonzero(new_group)
    sums = np.add.reduceat(cs, starts)

    keep = sums != 0.0
    return xs[starts][keep], zs[starts][keep], sums[keep]


class SparseOperator:
    """
    Real linear combination of N-qubit Pauli strings.

    Terms live in three parallel arrays (x words, z words, coefficients) kept
    in canonical order with unique keys and no zero coefficients.

    Example:
        >>> op = SparseOperator.from_labels({"ZZ": 0.7, "XI": 1.0})
        >>> op.expectation_zero()
        0.7
    """

    def __init__(self, n: int, terms: Optional[Union[Mapping[PauliString, float], Iterable[Tuple[PauliString, float]]]] = None):
        if n < 1:
            raise ParameterError(f"Operator needs at least one qubit, got n={n}")
        self.n = n
        pairs: List[Tuple[PauliString, float]] = []
        if terms is not None:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for string, coeff in items:
                if string.n != n:
                    raise DimensionError(f"Term {string} acts on {string.n} qubits, operator on {n}")
                coeff = float(coeff)
                if not math.isfinite(coeff):
                    raise ParameterError(f"Non-finite coefficient for {string}")
                pairs.append((string, coeff))
        x = masks_to_words((s.x for s, _ in pairs), n)
        z = masks_to_words((s.z for s, _ in pairs), n)
        c = np.array([coeff for _, coeff in pairs], dtype=np.float64)
        self._x, self._z, self._c = canonical_merge(x, z, c)

    @classmethod
    def from_arrays(cls, n: int, x: np.ndarray, z: np.ndarray, c: np.ndarray, canonical: bool = False) -> "SparseOperator":
        """Wrap raw word arrays; merges unless the caller guarantees canonical form."""
        op = cls.__new__(cls)
        op.n = n
        if canonical:
            op._x, op._z, op._c = x, z, c
        else:
            op._x, op._z, op._c = canonical_merge(x, z, c)
        return op

    @classmethod
    def from_labels(cls, terms: Mapping[str, float]) -> "SparseOperator":
        strings = {PauliString.from_label(label): coeff for label, coeff in terms.items()}
        sizes = {s.n for s in strings}
        if len(sizes) != 1:
            raise DimensionError(f"Labels have inconsistent lengths {sorted(sizes)}")
        return cls(sizes.pop(), strings.items())

    @classmethod
    def single(cls, string: PauliString, coeff: float = 1.0) -> "SparseOperator":
        return cls(string.n, [(string, coeff)])

    @classmethod
    def zero(cls, n: int) -> "SparseOperator":
        return cls(n)

    @property
    def x_words(self) -> np.ndarray:
        return self._x

    @property
    def z_words(self) -> np.ndarray:
        return self._z

    @property
    def coeffs(self) -> np.ndarray:
        return self._c

    def __len__(self) -> int:
        return int(self._c.size)

    def __iter__(self) -> Iterator[PauliTerm]:
        return iter(self.terms())

    def terms(self) -> List[PauliTerm]:
        return [
            PauliTerm(PauliString(self.n, words_to_mask(self._x[i]), words_to_mask(self._z[i])), float(self._c[i]))
            for i in range(len(self))
        ]

    def to_dict(self) -> Dict[PauliString, float]:
        return {term.string: term.coeff for term in self.terms()}

    def coefficient(self, string: PauliString) -> float:
        return self.to_dict().get(string, 0.0)

    def truncate(self, delta_c: float) -> "SparseOperator":
        """Keep terms with |coeff| strictly greater than delta_c."""
        if not math.isfinite(delta_c) or delta_c < 0:
            raise ParameterError(f"Truncation threshold must be finite and >= 0, got {delta_c}")
        keep = np.abs(self._c) > delta_c
        return SparseOperator.from_arrays(self.n, self._x[keep], self._z[keep], self._c[keep], canonical=True)

    def expectation_zero(self) -> float:
        """<0...0|O|0...0>: only strings without X/Y letters contribute."""
        diagonal = ~np.any(self._x != 0, axis=1)
        return float(np.sum(self._c[diagonal]))

    def expectation_plus(self) -> float:
        """<+...+|O|+...+>: only strings without Z/Y letters contribute."""
        diagonal = ~np.any(self._z != 0, axis=1)
        return float(np.sum(self._c[diagonal]))

    def norm_squared(self) -> float:
        return float(np.dot(self._c, self._c))

    def one_norm(self) -> float:
        return float(np.sum(np.abs(self._c)))

    def _check_compatible(self, other: "SparseOperator") -> None:
        if other.n != self.n:
            raise DimensionError(f"Operators act on {self.n} and {other.n} qubits")

    def __add__(self, other: "SparseOperator") -> "SparseOperator":
        self._check_compatible(other)
        return SparseOperator.from_arrays(
            self.n,
            np.concatenate([self._x, other._x]),
            np.concatenate([self._z, other._z]),
            np.concatenate([self._c, other._c]),
        )

    def __sub__(self, other: "SparseOperator") -> "SparseOperator":
        return self + (-1.0) * other

    def __mul__(self, scalar: float) -> "SparseOperator":
        return SparseOperator.from_arrays(self.n, self._x.copy(), self._z.copy(), self._c * float(scalar))

    __rmul__ = __mul__

    def __neg__(self) -> "SparseOperator":
        return self * -1.0

    def allclose(self, other: "SparseOperator", atol: float = 1e-12) -> bool:
        self._check_compatible(other)
        diff = self - other
        return bool(np.all(np.abs(diff.coeffs) <= atol))

    def commutes_with(self, other: "SparseOperator", atol: float = 1e-12) -> bool:
        """
        Exact symbolic check that [self, other] vanishes.

        Only anticommuting pairs contribute, each as 2·a·b·P·Q.
        """
        self._check_compatible(other)
        accumulated: Dict[PauliString, complex] = {}
        for a in self.terms():
            for b in other.terms():
                if commutes(a.string, b.string):
                    continue
                k, r = multiply(a.string, b.string)
                accumulated[r] = accumulated.get(r, 0.0) + 2.0 * a.coeff * b.coeff * (1j ** k)
        return all(abs(value) <= atol for value in accumulated.values())

    def dump(self) -> str:
        """One line per term, ``<coeff> <label>``, in canonical order."""
        return "\n".join(f"{term.coeff:.17g} {term.string.to_label()}" for term in self.terms())

    @classmethod
    def from_dump(cls, text: str) -> "SparseOperator":
        terms: Dict[str, float] = {}
        for line in text.splitlines():
            line = line.strip()
            if not line:
                continue
            coeff, label = line.split()
            terms[label] = terms.get(label, 0.0) + float(coeff)
        return cls.from_labels(terms)

    def __repr__(self) -> str:
        return f"SparseOperator(n={self.n}, terms={len(self)})"


def truncate(op: SparseOperator, delta_c: float) -> SparseOperator:
    return op.truncate(delta_c)


def expectation_zero(op: SparseOperator) -> float:
    return op.expectation_zero()


def expectation_plus(op: SparseOperator) -> float:
    return op.expectation_plus()
