from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterable, Optional, Tuple

from utils.exceptions import DimensionError, ParameterError


_LETTER_BITS: Dict[str, Tuple[int, int]] = {
    "I": (0, 0),
    "X": (1, 0),
    "Y": (1, 1),
    "Z": (0, 1),
}
_BITS_LETTER: Dict[Tuple[int, int], str] = {bits: letter for letter, bits in _LETTER_BITS.items()}


@dataclass(frozen=True, order=True)
class PauliString:
    """
    N-qubit Pauli word in symplectic form.

    Bit j of ``x`` is set for X or Y on qubit j, bit j of ``z`` for Z or Y.
    The operator represented is the Hermitian tensor product of the letters,
    so Y is the usual Pauli Y (not X·Z).

    Example:
        >>> p = PauliString.from_label("XIZY")
        >>> p.x, p.z
        (9, 12)
        >>> p.to_label()
        'XIZY'
    """

    n: int
    x: int = 0
    z: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise ParameterError(f"Pauli string needs at least one qubit, got n={self.n}")
        limit = 1 << self.n
        if self.x < 0 or self.z < 0 or self.x >= limit or self.z >= limit:
            raise ParameterError(f"Masks must fit in {self.n} bits (x={self.x}, z={self.z})")

    @classmethod
    def identity(cls, n: int) -> "PauliString":
        return cls(n, 0, 0)

    @classmethod
    def from_label(cls, label: str) -> "PauliString":
        """Parse "IXYZ..." notation, qubit 0 leftmost."""
        label = label.strip().upper()
        if not label:
            raise ParameterError("Empty Pauli label")
        x = z = 0
        for q, letter in enumerate(label):
            if letter not in _LETTER_BITS:
                raise ParameterError(f"Unsupported Pauli letter '{letter}' in '{label}'")
            xb, zb = _LETTER_BITS[letter]
            x |= xb << q
            z |= zb << q
        return cls(len(label), x, z)

    @classmethod
    def from_sites(cls, n: int, letters: Dict[int, str]) -> "PauliString":
        """
        Build a string from a sparse {site: letter} map.

        Args:
            n: Total qubit count
            letters: Mapping site index -> one of "I", "X", "Y", "Z"

        Returns:
            PauliString with the given letters and identity elsewhere
        """
        x = z = 0
        for q, letter in letters.items():
            if not 0 <= q < n:
                raise DimensionError(f"Site {q} out of range for {n} qubits")
            letter = letter.upper()
            if letter not in _LETTER_BITS:
                raise ParameterError(f"Unsupported Pauli letter '{letter}'")
            xb, zb = _LETTER_BITS[letter]
            x |= xb << q
            z |= zb << q
        return cls(n, x, z)

    @classmethod
    def from_word(cls, n: int, word: str) -> "PauliString":
        """Parse compact site notation such as "Z10 Z12 Y13 X21"."""
        letters: Dict[int, str] = {}
        for token in word.replace("·", " ").split():
            letter, site = token[0], int(token[1:])
            if site in letters:
                raise ParameterError(f"Site {site} repeated in word '{word}'")
            letters[site] = letter
        return cls.from_sites(n, letters)

    def letter(self, q: int) -> str:
        return _BITS_LETTER[((self.x >> q) & 1, (self.z >> q) & 1)]

    def to_label(self) -> str:
        return "".join(self.letter(q) for q in range(self.n))

    def to_word(self) -> str:
        """Compact site notation, e.g. "Y18 Z19 X20"; "I" for the identity."""
        tokens = [f"{self.letter(q)}{q}" for q in self.support()]
        return " ".join(tokens) if tokens else "I"

    def support(self) -> Tuple[int, ...]:
        mask = self.x | self.z
        return tuple(q for q in range(self.n) if (mask >> q) & 1)

    @property
    def weight(self) -> int:
        return (self.x | self.z).bit_count()

    def is_identity(self) -> bool:
        return self.x == 0 and self.z == 0

    def restrict(self, sites: Iterable[int]) -> "PauliString":
        """Local word on the listed sites; local qubit k is ``sites[k]``."""
        sites = list(sites)
        return PauliString.from_sites(len(sites), {k: self.letter(q) for k, q in enumerate(sites)})

    def __str__(self) -> str:
        return self.to_label()


def _check_sizes(p: PauliString, q: PauliString) -> None:
    if p.n != q.n:
        raise DimensionError(f"Pauli strings act on {p.n} and {q.n} qubits")


def commutes(p: PauliString, q: PauliString) -> bool:
    """True iff the symplectic product of p and q is even."""
    _check_sizes(p, q)
    return ((p.x & q.z).bit_count() + (p.z & q.x).bit_count()) % 2 == 0


def multiply(p: PauliString, q: PauliString) -> Tuple[int, PauliString]:
    """
    Product of two Pauli strings.

    Returns (k, r) with p·q = i^k · r. With P(x, z) = i^(x·z) X^x Z^z the
    exponent is x1·z1 + x2·z2 + 2·(z1·x2) - x3·z3 (mod 4).

    Example:
        >>> multiply(PauliString.from_label("X"), PauliString.from_label("Z"))
        (3, PauliString(n=1, x=1, z=1))
    """
    _check_sizes(p, q)
    x3 = p.x ^ q.x
    z3 = p.z ^ q.z
    k = (
        (p.x & p.z).bit_count()
        + (q.x & q.z).bit_count()
        + 2 * (p.z & q.x).bit_count()
        - (x3 & z3).bit_count()
    ) % 4
    return k, PauliString(p.n, x3, z3)


def multiply_all(strings: Iterable[PauliString], n: Optional[int] = None) -> Tuple[int, PauliString]:
    """Left-to-right product of several strings with accumulated phase exponent."""
    total_k = 0
    result: Optional[PauliString] = PauliString.identity(n) if n is not None else None
    for s in strings:
        if result is None:
            result = s
            continue
        k, result = multiply(result, s)
        total_k = (total_k + k) % 4
    if result is None:
        raise ParameterError("Cannot multiply an empty sequence without n")
    return total_k, result
