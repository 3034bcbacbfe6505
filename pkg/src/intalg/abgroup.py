"""Finitely generated abelian groups in invariant-factor normal form."""
from typing import Dict, Iterable, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator
from sympy import factorint


class AbGroup(BaseModel):
    """
    Z^free_rank ⊕ Z/d_1 ⊕ … ⊕ Z/d_k with d_1 | d_2 | … | d_k, every d_i ≥ 2.

    Equality is structural equality of normal forms.

    Example:
        >>> str(AbGroup.from_invariants([0, 2, 3]))
        'Z ⊕ Z/6'
    """

    model_config = ConfigDict(frozen=True)

    free_rank: int = Field(default=0, ge=0, description="Rank of the free part")
    torsion: Tuple[int, ...] = Field(
        default=(),
        description="Invariant factors d_1 | d_2 | … | d_k, each at least 2"
    )

    @field_validator("torsion")
    @classmethod
    def divisibility_chain(cls, v: Tuple[int, ...]) -> Tuple[int, ...]:
        for d in v:
            if d < 2:
                raise ValueError(f"Invariant factor {d} must be at least 2")
        for a, b in zip(v, v[1:]):
            if b % a:
                raise ValueError(f"Invariant factors {a}, {b} break the divisibility chain")
        return tuple(v)

    @classmethod
    def trivial(cls) -> "AbGroup":
        return cls()

    @classmethod
    def free(cls, rank: int) -> "AbGroup":
        return cls(free_rank=rank)

    @classmethod
    def cyclic(cls, order: int) -> "AbGroup":
        """Z/order, with order 0 meaning Z."""
        return cls.from_invariants([order])

    @classmethod
    def from_invariants(cls, orders: Iterable[int]) -> "AbGroup":
        """
        Normalize a direct sum of cyclic groups.

        Args:
            orders: Cyclic orders; 0 stands for Z, 1 for the trivial group

        Returns:
            The group in invariant-factor normal form
        """
        free = 0
        primes: Dict[int, List[int]] = {}
        for n in orders:
            n = abs(int(n))
            if n == 0:
                free += 1
            elif n > 1:
                for p, e in factorint(n).items():
                    primes.setdefault(p, []).append(e)
        width = max((len(es) for es in primes.values()), default=0)
        factors = [1] * width
        for p, es in primes.items():
            es = sorted(es, reverse=True)
            for k, e in enumerate(es):
                factors[width - 1 - k] *= p ** e
        return cls(free_rank=free, torsion=tuple(f for f in factors if f > 1))

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    @property
    def order(self) -> Optional[int]:
        """Group order, or None if the group is infinite."""
        if self.free_rank:
            return None
        out = 1
        for d in self.torsion:
            out *= d
        return out

    @property
    def exponent(self) -> Optional[int]:
        if self.free_rank:
            return None
        return self.torsion[-1] if self.torsion else 1

    def primary_parts(self) -> Dict[int, Tuple[int, ...]]:
        """Prime-power orders of the primary decomposition, per prime."""
        parts: Dict[int, List[int]] = {}
        for d in self.torsion:
            for p, e in factorint(d).items():
                parts.setdefault(p, []).append(p ** e)
        return {p: tuple(sorted(v)) for p, v in sorted(parts.items())}

    def direct_sum(self, other: "AbGroup") -> "AbGroup":
        return AbGroup.from_invariants([0] * (self.free_rank + other.free_rank) + list(self.torsion) + list(other.torsion))

    def __add__(self, other: "AbGroup") -> "AbGroup":
        return self.direct_sum(other)

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " ⊕ ".join(parts) if parts else "0"
