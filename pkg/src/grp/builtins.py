"""Named groups and the JSON group format."""
import json
from pathlib import Path
from typing import Callable, Dict, List, Optional

from pydantic import BaseModel, Field, ValidationError
from sympy.combinatorics.named_groups import (
    AlternatingGroup,
    CyclicGroup,
    DihedralGroup,
    SymmetricGroup,
)

from src.errors import InvalidInput
from src.grp.group import PermGroup


class GroupPayload(BaseModel):
    """JSON group format: {"degree": n, "generators": [[images]]}."""

    degree: int = Field(ge=1, description="Number of points permuted")
    generators: List[List[int]] = Field(default_factory=list, description="Generator image lists")

    def build(self, name: Optional[str] = None) -> PermGroup:
        return PermGroup(self.degree, self.generators, name=name)

    @classmethod
    def from_group(cls, g: PermGroup) -> "GroupPayload":
        return cls(degree=g.ground_size, generators=[list(p) for p in g.generators])

    def to_json_file(self, path: Path) -> None:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8") as f:
            f.write(self.model_dump_json(indent=2))

    @classmethod
    def from_json_file(cls, path: Path) -> "GroupPayload":
        if not path.exists():
            raise FileNotFoundError(f"Group file not found: {path}")
        with open(path, "r", encoding="utf-8") as f:
            return cls.model_validate(json.load(f))


def _from_sympy(sympy_group, name: str) -> PermGroup:
    degree = sympy_group.degree
    gens = [tuple(p.array_form) for p in sympy_group.generators if not p.is_Identity]
    return PermGroup(degree, gens, name=name)


def cyclic(n: int) -> PermGroup:
    """Z/n acting regularly on n points."""
    if n < 1:
        raise ValueError(f"Cyclic order must be positive, got {n}")
    if n == 1:
        return trivial()
    return _from_sympy(CyclicGroup(n), f"C{n}")


def symmetric(n: int) -> PermGroup:
    if n < 1:
        raise ValueError(f"Symmetric degree must be positive, got {n}")
    if n == 1:
        return trivial()
    return _from_sympy(SymmetricGroup(n), f"S{n}")


def dihedral(n: int) -> PermGroup:
    """The dihedral group of order 2n acting on the n-gon (n ≥ 3)."""
    if n < 3:
        raise ValueError(f"Dihedral group needs n ≥ 3, got {n}")
    return _from_sympy(DihedralGroup(n), f"D{n}")


def alternating(n: int) -> PermGroup:
    if n < 3:
        raise ValueError(f"Alternating group needs n ≥ 3, got {n}")
    return _from_sympy(AlternatingGroup(n), f"A{n}")


def trivial() -> PermGroup:
    return PermGroup(1, [], name="C1")


BUILTIN_GROUPS: Dict[str, Callable[[], PermGroup]] = {
    "C1": trivial,
    "C2": lambda: cyclic(2),
    "C3": lambda: cyclic(3),
    "C4": lambda: cyclic(4),
    "C6": lambda: cyclic(6),
    "S3": lambda: symmetric(3),
    "D4": lambda: dihedral(4),
    "A4": lambda: alternating(4),
}


def resolve_group(ref: str) -> PermGroup:
    """
    Resolve a group reference.

    Args:
        ref: A builtin name ("C2", "S3", …), "Cn"/"Sn" for small n, or a path
            to a JSON group file

    Returns:
        The group

    Raises:
        InvalidInput: If the reference is neither a known name nor a valid file
    """
    if ref in BUILTIN_GROUPS:
        return BUILTIN_GROUPS[ref]()
    if len(ref) > 1 and ref[0] in "CS" and ref[1:].isdigit():
        n = int(ref[1:])
        return cyclic(n) if ref[0] == "C" else symmetric(n)
    path = Path(ref)
    if path.suffix == ".json":
        try:
            return GroupPayload.from_json_file(path).build(name=path.stem)
        except ValidationError as e:
            raise InvalidInput(f"Invalid group file {path}: {e}")
    raise InvalidInput(
        f"Unknown group reference {ref!r}; expected one of {sorted(BUILTIN_GROUPS)} or a .json file"
    )
