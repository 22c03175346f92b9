"""
Term language: atoms, integers, variables, process ids, tuples and
arithmetic, plus environments binding variables to values.

All terms are immutable and hashable so they can live inside memoized
global states.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterator, Mapping, Optional

from app.constants.common import INT_MAX, INT_MIN

ATOM_RE = re.compile(r"[a-z][a-zA-Z0-9_]*")
VAR_RE = re.compile(r"[A-Z][a-zA-Z0-9_]*")


class ArithOp(str, Enum):
    ADD = "+"
    SUB = "-"
    MUL = "*"

    @property
    def precedence(self) -> int:
        return 2 if self is ArithOp.MUL else 1


@dataclass(frozen=True, slots=True)
class Atom:
    name: str

    def __post_init__(self):
        if not ATOM_RE.fullmatch(self.name):
            raise ValueError(f"invalid atom name {self.name!r}")

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True, slots=True)
class Int:
    value: int

    def __post_init__(self):
        if isinstance(self.value, bool) or not isinstance(self.value, int):
            raise ValueError(f"integer term needs an int, got {self.value!r}")
        if not INT_MIN <= self.value <= INT_MAX:
            raise ValueError(f"integer {self.value} outside the 64-bit range")

    def __str__(self) -> str:
        return str(self.value)


@dataclass(frozen=True, slots=True)
class Var:
    name: str

    def __post_init__(self):
        if not VAR_RE.fullmatch(self.name):
            raise ValueError(f"invalid variable name {self.name!r}")

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True, slots=True)
class Pid:
    id: int

    def __post_init__(self):
        if isinstance(self.id, bool) or not isinstance(self.id, int) or self.id < 0:
            raise ValueError(f"process id must be a non-negative int, got {self.id!r}")

    def __str__(self) -> str:
        return f"#{self.id}"


@dataclass(frozen=True, slots=True)
class Tuple:
    elements: tuple = ()

    def __post_init__(self):
        if not isinstance(self.elements, tuple):
            object.__setattr__(self, "elements", tuple(self.elements))

    def __str__(self) -> str:
        return "{" + ", ".join(str(e) for e in self.elements) + "}"


@dataclass(frozen=True, slots=True)
class BinOp:
    op: ArithOp
    left: "Term"
    right: "Term"

    def __post_init__(self):
        object.__setattr__(self, "op", ArithOp(self.op))

    def __str__(self) -> str:
        left = _operand(self.left, self.op, False)
        right = _operand(self.right, self.op, True)
        return f"{left} {self.op.value} {right}"


Term = Atom | Int | Var | Pid | Tuple | BinOp


def _operand(term: Term, parent: ArithOp, right: bool) -> str:
    if isinstance(term, BinOp):
        prec = term.op.precedence
        if prec < parent.precedence or (right and prec == parent.precedence):
            return f"({term})"
    elif isinstance(term, Int) and term.value < 0:
        return f"({term})"
    return str(term)


@dataclass(frozen=True, slots=True)
class Env:
    """
    Finite map from variable names to values, kept sorted by name so that
    equal environments compare and hash equal.
    """
    bindings: tuple[tuple[str, Term], ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "bindings", tuple(sorted(self.bindings, key=lambda kv: kv[0])))

    @classmethod
    def of(cls, mapping: Optional[Mapping[str, Term]] = None, **kwargs: Term) -> "Env":
        merged = dict(mapping or {})
        merged.update(kwargs)
        return cls(tuple(merged.items()))

    def get(self, name: str) -> Optional[Term]:
        """Return the binding for `name`, or None when it is unbound."""
        for key, value in self.bindings:
            if key == name:
                return value
        return None

    def __contains__(self, name: object) -> bool:
        return any(key == name for key, _ in self.bindings)

    def __len__(self) -> int:
        return len(self.bindings)

    def __iter__(self) -> Iterator[str]:
        return (key for key, _ in self.bindings)

    def items(self) -> tuple[tuple[str, Term], ...]:
        return self.bindings

    def as_dict(self) -> dict[str, Term]:
        return dict(self.bindings)

    def merge(self, other: "Env") -> "Env":
        """Right-biased union: bindings of `other` win on shared names."""
        if not other.bindings:
            return self
        merged = dict(self.bindings)
        merged.update(other.bindings)
        return Env(tuple(merged.items()))

    def restrict(self, names) -> "Env":
        keep = set(names)
        return Env(tuple((k, v) for k, v in self.bindings if k in keep))

    def __str__(self) -> str:
        return "{" + ", ".join(f"{k} -> {v}" for k, v in self.bindings) + "}"


EMPTY_ENV = Env()
