"""Optimality claims attached to constructed designs.

A claim records what the construction asserts; nothing here is checked.
Certification lives in :mod:`pcbd.optimality`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .info import IJForm, Matrix

CRITERION_TAGS = ("D", "A", "E", "TYPE_I", "TYPE_1_GEN", "TYPE_2_GEN")


@dataclass(frozen=True)
class OptimalityClaim:
    criteria: tuple[str, ...]
    form: IJForm | Matrix | None = None
    form_label: str = ""
    eigenvalues: tuple[Fraction, ...] | None = None
    orthogonal: bool | None = None
    extreme_eigenvalue: tuple[str, Fraction] | None = None
    delta_range: tuple[Fraction | None, Fraction | None] | None = None
    notes: tuple[str, ...] = field(default=())

    def __post_init__(self):
        bad = [c for c in self.criteria if c not in CRITERION_TAGS]
        if bad:
            raise ValueError(f"unknown criterion tags {bad}")
        if self.eigenvalues is not None:
            object.__setattr__(
                self, "eigenvalues", tuple(sorted(Fraction(v) for v in self.eigenvalues))
            )

    def as_dict(self) -> dict[str, Any]:
        if isinstance(self.form, IJForm):
            form: Any = {"type": "ij", **self.form.as_dict()}
        elif self.form is None:
            form = None
        else:
            form = {"type": "matrix", "entries": [[str(x) for x in r] for r in self.form]}
        return {
            "criteria": list(self.criteria),
            "form": form,
            "form_label": self.form_label,
            "eigenvalues": None if self.eigenvalues is None else [str(v) for v in self.eigenvalues],
            "orthogonal": self.orthogonal,
            "extreme_eigenvalue": None
            if self.extreme_eigenvalue is None
            else [self.extreme_eigenvalue[0], str(self.extreme_eigenvalue[1])],
            "delta_range": None
            if self.delta_range is None
            else [None if v is None else str(v) for v in self.delta_range],
            "notes": list(self.notes),
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "OptimalityClaim":
        form = data.get("form")
        if form is None:
            parsed = None
        elif form["type"] == "ij":
            beta = form.get("beta")
            parsed = IJForm(Fraction(form["alpha"]), None if beta is None else Fraction(beta))
        else:
            parsed = tuple(tuple(Fraction(x) for x in row) for row in form["entries"])
        eig = data.get("eigenvalues")
        ext = data.get("extreme_eigenvalue")
        dr = data.get("delta_range")
        return cls(
            criteria=tuple(data.get("criteria", ())),
            form=parsed,
            form_label=data.get("form_label", ""),
            eigenvalues=None if eig is None else tuple(Fraction(v) for v in eig),
            orthogonal=data.get("orthogonal"),
            extreme_eigenvalue=None if ext is None else (ext[0], Fraction(ext[1])),
            delta_range=None if dr is None else tuple(None if v is None else Fraction(v) for v in dr),
            notes=tuple(data.get("notes", ())),
        )
