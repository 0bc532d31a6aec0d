"""Named instance corpora used by ``verify`` and the acceptance tests."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .algebra.poly import PolyC
from .contact import CurveGerm
from .local import IdealPresentation

__all__ = ["IdealInstance", "CylinderInstance", "CORPORA", "load", "multiplicity_corpus"]


@dataclass(frozen=True)
class IdealInstance:
    name: str
    ideal: IdealPresentation

    @property
    def nvars(self) -> int:
        return self.ideal.nvars


@dataclass(frozen=True)
class CylinderInstance:
    name: str
    ideal: IdealPresentation
    curve: CurveGerm
    directrix: tuple[tuple[int, ...], ...]
    q: int


def _mono(n: int, *exps) -> IdealPresentation:
    return IdealPresentation(n, tuple(PolyC.monomial(n, e) for e in exps))


def _name(I: IdealPresentation) -> str:
    return "(" + ", ".join(str(g) for g in I.generators) + ")"


def _ideals(*ideals) -> list[IdealInstance]:
    return [IdealInstance(_name(I), I) for I in ideals]


def monomial_small() -> list[IdealInstance]:
    return _ideals(
        _mono(2, (1, 0), (0, 1)),
        _mono(2, (2, 0), (0, 3)),
        _mono(2, (2, 0), (1, 1), (0, 2)),
        _mono(2, (1, 1), (3, 0), (0, 3)),
        _mono(3, (1, 0, 0), (0, 1, 0), (0, 0, 1)),
        _mono(3, (2, 0, 0), (0, 2, 0), (0, 0, 2)),
        _mono(3, (0, 3, 0), (0, 0, 3)),
    )


def monomial() -> list[IdealInstance]:
    """Twenty monomial ideals in two and three variables."""
    return _ideals(
        _mono(2, (1, 0), (0, 1)),
        _mono(2, (2, 0), (0, 3)),
        _mono(2, (2, 0), (1, 1), (0, 2)),
        _mono(2, (1, 1), (3, 0), (0, 3)),
        _mono(2, (4, 0), (0, 2)),
        _mono(2, (3, 0), (1, 2), (0, 5)),
        _mono(2, (5, 0), (2, 1), (0, 3)),
        _mono(2, (1, 0), (0, 4)),
        _mono(3, (1, 0, 0), (0, 1, 0), (0, 0, 1)),
        _mono(3, (2, 0, 0), (0, 2, 0), (0, 0, 2)),
        _mono(3, (0, 3, 0), (0, 0, 3)),
        _mono(3, (2, 0, 0), (0, 3, 0), (0, 0, 5)),
        _mono(3, (1, 0, 0), (0, 2, 0), (0, 0, 3)),
        _mono(3, (3, 0, 0), (0, 3, 0), (0, 0, 3), (1, 1, 1)),
        _mono(3, (1, 1, 0), (0, 1, 1), (1, 0, 1)),
        _mono(3, (4, 0, 0), (0, 2, 0), (0, 0, 2)),
        _mono(3, (2, 0, 0), (0, 0, 4)),
        _mono(3, (1, 2, 0), (0, 0, 3), (3, 0, 0), (0, 4, 0)),
        _mono(3, (2, 0, 0), (0, 2, 0), (0, 0, 3), (1, 1, 0)),
        _mono(3, (0, 2, 0), (0, 0, 2), (1, 1, 1)),
    )


def main() -> list[IdealInstance]:
    """Instances with n >= 3 on which the Catlin and generic q-types are compared."""
    return _ideals(
        _mono(3, (2, 0, 0), (0, 2, 0), (0, 0, 2)),
        _mono(3, (0, 3, 0), (0, 0, 3)),
        _mono(3, (1, 0, 0), (0, 1, 0), (0, 0, 1)),
        _mono(3, (2, 0, 0), (0, 3, 0), (0, 0, 5)),
        _mono(3, (1, 0, 0), (0, 2, 0), (0, 0, 3)),
        _mono(3, (3, 0, 0), (0, 3, 0), (0, 0, 3), (1, 1, 1)),
        _mono(3, (1, 1, 0), (0, 1, 1), (1, 0, 1)),
        _mono(3, (4, 0, 0), (0, 2, 0), (0, 0, 2)),
        _mono(3, (2, 0, 0), (0, 0, 4)),
        _mono(3, (1, 2, 0), (0, 0, 3), (3, 0, 0), (0, 4, 0)),
        _mono(4, (2, 0, 0, 0), (0, 2, 0, 0), (0, 0, 3, 0), (0, 0, 0, 3)),
        _mono(4, (0, 0, 2, 0), (0, 0, 0, 5)),
    )


def cylinder() -> list[CylinderInstance]:
    z = [PolyC.variable(3, j) for j in range(3)]
    e3 = ((0,), (0,), (1,))
    e2 = ((0,), (1,), (0,))
    cusp = CurveGerm.monomial([2, 3, 0])
    twisted = CurveGerm.monomial([1, 2, 3])
    line = CurveGerm.monomial([1, 1, 0])
    out = [
        CylinderInstance("(z2) over (t^2, t^3, 0)", IdealPresentation.of(z[1]), cusp, e3, 2),
        CylinderInstance("(z3) over (t^2, t^3, 0)", IdealPresentation.of(z[2]), cusp, e3, 2),
        CylinderInstance("(z2^2 - z1^3) over (t^2, t^3, 0)", IdealPresentation.of(z[1] ** 2 - z[0] ** 3), cusp, e3, 2),
        CylinderInstance("(z1, z2, z3) over (t^2, t^3, 0)", IdealPresentation.of(*z), cusp, e3, 2),
        CylinderInstance("(z1^2, z3^3) over (t, t^2, t^3)", IdealPresentation.of(z[0] ** 2, z[2] ** 3), twisted, e2, 2),
        CylinderInstance("(z1 - z2, z3^2) over (t, t, 0)", IdealPresentation.of(z[0] - z[1], z[2] ** 2), line, e3, 2),
        CylinderInstance("(z2^3, z3^3) over (t, t, 0)", IdealPresentation.of(z[1] ** 3, z[2] ** 3), line, e3, 2),
    ]
    return out


def multiplicity_corpus(count: int = 60, seed: int = 7) -> list[IdealInstance]:
    """Zero-dimensional ideals in n <= 3 variables with generators of degree <= 5.

    Each ideal holds pure powers of all variables, some extra monomials, and
    every other ideal has one generator perturbed by a term of higher degree
    (which keeps the lowest-degree form, hence zero-dimensionality).
    """
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.choice((1, 2, 2, 3, 3))
        exps = []
        for j in range(n):
            k = rng.randint(1, 5 if n < 3 else 4)
            exps.append(tuple(k if i == j else 0 for i in range(n)))
        for _ in range(rng.randint(0, 2)):
            e = tuple(rng.randint(0, 3) for _ in range(n))
            if 0 < sum(e) <= 5:
                exps.append(e)
        gens = [PolyC.monomial(n, e) for e in dict.fromkeys(exps)]
        if len(out) % 2:
            j = rng.randrange(len(gens))
            d = gens[j].degree
            e = [0] * n
            for _ in range(min(d + 1, 5)):
                e[rng.randrange(n)] += 1
            if sum(e) > d:
                gens[j] = gens[j] + PolyC.monomial(n, e, rng.choice((1, -1, 2, 3)))
        I = IdealPresentation(n, tuple(gens))
        out.append(IdealInstance(_name(I), I))
    return out


def _fixed_multiplicity() -> list[IdealInstance]:
    return _ideals(_mono(2, (1, 0), (0, 1)), _mono(2, (2, 0), (1, 1), (0, 2)), _mono(2, (2, 0), (0, 3)))


CORPORA = {
    "monomial-small": monomial_small,
    "monomial": monomial,
    "main": main,
    "cylinder": cylinder,
    "multiplicity": lambda: _fixed_multiplicity() + multiplicity_corpus(),
}


def load(name: str):
    try:
        return CORPORA[name]()
    except KeyError:
        raise ValueError(f"unknown corpus {name!r}; choose from {', '.join(sorted(CORPORA))}") from None
