"""
Linear plumbings of spheres
Intersection forms, exact definiteness, determinants and boundary lens spaces
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from sympy import Matrix
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.exceptions import DMError

from src.contfrac import NegContFrac, evaluate
from src.errors import BlowdownError
from src.lattice import rational_str
from src.lens import LensSpace


@dataclass(frozen=True)
class SphereChain:
    coeffs: Tuple[int, ...]
    areas: Optional[Tuple[Fraction, ...]] = None

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(b) for b in self.coeffs))
        if not self.coeffs:
            raise BlowdownError("OutOfRange", "a chain needs at least one sphere")
        if any(b < 2 for b in self.coeffs):
            raise BlowdownError("OutOfRange", f"every b_j must be >= 2, got {list(self.coeffs)}")
        if self.areas is not None:
            areas = tuple(Fraction(a) for a in self.areas)
            if len(areas) != len(self.coeffs):
                raise BlowdownError("OutOfRange", f"{len(areas)} areas for {len(self.coeffs)} spheres")
            if any(a <= 0 for a in areas):
                raise BlowdownError("OutOfRange", "sphere areas must be positive")
            object.__setattr__(self, "areas", areas)

    @classmethod
    def from_contfrac(cls, cf: NegContFrac, areas: Optional[Sequence[Fraction]] = None) -> "SphereChain":
        return cls(cf.coeffs, None if areas is None else tuple(areas))

    @property
    def k(self) -> int:
        return len(self.coeffs)

    def reversed(self) -> "SphereChain":
        areas = None if self.areas is None else tuple(reversed(self.areas))
        return SphereChain(tuple(reversed(self.coeffs)), areas)

    def contfrac(self) -> NegContFrac:
        return NegContFrac(self.coeffs)

    def to_dict(self) -> dict:
        data = {"coeffs": list(self.coeffs)}
        if self.areas is not None:
            data["areas"] = [rational_str(a) for a in self.areas]
        return data


@dataclass(frozen=True)
class IntersectionForm:
    entries: Tuple[Tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return len(self.entries)

    def matrix(self) -> Matrix:
        return Matrix(self.to_list())

    def to_list(self) -> List[List[int]]:
        return [list(row) for row in self.entries]


def intersection_matrix(chain: SphereChain) -> IntersectionForm:
    k = chain.k
    rows = []
    for i in range(k):
        row = [0] * k
        row[i] = -chain.coeffs[i]
        if i > 0:
            row[i - 1] = 1
        if i < k - 1:
            row[i + 1] = 1
        rows.append(tuple(row))
    return IntersectionForm(tuple(rows))


def leading_minors(form: IntersectionForm) -> List[int]:
    m = form.matrix()
    if not m.is_symmetric():
        raise BlowdownError("NotSymmetric", f"{form.to_list()} is not symmetric")
    dm = DomainMatrix.from_Matrix(m)
    try:
        _, upper, swaps = dm.to_field().lu()
    except DMError:
        swaps = True
    if swaps:
        # some leading minor vanishes; one Bareiss determinant per block
        return [int(dm[:j, :j].det()) for j in range(1, form.size + 1)]
    pivots = upper.to_Matrix()
    minors, running = [], 1
    for j in range(form.size):
        running *= pivots[j, j]
        minors.append(int(running))
    return minors


def is_negative_definite(form: IntersectionForm) -> bool:
    return all((-1) ** j * minor > 0 for j, minor in enumerate(leading_minors(form), start=1))


def chain_determinant(chain: SphereChain) -> int:
    return int(DomainMatrix.from_Matrix(intersection_matrix(chain).matrix()).det())


def boundary_lens(chain: SphereChain) -> LensSpace:
    p, q = evaluate(chain.contfrac())
    return LensSpace.normalized(p, q)


def euler_characteristic(chain: SphereChain) -> int:
    return chain.k + 1


def signature(chain: SphereChain) -> int:
    return -chain.k
