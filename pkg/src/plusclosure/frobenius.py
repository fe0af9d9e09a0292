"""Frobenius closure membership with replayable certificates, and the
equational sufficient condition for plus-closure membership."""

from __future__ import annotations

from dataclasses import dataclass, field

from .groebner import (
    DEFAULT_PAIR_LIMIT,
    GroebnerResourceError,
    IdealPresentation,
    bracket_power,
    buchberger,
    colon_ideal,
    ideal_membership,
)
from .poly import Polynomial

__all__ = [
    "FrobeniusCertificate",
    "Found",
    "NotFoundUpTo",
    "frobenius_closure_test",
    "CriterionReport",
    "equational_criterion_check",
]


@dataclass(frozen=True)
class FrobeniusCertificate:
    """Witness that element^q lies in ideal^[q] with q = p^e."""

    e: int
    q: int
    element: Polynomial
    ideal: IdealPresentation

    def replay(self, pair_limit: int = DEFAULT_PAIR_LIMIT) -> bool:
        """Re-derive the membership from scratch."""
        if self.q != self.element.p ** self.e:
            return False
        target = self.element.frobenius_power(self.q)
        return ideal_membership(target, bracket_power(self.ideal, self.q), pair_limit=pair_limit)

    def as_dict(self) -> dict:
        return {"e": self.e, "q": self.q, "element": str(self.element), "ideal": [str(g) for g in self.ideal.generators]}


@dataclass(frozen=True)
class Found:
    certificate: FrobeniusCertificate

    @property
    def e(self) -> int:
        return self.certificate.e

    def __bool__(self):
        return True


@dataclass(frozen=True)
class NotFoundUpTo:
    e_max: int

    def __bool__(self):
        return False


def frobenius_closure_test(
    z: Polynomial,
    I: IdealPresentation,
    e_max: int = 6,
    pair_limit: int = DEFAULT_PAIR_LIMIT,
) -> Found | NotFoundUpTo:
    """Smallest e <= e_max with z^(p^e) in I^[p^e] (modulo I's relations)."""
    if e_max < 0:
        raise ValueError("e_max must be nonnegative")
    if z.ring != I.ring:
        raise ValueError(f"ring mismatch: {z.ring} vs {I.ring}")
    p = I.modulus.p
    for e in range(e_max + 1):
        q = p**e
        try:
            member = ideal_membership(z.frobenius_power(q), bracket_power(I, q), pair_limit=pair_limit)
        except GroebnerResourceError as exc:
            raise GroebnerResourceError(f"Frobenius closure search at e={e} (q={q}): {exc}") from exc
        if member:
            return Found(FrobeniusCertificate(e, q, z, I))
    return NotFoundUpTo(e_max)


@dataclass
class CriterionReport:
    holds: bool
    colon_generators: list[Polynomial] = field(default_factory=list)
    normal_form: Polynomial | None = None

    def __bool__(self):
        return self.holds

    def as_dict(self) -> dict:
        return {
            "holds": self.holds,
            "colon_generators": [str(g) for g in self.colon_generators],
            "normal_form": str(self.normal_form),
        }


def equational_criterion_check(
    z: Polynomial,
    xs,
    quotient_relations=(),
    pair_limit: int = DEFAULT_PAIR_LIMIT,
) -> CriterionReport:
    """Decide z^p in (x_1^p, ..., x_k^p) + z * ((x_1^p, ..., x_k^p) : (x_1, ..., x_k)).

    When this holds in a domain, z lies in the expansion of (x_1, ..., x_k)
    to some module-finite extension; a False answer says nothing about
    plus-closure membership.
    """
    xs = list(xs)
    if not xs:
        raise ValueError("need at least one ideal generator")
    ring = z.ring
    rels = tuple(quotient_relations)
    base = IdealPresentation(tuple(xs), rels, ring)
    rel_gb = buchberger(base.with_generators(()), pair_limit=pair_limit) if rels else None
    for x in xs:
        if not x or (rel_gb is not None and rel_gb.contains(x)):
            raise ValueError(f"generator {x} is zero in the quotient ring")
    p = ring.p
    frob = bracket_power(base, p)
    colon = colon_ideal(frob, base, pair_limit)
    target = frob.with_generators(frob.generators + tuple(z * c for c in colon.generators))
    gb = buchberger(target, pair_limit=pair_limit)
    nf = gb.normal_form(z.frobenius_power(p))
    return CriterionReport(not nf, list(colon.generators), nf)
