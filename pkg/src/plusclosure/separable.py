"""Separable module-finite extensions forcing a Frobenius-closure element
into the expanded ideal.

Given z^q = a_0 x_0^q + ... + a_n x_n^q, adjoin roots U_i of the monic
separable equations U_i^q + U_i x_0^q - a_i = 0 (1 <= i <= n).  Then
u_0 = (z - sum x_i U_i) / x_0 satisfies u_0^q = a_0 + sum U_i x_i^q, hence is
integral, and z = sum_{i >= 0} x_i u_i lies in the expanded ideal.
"""

from __future__ import annotations

import random
from dataclasses import InitVar, dataclass

from .arith import as_modulus
from .groebner import DEFAULT_PAIR_LIMIT, IdealPresentation, buchberger, ideal_membership
from .poly import MonomialOrder, Polynomial, Ring

__all__ = [
    "WitnessError",
    "FrobeniusWitness",
    "ExtensionPresentation",
    "build_extension",
    "verify_separability",
    "verify_u0_identity",
    "symplectic_b_image",
    "verify_symplectic_example",
    "random_witness",
    "perturb_witness",
    "parse_witness",
]


class WitnessError(ValueError):
    """The data does not satisfy z^q = sum a_i x_i^q (or some x_i vanishes)."""


def _reducer(ring: Ring, rels):
    if not rels:
        return lambda f: f
    gb = buchberger(IdealPresentation((), tuple(rels), ring))
    return gb.normal_form


@dataclass(frozen=True)
class FrobeniusWitness:
    q: int
    z: Polynomial
    x: tuple[Polynomial, ...]
    a: tuple[Polynomial, ...]
    quotient_relations: tuple[Polynomial, ...] = ()
    validate: InitVar[bool] = True

    def __post_init__(self, validate):
        object.__setattr__(self, "x", tuple(self.x))
        object.__setattr__(self, "a", tuple(self.a))
        object.__setattr__(self, "quotient_relations", tuple(self.quotient_relations))
        if len(self.x) != len(self.a) or not self.x:
            raise WitnessError("need matching, nonempty lists x_0..x_n and a_0..a_n")
        ring = self.z.ring
        for f in self.x + self.a + self.quotient_relations:
            if f.ring != ring:
                raise WitnessError(f"{f} lives in {f.ring}, expected {ring}")
        e = ring.modulus.log(self.q)
        if e is None or e < 1:
            raise WitnessError(f"q={self.q} must be p^e with e >= 1 for p={ring.p}")
        if validate:
            self.check()

    @property
    def ring(self) -> Ring:
        return self.z.ring

    @property
    def n(self) -> int:
        return len(self.x) - 1

    def residual(self) -> Polynomial:
        """Normal form of z^q - sum a_i x_i^q modulo the relations."""
        q = self.q
        diff = self.z.frobenius_power(q)
        for ai, xi in zip(self.a, self.x):
            diff = diff - ai * xi.frobenius_power(q)
        return _reducer(self.ring, self.quotient_relations)(diff)

    def check(self):
        nf = _reducer(self.ring, self.quotient_relations)
        for i, xi in enumerate(self.x):
            if not nf(xi):
                raise WitnessError(f"x{i} = {xi} is zero modulo the relations")
        res = self.residual()
        if res:
            raise WitnessError(f"z^q - sum a_i x_i^q has nonzero normal form {res}")


@dataclass(frozen=True)
class ExtensionPresentation:
    """R[U_1, ..., U_n] / (r_1, ..., r_n) over R = base / quotient_relations."""

    base: Ring
    ring: Ring  # U variables first, then the base variables
    u_vars: tuple[str, ...]
    relations: tuple[Polynomial, ...]
    quotient_relations: tuple[Polynomial, ...]  # embedded into ``ring``
    u0_numerator: Polynomial
    u0_denominator: Polynomial
    witness: FrobeniusWitness | None = None

    @property
    def order(self) -> MonomialOrder:
        return MonomialOrder.block(len(self.u_vars))

    def ideal(self) -> IdealPresentation:
        return IdealPresentation(self.relations, self.quotient_relations, self.ring)


def _u_names(ring: Ring, n: int) -> list[str]:
    names = []
    for i in range(1, n + 1):
        name = f"U{i}"
        while name in ring.vars:
            name += "_"
        names.append(name)
    return names


def build_extension(w: FrobeniusWitness) -> ExtensionPresentation:
    base = w.ring
    names = _u_names(base, w.n)
    ring = base.extend(names, front=True)
    q = w.q
    x = [f.to_ring(ring) for f in w.x]
    a = [f.to_ring(ring) for f in w.a]
    x0q = x[0].frobenius_power(q)
    U = [ring.gen(v) for v in names]
    relations = tuple(U[i - 1] ** q + U[i - 1] * x0q - a[i] for i in range(1, w.n + 1))
    numerator = w.z.to_ring(ring)
    for i in range(1, w.n + 1):
        numerator = numerator - x[i] * U[i - 1]
    return ExtensionPresentation(
        base=base,
        ring=ring,
        u_vars=tuple(names),
        relations=relations,
        quotient_relations=tuple(r.to_ring(ring) for r in w.quotient_relations),
        u0_numerator=numerator,
        u0_denominator=x[0],
        witness=w,
    )


def _leading_coeff_in(f: Polynomial, var: str) -> tuple[int, Polynomial]:
    i = f.ring.vars.index(var)
    d = f.degree(var)
    lead = {m[:i] + (0,) + m[i + 1:]: c for m, c in f.terms.items() if m[i] == d}
    return d, Polynomial(f.ring, lead)


def verify_separability(E: ExtensionPresentation) -> bool:
    """Each r_i is monic in U_i, free of the other U's, with derivative
    nonzero modulo the quotient relations."""
    if len(E.relations) != len(E.u_vars):
        return False
    reduce = _reducer(E.ring, E.quotient_relations)
    for var, r in zip(E.u_vars, E.relations):
        if not r or r.degree(var) < 1:
            return False
        if any(r.degree(other) > 0 for other in E.u_vars if other != var):
            return False
        _, lc = _leading_coeff_in(r, var)
        if lc != E.ring.one():
            return False
        if not reduce(r.derivative(var)):
            return False
    return True


def verify_u0_identity(E: ExtensionPresentation, pair_limit: int = DEFAULT_PAIR_LIMIT) -> bool:
    """(z - sum x_i U_i)^q - x_0^q (a_0 + sum U_i x_i^q) lies in (r_1, ..., r_n) + relations."""
    w = E.witness
    if w is None:
        raise ValueError("presentation carries no witness data")
    ring = E.ring
    q = w.q
    x = [f.to_ring(ring) for f in w.x]
    rhs = w.a[0].to_ring(ring)
    for i, var in enumerate(E.u_vars, start=1):
        rhs = rhs + ring.gen(var) * x[i].frobenius_power(q)
    lhs = E.u0_numerator.frobenius_power(q)
    target = lhs - E.u0_denominator.frobenius_power(q) * rhs
    if not target:
        return True
    return ideal_membership(target, E.ideal(), E.order, pair_limit)


# -- the polynomial-ring example --------------------------------------------


def _prime_of(q: int) -> int:
    if q < 2:
        raise ValueError(f"q={q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    as_modulus(p)
    if as_modulus(p).log(q) is None:
        raise ValueError(f"q={q} is not a prime power")
    return p


def symplectic_b_image(q: int) -> Polynomial:
    """Image of B in F_p[X, Y, U, V] under Z -> UX + VY, A -> U^q + U Y^q,
    forced by Z^q - A X^q - B Y^q = 0: solve B = ((UX + VY)^q - A X^q) / Y^q."""
    p = _prime_of(q)
    S = Ring("X,Y,U,V", p)
    X, Y, U, V = S.gens
    z_img = (U * X + V * Y) ** q
    a_img = U**q + U * Y**q
    return (z_img - a_img * X**q).divexact(Y**q)


def verify_symplectic_example(q: int) -> bool:
    """The hypersurface F_p[X,Y,Z,A,B]/(Z^q - AX^q - BY^q) maps into the
    polynomial ring F_p[X,Y,U,V] with u the root of U^q - a + U y^q and
    v = (z - ux)/y; check both defining relations map to zero."""
    p = _prime_of(q)
    R = Ring("X,Y,Z,A,B,U", p)
    S = Ring("X,Y,U,V", p)
    X, Y, U, V = S.gens
    images = {
        "X": X,
        "Y": Y,
        "Z": U * X + V * Y,
        "A": U**q + U * Y**q,
        "B": symplectic_b_image(q),
        "U": U,
    }
    hyper = R(f"Z^{q} - A*X^{q} - B*Y^{q}")
    u_rel = R(f"U^{q} - A + U*Y^{q}")
    if hyper.substitute(images, S) or u_rel.substitute(images, S):
        return False
    # v = (z - u x) / y must be the coordinate V itself
    return (images["Z"] - U * X).divexact(Y) == V


# -- witness generation and I/O ---------------------------------------------


def _random_poly(rng: random.Random, ring: Ring, max_degree: int, nonzero: bool = False) -> Polynomial:
    while True:
        terms = {}
        for _ in range(rng.randint(1, 4)):
            exps = [0] * ring.nvars
            for _ in range(rng.randint(0, max_degree)):
                exps[rng.randrange(ring.nvars)] += 1
            terms[tuple(exps)] = rng.randrange(ring.p)
        f = Polynomial(ring, terms)
        if f or not nonzero:
            return f


def random_witness(
    rng: random.Random,
    p: int,
    q: int,
    n: int,
    max_degree: int = 3,
    ring: Ring | None = None,
    max_tries: int = 1000,
) -> FrobeniusWitness:
    """A valid witness in a polynomial ring, a_0 obtained by exact division.

    z and a_1..a_n are drawn as z = x_0 w + sum c_i x_i, a_i = x_0^q b_i + c_i^q
    so that z^q - sum_{i>=1} a_i x_i^q is divisible by x_0^q.
    """
    ring = ring or Ring("x,y,z", p)
    for _ in range(max_tries):
        xs = [_random_poly(rng, ring, max_degree, nonzero=True) for _ in range(n + 1)]
        x0q = xs[0].frobenius_power(q)
        z = xs[0] * _random_poly(rng, ring, max_degree)
        a_rest = []
        for i in range(1, n + 1):
            c = _random_poly(rng, ring, max(0, max_degree - 1))
            b = _random_poly(rng, ring, max_degree)
            z = z + c * xs[i]
            a_rest.append(x0q * b + c.frobenius_power(q))
        rem = z.frobenius_power(q)
        for ai, xi in zip(a_rest, xs[1:]):
            rem = rem - ai * xi.frobenius_power(q)
        quo, r = rem.divmod_single(x0q)
        if r:
            continue
        return FrobeniusWitness(q, z, tuple(xs), (quo,) + tuple(a_rest))
    raise RuntimeError("could not generate a witness")


def perturb_witness(w: FrobeniusWitness, index: int) -> FrobeniusWitness:
    """Same data with a_index replaced by a_index + 1 (no validity check)."""
    a = list(w.a)
    a[index] = a[index] + 1
    return FrobeniusWitness(w.q, w.z, w.x, tuple(a), w.quotient_relations, validate=False)


def parse_witness(text: str) -> FrobeniusWitness:
    """Read ``p=<int> q=<int>`` followed by ``z=``, ``x<i>=``, ``a<i>=`` and
    repeatable ``rel=`` lines.  An optional ``vars=x,y,...`` line fixes the
    ambient; otherwise variables are taken in order of first appearance."""
    import re

    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines:
        raise WitnessError("empty witness file")
    header = dict(tok.split("=", 1) for tok in lines[0].split())
    try:
        p, q = int(header["p"]), int(header["q"])
    except (KeyError, ValueError):
        raise WitnessError(f"bad header {lines[0]!r}; expected 'p=<int> q=<int>'") from None
    fields: dict[str, str] = {}
    rels: list[str] = []
    names: list[str] | None = None
    for line in lines[1:]:
        key, sep, value = line.partition("=")
        key = key.strip()
        if not sep:
            raise WitnessError(f"expected key=value, got {line!r}")
        if key == "rel":
            rels.append(value)
        elif key == "vars":
            names = [v.strip() for v in value.split(",") if v.strip()]
        elif key == "z" or re.fullmatch(r"[xa]\d+", key):
            if key in fields:
                raise WitnessError(f"duplicate entry {key}")
            fields[key] = value
        else:
            raise WitnessError(f"unknown entry {key!r}")
    if "z" not in fields:
        raise WitnessError("missing z=")
    count = sum(1 for k in fields if k.startswith("x"))
    for i in range(count):
        if f"x{i}" not in fields or f"a{i}" not in fields:
            raise WitnessError(f"missing x{i} or a{i}")
    if sum(1 for k in fields if k.startswith("a")) != count:
        raise WitnessError("x and a lists differ in length")
    if names is None:
        names = []
        for src in list(fields.values()) + rels:
            for tok in re.findall(r"[A-Za-z_][A-Za-z0-9_]*", src):
                if tok not in names:
                    names.append(tok)
    ring = Ring(names, p)
    return FrobeniusWitness(
        q,
        ring.parse(fields["z"]),
        tuple(ring.parse(fields[f"x{i}"]) for i in range(count)),
        tuple(ring.parse(fields[f"a{i}"]) for i in range(count)),
        tuple(ring.parse(r) for r in rels),
    )
