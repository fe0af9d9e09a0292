"""Buchberger's algorithm over F_p with normal forms, membership, bracket
powers, intersections and colon ideals.

Ideals in a quotient ring F_p[x]/(r_1, ..., r_s) are handled by appending the
relations r_i to the generators before any basis computation.
"""

from __future__ import annotations

import heapq
import logging
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .poly import GREVLEX, MonomialOrder, Polynomial, Ring

__all__ = [
    "DEFAULT_PAIR_LIMIT",
    "GroebnerResourceError",
    "IdealPresentation",
    "GroebnerBasis",
    "buchberger",
    "normal_form",
    "ideal_membership",
    "bracket_power",
    "ideal_intersection",
    "colon_ideal",
    "s_polynomial",
    "is_groebner",
]

log = logging.getLogger(__name__)

DEFAULT_PAIR_LIMIT = 100_000
_EXP_BITS = 33  # 32 value bits + 1 guard bit per variable


class GroebnerResourceError(RuntimeError):
    """Raised when a basis computation exceeds its configured work limit."""


@dataclass(frozen=True)
class IdealPresentation:
    """Generators of an ideal of R = F_p[vars] / (quotient_relations)."""

    generators: tuple[Polynomial, ...]
    quotient_relations: tuple[Polynomial, ...] = ()
    ring: Ring | None = field(default=None, compare=False)

    def __post_init__(self):
        gens = tuple(g for g in self.generators)
        rels = tuple(r for r in self.quotient_relations if r)
        ring = self.ring
        if ring is None:
            if gens:
                ring = gens[0].ring
            elif rels:
                ring = rels[0].ring
            else:
                raise ValueError("cannot infer the ring of an empty ideal; pass ring=")
        for f in gens + rels:
            if not isinstance(f, Polynomial):
                raise TypeError(f"expected Polynomial, got {type(f).__name__}")
            if f.ring != ring:
                raise ValueError(f"generator {f} lives in {f.ring}, expected {ring}")
        # zero generators contribute nothing
        object.__setattr__(self, "generators", tuple(g for g in gens if g))
        object.__setattr__(self, "quotient_relations", rels)
        object.__setattr__(self, "ring", ring)

    @classmethod
    def of(cls, ring: Ring, gens: Iterable, quotient: Iterable = ()) -> "IdealPresentation":
        """Build from polynomials or strings in the poly grammar."""
        return cls(tuple(ring(g) for g in gens), tuple(ring(r) for r in quotient), ring)

    @property
    def modulus(self):
        return self.ring.modulus

    @property
    def ambient(self):
        return self.ring.vars

    def all_generators(self) -> tuple[Polynomial, ...]:
        return self.generators + self.quotient_relations

    def with_generators(self, gens: Iterable[Polynomial]) -> "IdealPresentation":
        return IdealPresentation(tuple(gens), self.quotient_relations, self.ring)

    def __add__(self, other: "IdealPresentation") -> "IdealPresentation":
        _check_compatible(self, other)
        return self.with_generators(self.generators + other.generators)

    def __str__(self):
        gens = ", ".join(str(g) for g in self.generators)
        if self.quotient_relations:
            rels = ", ".join(str(r) for r in self.quotient_relations)
            return f"({gens}) in {self.ring} / ({rels})"
        return f"({gens}) in {self.ring}"


def _check_compatible(I: IdealPresentation, J: IdealPresentation):
    if I.ring != J.ring:
        raise ValueError(f"ring mismatch: {I.ring} vs {J.ring}")
    if set(I.quotient_relations) != set(J.quotient_relations):
        raise ValueError("ideals live in different quotient rings")


# -- packed engine ---------------------------------------------------------
#
# Inside the engine a term is (key, expword, coeff): ``key`` is the additive
# order key from MonomialOrder.key, ``expword`` packs the exponents into
# _EXP_BITS-wide fields whose top bit is a guard used for divisibility tests.
# Polynomials are lists of terms sorted by decreasing key.


class _Engine:
    def __init__(self, ring: Ring, order: MonomialOrder):
        self.ring = ring
        self.order = order
        self.n = ring.nvars
        self.p = ring.p
        guard = 0
        for i in range(self.n):
            guard |= 1 << (_EXP_BITS * i + _EXP_BITS - 1)
        self.guard = guard
        self.field_mask = (1 << (_EXP_BITS - 1)) - 1

    def pack(self, exps) -> int:
        w = 0
        for i, e in enumerate(exps):
            w |= e << (_EXP_BITS * i)
        return w

    def unpack(self, w: int) -> tuple[int, ...]:
        m = self.field_mask
        return tuple((w >> (_EXP_BITS * i)) & m for i in range(self.n))

    def to_internal(self, f: Polynomial) -> list:
        key = self.order.key
        terms = [(key(m), self.pack(m), c) for m, c in f.terms.items()]
        terms.sort(reverse=True)
        return terms

    def to_poly(self, terms) -> Polynomial:
        return Polynomial(self.ring, {self.unpack(w): c for _, w, c in terms}, _trusted=True)

    def monic(self, terms) -> list:
        if not terms or terms[0][2] == 1:
            return terms
        p = self.p
        inv = pow(terms[0][2], -1, p)
        return [(k, w, c * inv % p) for k, w, c in terms]

    def divides(self, a: int, b: int) -> bool:
        g = self.guard
        return ((b | g) - a) & g == g

    def lcm(self, a: int, b: int) -> int:
        m = self.field_mask
        w = 0
        for i in range(self.n):
            s = _EXP_BITS * i
            w |= max((a >> s) & m, (b >> s) & m) << s
        return w

    def coprime(self, a: int, b: int) -> bool:
        m = self.field_mask
        for i in range(self.n):
            s = _EXP_BITS * i
            if (a >> s) & m and (b >> s) & m:
                return False
        return True

    def degree(self, w: int) -> int:
        m = self.field_mask
        return sum((w >> (_EXP_BITS * i)) & m for i in range(self.n))

    def key_of(self, w: int) -> int:
        return self.order.key(self.unpack(w))

    def reduce(self, start: dict, basis: Sequence[list], full: bool = True) -> list:
        """Reduce the polynomial ``start`` ({key: (expword, coeff)}) by ``basis``
        (monic, sorted term lists).  Returns sorted remainder terms, monic-free."""
        p = self.p
        g_mask = self.guard
        coef = {k: c for k, (w, c) in start.items()}
        expo = {k: w for k, (w, c) in start.items()}
        heap = [-k for k in coef]
        heapq.heapify(heap)
        leads = [(b[0][1], b) for b in basis]
        out = []
        pop = heapq.heappop
        push = heapq.heappush
        while heap:
            k = -pop(heap)
            c = coef.pop(k, None)
            if c is None:
                continue
            w = expo.pop(k)
            for lw, g in leads:
                if ((w | g_mask) - lw) & g_mask == g_mask:
                    ks = k - g[0][0]
                    ws = w - lw
                    for kt, wt, ct in g[1:]:
                        kk = kt + ks
                        v = coef.get(kk)
                        if v is None:
                            coef[kk] = (-c * ct) % p
                            expo[kk] = wt + ws
                            push(heap, -kk)
                        else:
                            v = (v - c * ct) % p
                            if v:
                                coef[kk] = v
                            else:
                                del coef[kk]
                                del expo[kk]
                    break
            else:
                out.append((k, w, c))
                if not full:
                    # lead is irreducible; the tail is kept unreduced
                    for kk in sorted(coef, reverse=True):
                        out.append((kk, expo[kk], coef[kk]))
                    return out
        return out

    def spoly_start(self, f: list, g: list) -> dict:
        """S-polynomial of monic f and g as a dict for :meth:`reduce`."""
        p = self.p
        lw = self.lcm(f[0][1], g[0][1])
        lk = self.key_of(lw)
        out: dict = {}
        ks, ws = lk - f[0][0], lw - f[0][1]
        for kt, wt, ct in f[1:]:
            out[kt + ks] = (wt + ws, ct)
        ks, ws = lk - g[0][0], lw - g[0][1]
        for kt, wt, ct in g[1:]:
            kk = kt + ks
            old = out.get(kk)
            if old is None:
                out[kk] = (wt + ws, (-ct) % p)
            else:
                v = (old[1] - ct) % p
                if v:
                    out[kk] = (old[0], v)
                else:
                    del out[kk]
        return out


def _as_start(terms) -> dict:
    return {k: (w, c) for k, w, c in terms}


@dataclass(frozen=True)
class GroebnerBasis:
    """A (reduced, monic) Groebner basis."""

    elements: tuple[Polynomial, ...]
    order: MonomialOrder
    ring: Ring
    reduced: bool = True
    stats: dict = field(default_factory=dict, compare=False, repr=False)

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def is_unit_ideal(self) -> bool:
        return len(self.elements) == 1 and self.elements[0].is_constant()

    def leading_monomials(self) -> list[tuple[int, ...]]:
        return [g.leading_monomial(self.order) for g in self.elements]

    def _engine_basis(self):
        cached = self.stats.get("_engine")
        if cached is None:
            eng = _Engine(self.ring, self.order)
            cached = (eng, [eng.monic(eng.to_internal(g)) for g in self.elements])
            self.stats["_engine"] = cached
        return cached

    def normal_form(self, f: Polynomial) -> Polynomial:
        if f.ring != self.ring:
            raise ValueError(f"ring mismatch: {f.ring} vs {self.ring}")
        eng, basis = self._engine_basis()
        rem = eng.reduce(_as_start(eng.to_internal(f)), basis)
        return eng.to_poly(rem)

    def contains(self, f: Polynomial) -> bool:
        return not self.normal_form(f)

    def __contains__(self, f):
        return self.contains(f)


def _update(eng: _Engine, polys: list, active: list[int], pairs: dict, queue: list, h: int, lcm_cache: dict):
    """Gebauer-Moeller installation of basis element ``h``."""
    lead = lambda i: polys[i][0][1]  # noqa: E731
    wh = lead(h)

    def lcm_of(i, j):
        key = (i, j) if i < j else (j, i)
        v = lcm_cache.get(key)
        if v is None:
            v = eng.lcm(lead(i), lead(j))
            lcm_cache[key] = v
        return v

    cands = list(active)
    c_lcms = {g: lcm_of(h, g) for g in cands}
    kept = []
    for idx, g1 in enumerate(cands):
        l1 = c_lcms[g1]
        if eng.coprime(wh, lead(g1)):
            kept.append(g1)
            continue
        dominated = False
        for g2 in cands[idx + 1:]:
            if eng.divides(c_lcms[g2], l1):
                dominated = True
                break
        if not dominated:
            for g2 in kept:
                if eng.divides(c_lcms[g2], l1):
                    dominated = True
                    break
        if not dominated:
            kept.append(g1)
    new_pairs = [g for g in kept if not eng.coprime(wh, lead(g))]

    # Buchberger's second criterion on existing pairs
    for (i, j) in list(pairs):
        lij = pairs[(i, j)][1]
        if eng.divides(wh, lij) and lcm_of(i, h) != lij and lcm_of(j, h) != lij:
            del pairs[(i, j)]

    for g in new_pairs:
        lw = c_lcms[g]
        key = (g, h) if g < h else (h, g)
        deg, lk = eng.degree(lw), eng.key_of(lw)
        pairs[key] = (deg, lw)
        heapq.heappush(queue, (deg, lk, key))

    still = [g for g in active if not eng.divides(wh, lead(g))]
    still.append(h)
    return still


def _interreduce(eng: _Engine, polys: list[list]) -> list[list]:
    # drop elements whose lead is divisible by another lead
    polys = sorted(polys, key=lambda t: t[0][0])
    minimal: list[list] = []
    for f in polys:
        if not any(eng.divides(g[0][1], f[0][1]) for g in minimal):
            minimal.append(f)
    out = []
    for i, f in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1:]
        head = f[0]
        tail = eng.reduce(_as_start(f[1:]), others) if len(f) > 1 else []
        out.append([head] + tail)
    out.sort(key=lambda t: t[0][0], reverse=True)
    return out


def _degree_bound_check(eng: _Engine, lw: int, maxdeg: int):
    if eng.degree(lw) + maxdeg >= 2**31:
        raise OverflowError("exponents would exceed 32 bits during basis computation")


def _buchberger_internal(ring: Ring, gens: tuple[Polynomial, ...], order: MonomialOrder, pair_limit: int):
    eng = _Engine(ring, order)
    p = ring.p
    polys: list[list] = []
    active: list[int] = []
    pairs: dict = {}
    queue: list = []
    lcm_cache: dict = {}
    maxdeg = max((g.total_degree() for g in gens), default=0)
    processed = 0
    zero_reductions = 0

    # reduce input generators against each other as they are installed
    inputs = sorted((eng.to_internal(g) for g in gens if g), key=lambda t: (eng.degree(t[0][1]), t[0][0]))
    for f in inputs:
        r = eng.reduce(_as_start(f), [polys[i] for i in active])
        if not r:
            continue
        r = eng.monic(r)
        if r[0][1] == 0:
            return eng, [[(0, 0, 1)]], {"pairs": processed, "zero_reductions": zero_reductions}
        polys.append(r)
        active = _update(eng, polys, active, pairs, queue, len(polys) - 1, lcm_cache)

    while queue:
        # normal strategy: smallest lcm degree, ties broken by smaller lcm
        _, _, best = heapq.heappop(queue)
        if best not in pairs:
            continue
        deg, lw = pairs.pop(best)
        processed += 1
        if processed > pair_limit:
            raise GroebnerResourceError(
                f"Groebner basis computation exceeded the pair limit of {pair_limit} "
                f"(basis size {len(active)}, {len(pairs)} pairs pending)"
            )
        _degree_bound_check(eng, lw, maxdeg)
        i, j = best
        start = eng.spoly_start(polys[i], polys[j])
        r = eng.reduce(start, [polys[a] for a in active])
        if not r:
            zero_reductions += 1
            continue
        r = eng.monic(r)
        if r[0][1] == 0:
            return eng, [[(0, 0, 1)]], {"pairs": processed, "zero_reductions": zero_reductions}
        maxdeg = max(maxdeg, eng.degree(r[0][1]))
        polys.append(r)
        active = _update(eng, polys, active, pairs, queue, len(polys) - 1, lcm_cache)

    basis = _interreduce(eng, [polys[i] for i in active])
    return eng, basis, {"pairs": processed, "zero_reductions": zero_reductions}


_CACHE: dict = {}
_CACHE_MAX = 256


def buchberger(
    I: IdealPresentation,
    order: MonomialOrder = GREVLEX,
    pair_limit: int = DEFAULT_PAIR_LIMIT,
    verify: bool = False,
) -> GroebnerBasis:
    """Reduced Groebner basis of generators + quotient relations of ``I``.

    Results are memoized per (ideal, order).  With ``verify=True`` every
    S-polynomial of the output is re-reduced and must vanish.
    """
    gens = I.all_generators()
    cache_key = (I.ring, frozenset(gens), order)
    hit = _CACHE.get(cache_key)
    if hit is not None and hit.stats.get("pair_limit", pair_limit) <= pair_limit:
        if verify:
            _assert_groebner(hit)
        return hit
    eng, basis, stats = _buchberger_internal(I.ring, gens, order, pair_limit)
    stats["pair_limit"] = pair_limit
    elements = tuple(eng.to_poly(b) for b in basis)
    gb = GroebnerBasis(elements, order, I.ring, True, stats)
    gb.stats["_engine"] = (eng, basis)
    log.debug("basis of %d elements after %d pairs", len(elements), stats["pairs"])
    if len(_CACHE) >= _CACHE_MAX:
        _CACHE.pop(next(iter(_CACHE)))
    _CACHE[cache_key] = gb
    if verify:
        _assert_groebner(gb)
    return gb


def clear_cache():
    _CACHE.clear()


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder = GREVLEX) -> Polynomial:
    """lcm/LT(f) * f - lcm/LT(g) * g for the leading terms under ``order``."""
    mf, cf = f.leading_term(order)
    mg, cg = g.leading_term(order)
    lcm = tuple(max(a, b) for a, b in zip(mf, mg))
    p = f.p
    left = f.mul_monomial(tuple(a - b for a, b in zip(lcm, mf)), pow(cf, -1, p))
    right = g.mul_monomial(tuple(a - b for a, b in zip(lcm, mg)), pow(cg, -1, p))
    return left - right


def is_groebner(gb: GroebnerBasis) -> bool:
    """True iff every S-polynomial of ``gb`` reduces to zero (checked exhaustively)."""
    elems = gb.elements
    order = gb.order
    for i in range(len(elems)):
        for j in range(i + 1, len(elems)):
            if gb.normal_form(s_polynomial(elems[i], elems[j], order)):
                return False
    return True


def _assert_groebner(gb: GroebnerBasis):
    if not is_groebner(gb):
        raise AssertionError("internal error: computed basis fails the S-pair criterion")


def normal_form(f: Polynomial, G: GroebnerBasis) -> Polynomial:
    return G.normal_form(f)


def ideal_membership(
    f: Polynomial,
    I: IdealPresentation,
    order: MonomialOrder = GREVLEX,
    pair_limit: int = DEFAULT_PAIR_LIMIT,
) -> bool:
    """f in I (computed in the quotient ring when I carries relations)."""
    if f.ring != I.ring:
        raise ValueError(f"ring mismatch: {f.ring} vs {I.ring}")
    if not f:
        return True
    return buchberger(I, order, pair_limit).contains(f)


def bracket_power(I: IdealPresentation, q: int) -> IdealPresentation:
    """I^[q]: generators replaced by their q-th powers; relations unchanged."""
    if not I.modulus.is_power(q):
        raise ValueError(f"{q} is not a power of the characteristic {I.modulus.p}")
    return I.with_generators(g.frobenius_power(q) for g in I.generators)


def _fresh_name(ring: Ring, base: str) -> str:
    name = base
    while name in ring.vars:
        name += "_"
    return name


def ideal_intersection(
    I: IdealPresentation,
    J: IdealPresentation,
    pair_limit: int = DEFAULT_PAIR_LIMIT,
) -> IdealPresentation:
    """I cap J via elimination of t from t*I + (1 - t)*J (relations added to both)."""
    _check_compatible(I, J)
    ring = I.ring
    t = _fresh_name(ring, "t")
    big = ring.extend([t], front=True)
    tv = big.gen(t)
    one_minus_t = big.one() - tv
    rels = [r.to_ring(big) for r in I.quotient_relations]
    gens = [tv * g.to_ring(big) for g in I.generators]
    gens += [tv * r for r in rels]
    gens += [one_minus_t * g.to_ring(big) for g in J.generators]
    gens += [one_minus_t * r for r in rels]
    gb = buchberger(IdealPresentation(tuple(gens), (), big), MonomialOrder.block(1), pair_limit)
    kept = [g.drop_to(ring) for g in gb.elements if g.degree(t) == 0]
    return I.with_generators(kept)


def colon_ideal(
    I: IdealPresentation,
    J: IdealPresentation,
    pair_limit: int = DEFAULT_PAIR_LIMIT,
) -> IdealPresentation:
    """(I : J) = intersection over generators g of J of (I : g).

    With relations Q present, (I : g) is the image of ((I + Q) cap (g)) / g,
    the intersection being taken in the polynomial ring so every element is
    divisible by g.
    """
    _check_compatible(I, J)
    if not J.generators:
        raise ValueError("colon by the zero ideal")
    lifted = IdealPresentation(I.all_generators(), (), I.ring)
    result: IdealPresentation | None = None
    for g in J.generators:
        cap = ideal_intersection(lifted, IdealPresentation((g,), (), I.ring), pair_limit)
        quotients = []
        for h in cap.generators:
            try:
                quotients.append(h.divexact(g))
            except ArithmeticError as exc:
                raise AssertionError(f"internal error: {g} does not divide intersection element {h}") from exc
        part = I.with_generators(quotients)
        result = part if result is None else ideal_intersection(result, part, pair_limit)
    # members of the relation ideal are zero in the quotient; drop them
    if I.quotient_relations:
        rel_gb = buchberger(I.with_generators(()), GREVLEX, pair_limit)
        gens = [h for h in result.generators if not rel_gb.contains(h)]
    else:
        gens = list(result.generators)
    return I.with_generators(gens)
