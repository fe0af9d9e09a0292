"""Independent reference computations for the test-suite.

None of these share code paths with the Groebner engine.
"""

from itertools import product

from plusclosure.poly import Polynomial


def rank_mod_p(rows, p):
    rows = [list(r) for r in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col] % p), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][col], -1, p)
        rows[rank] = [v * inv % p for v in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col] % p:
                f = rows[i][col]
                rows[i] = [(a - f * b) % p for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def monomials_up_to(nvars, degree):
    return [m for m in product(range(degree + 1), repeat=nvars) if sum(m) <= degree]


def brute_force_member(f: Polynomial, gens, bound=None) -> bool:
    """f in (gens) iff f lies in the F_p-span of {m * g : deg(m * g) <= bound}.

    The default bound is deg f + max generator degree.  Exact for homogeneous
    input; for inhomogeneous input only "True" is unconditionally sound.
    """
    ring = f.ring
    p = ring.p
    if not f:
        return True
    gens = [g for g in gens if g]
    if not gens:
        return False
    if bound is None:
        bound = f.total_degree() + max(g.total_degree() for g in gens)
    products = []
    for g in gens:
        for m in monomials_up_to(ring.nvars, bound - g.total_degree()):
            products.append(g.mul_monomial(m))
    support = sorted({m for h in products + [f] for m in h.terms})
    idx = {m: i for i, m in enumerate(support)}

    def vec(h):
        v = [0] * len(support)
        for m, c in h.terms.items():
            v[idx[m]] = c
        return v

    rows = [vec(h) for h in products]
    return rank_mod_p(rows, p) == rank_mod_p(rows + [vec(f)], p)


def to_sympy(f: Polynomial, symbols):
    import sympy

    expr = sympy.Integer(0)
    for m, c in f.terms.items():
        term = sympy.Integer(c)
        for s, e in zip(symbols, m):
            term *= s**e
        expr += term
    return expr


def sympy_member(f: Polynomial, gens) -> bool:
    """Membership through sympy's own Groebner implementation over GF(p)."""
    import sympy

    symbols = sympy.symbols(list(f.ring.vars))
    G = sympy.groebner([to_sympy(g, symbols) for g in gens], *symbols, modulus=f.p, order="grevlex")
    return G.contains(to_sympy(f, symbols))
