"""End-to-end checks of the cubic-hypersurface closure computations.

Each ``check_*`` function takes the characteristic and returns a
:class:`SuiteReport` whose ``pass`` flag is the conjunction of every boolean
sub-check recorded in ``details``.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Any, Callable

from .arith import PrimeModulus, as_modulus, is_prime
from .binomdet import BinomialMatrixSpec, check_identity, residue_from_lucas
from .frobenius import Found, equational_criterion_check, frobenius_closure_test
from .groebner import DEFAULT_PAIR_LIMIT, IdealPresentation, buchberger
from .poly import Ring
from .separable import verify_symplectic_example

__all__ = [
    "DomainError",
    "SuiteReport",
    "CubicRing",
    "DEFAULT_PRIMES",
    "DEFAULT_FROBENIUS_PRIMES",
    "primes_one_mod_three",
    "check_lemma_det",
    "check_lemma_det_sweep",
    "check_lemma_general",
    "check_lemma_colon",
    "check_theorem_plus",
    "check_frobenius_case",
    "check_cubic_char2",
    "check_separable_example",
]

DEFAULT_PRIMES = (7, 13, 19, 31, 43)
DEFAULT_FROBENIUS_PRIMES = (2, 5, 11)


class DomainError(ValueError):
    """A check was requested outside its mathematical setting."""


@dataclass
class SuiteReport:
    check_name: str
    params: dict
    passed: bool
    details: dict = field(default_factory=dict)
    elapsed_ms: float = 0.0

    def to_json(self) -> dict:
        return {
            "check": self.check_name,
            "params": self.params,
            "pass": self.passed,
            "elapsed_ms": round(self.elapsed_ms, 3),
            "details": self.details,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "SuiteReport":
        return cls(obj["check"], obj["params"], obj["pass"], obj["details"], obj["elapsed_ms"])

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def _bools(obj) -> list[bool]:
    """Every boolean leaf, skipping subtrees under the ``informational`` key."""
    out = []
    if isinstance(obj, bool):
        out.append(obj)
    elif isinstance(obj, dict):
        for key, v in obj.items():
            if key != "informational":
                out.extend(_bools(v))
    elif isinstance(obj, list):
        for v in obj:
            out.extend(_bools(v))
    return out


def _report(name: str, params: dict, body: Callable[[], dict]) -> SuiteReport:
    start = time.perf_counter()
    details = body()
    elapsed = (time.perf_counter() - start) * 1000
    verdicts = _bools(details)
    return SuiteReport(name, params, bool(verdicts) and all(verdicts), details, elapsed)


class CubicRing:
    """F_p[x, y, z] / (x^3 + y^3 + z^3) for p != 3."""

    def __init__(self, p):
        self.modulus: PrimeModulus = as_modulus(p)
        if self.modulus.p == 3:
            raise DomainError("the cubic x^3 + y^3 + z^3 is excluded in characteristic 3")
        self.ring = Ring("x,y,z", self.modulus)
        self.relation = self.ring("x^3 + y^3 + z^3")

    @property
    def p(self) -> int:
        return self.modulus.p

    def __call__(self, text):
        return self.ring(text)

    def ideal(self, *gens) -> IdealPresentation:
        return IdealPresentation(tuple(self.ring(g) for g in gens), (self.relation,), self.ring)

    def member(self, f, *gens, pair_limit: int = DEFAULT_PAIR_LIMIT) -> tuple[bool, str]:
        gb = buchberger(self.ideal(*gens), pair_limit=pair_limit)
        nf = gb.normal_form(self.ring(f))
        return not nf, str(nf)


def _k_for(p) -> int:
    p = int(p)
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    if p % 3 != 1:
        raise DomainError(f"p={p} is not 1 mod 3")
    return (p - 1) // 3


def primes_one_mod_three(pmax: int) -> list[int]:
    return [p for p in range(7, pmax + 1) if p % 3 == 1 and is_prime(p)]


def primes_two_mod_three(pmax: int) -> list[int]:
    return [p for p in range(2, pmax + 1) if p % 3 == 2 and is_prime(p)]


def _det_details(n: int, a: int, k: int, p: int) -> dict:
    cmp = check_identity(BinomialMatrixSpec(n, a, k), p)
    out = cmp.as_dict()
    out["lucas_residue"] = residue_from_lucas(cmp.spec, p).value
    out["ok"] = out["lucas_residue"] == cmp.residue.value
    return out


def check_lemma_det(n: int, a: int, k: int, p: int | None = None) -> SuiteReport:
    params = {"n": n, "a": a, "k": k}
    if p is not None:
        params["p"] = int(p)

    def body():
        out = check_identity(BinomialMatrixSpec(n, a, k), p).as_dict()
        if p is not None:
            # a vanishing residue does not falsify the identity
            out["informational"] = {"invertible_mod_p": out.pop("invertible_mod_p"), "residue": out.pop("residue")}
        return out

    return _report("lemma-det", params, body)


def check_lemma_det_sweep(nmax: int = 12, kmax: int = 5, amax: int = 6, p: int | None = None) -> SuiteReport:
    """Identity for all 0 <= a <= amax, 0 <= k <= kmax, a + 2k <= n <= nmax."""
    params = {"nmax": nmax, "kmax": kmax, "amax": amax}
    if p is not None:
        params["p"] = int(p)

    def body():
        cases = []
        for a in range(amax + 1):
            for k in range(kmax + 1):
                for n in range(a + 2 * k, nmax + 1):
                    c = check_identity(BinomialMatrixSpec(n, a, k), p)
                    cases.append({"n": n, "a": a, "k": k, "equal": c.equal})
        failures = [c for c in cases if not c["equal"]]
        return {"cases": len(cases), "failures": failures, "equal": not failures}

    return _report("lemma-det-sweep", params, body)


def check_lemma_general(p, pair_limit: int = DEFAULT_PAIR_LIMIT) -> SuiteReport:
    """(A, B)^{3k} inside (A^{2k+1}, B^{2k+1}, (A+B)^{2k}) in F_p[A, B], p = 3k + 1."""
    k = _k_for(p)
    p = int(p)

    def body():
        R = Ring("A,B", p)
        A, B = R.gens
        I = IdealPresentation((A ** (2 * k + 1), B ** (2 * k + 1), (A + B) ** (2 * k)), (), R)
        gb = buchberger(I, pair_limit=pair_limit)
        monos = []
        for i in range(3 * k + 1):
            f = A**i * B ** (3 * k - i)
            monos.append({"monomial": str(f), "member": gb.contains(f)})
        return {
            "k": k,
            "ideal": [str(g) for g in I.generators],
            "monomials": monos,
            "matrix": _det_details(2 * k, 0, k, p),
        }

    return _report("lemma-general", {"p": p}, body)


def check_lemma_colon(p, pair_limit: int = DEFAULT_PAIR_LIMIT) -> SuiteReport:
    """x^{p-1} y^{2p-2} * t in (x^{2p}, y^{2p}, z^{2p}) for t in {x^2, y^2, z^2}."""
    k = _k_for(p)
    p = int(p)

    def body():
        C = CubicRing(p)
        frob = (f"x^{2 * p}", f"y^{2 * p}", f"z^{2 * p}")
        base = f"x^{p - 1}*y^{2 * p - 2}"
        products = []
        for t in ("x^2", "y^2", "z^2"):
            member, nf = C.member(f"{base}*{t}", *frob, pair_limit=pair_limit)
            products.append({"multiplier": t, "member": member, "normal_form": nf})
        # the two reduced containments the argument rests on
        m1, nf1 = C.member(f"x^{3 * k}*y^{6 * k}", f"x^{6 * k}", f"y^{6 * k + 3}", f"z^{6 * k + 3}", pair_limit=pair_limit)
        m2, nf2 = C.member(f"x^{3 * k}*y^{6 * k}", f"x^{6 * k + 3}", f"y^{6 * k + 3}", f"z^{6 * k}", pair_limit=pair_limit)
        return {
            "k": k,
            "element": base,
            "products": products,
            "reduced_x_case": {"element": f"x^{3 * k}*y^{6 * k}", "ideal": [f"x^{6 * k}", f"y^{6 * k + 3}", f"z^{6 * k + 3}"], "member": m1, "normal_form": nf1},
            "reduced_z_case": {"element": f"x^{3 * k}*y^{6 * k}", "ideal": [f"x^{6 * k + 3}", f"y^{6 * k + 3}", f"z^{6 * k}"], "member": m2, "normal_form": nf2},
        }

    return _report("lemma-colon", {"p": p}, body)


def check_theorem_plus(p, pair_limit: int = DEFAULT_PAIR_LIMIT) -> SuiteReport:
    """xyz in (x^2, y^2, z^2)^+ via the equational criterion, p = 1 mod 3."""
    k = _k_for(p)
    p = int(p)

    def body():
        C = CubicRing(p)
        xyz = C("x*y*z")
        crit = equational_criterion_check(xyz, [C("x^2"), C("y^2"), C("z^2")], [C.relation], pair_limit)
        sufficient = (f"x^{2 * p}", f"y^{2 * p}", f"z^{2 * p}", f"x^{p}*y^{2 * p - 1}*z", f"x^{2 * p - 1}*y^{p}*z")
        member, nf = C.member(f"x^{p}*y^{p}*z^{p}", *sufficient, pair_limit=pair_limit)
        plain, _ = C.member("x*y*z", "x^2", "y^2", "z^2", pair_limit=pair_limit)
        return {
            "k": k,
            "criterion": {
                "holds": crit.holds,
                "colon_generator_count": len(crit.colon_generators),
                "normal_form": str(crit.normal_form),
            },
            "sufficient_form": {"element": f"(x*y*z)^{p}", "ideal": list(sufficient), "member": member, "normal_form": nf},
            "matrix": _det_details(2 * k + 1, 2, k - 2, p),
            "certificate": "plus-closure certificate (equational criterion hypothesis verified)",
            "informational": {"xyz_in_plain_ideal": plain},
        }

    return _report("theorem-plus", {"p": p}, body)


def check_frobenius_case(p, e_max: int = 6, pair_limit: int = DEFAULT_PAIR_LIMIT) -> SuiteReport:
    """xyz in (x^2, y^2, z^2)^F for p = 2 mod 3, by bounded search over e."""
    p = int(p)
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    if p % 3 != 2:
        raise DomainError(f"p={p} is not 2 mod 3")

    def body():
        C = CubicRing(p)
        res = frobenius_closure_test(C("x*y*z"), C.ideal("x^2", "y^2", "z^2"), e_max, pair_limit)
        out: dict[str, Any] = {"found": isinstance(res, Found)}
        if isinstance(res, Found):
            cert = res.certificate
            out["min_e"] = cert.e
            out["q"] = cert.q
            out["replayed"] = cert.replay(pair_limit)
        else:
            out["searched_up_to_e"] = res.e_max
        return out

    return _report("frobenius-case", {"p": p, "e_max": e_max}, body)


def check_cubic_char2(pair_limit: int = DEFAULT_PAIR_LIMIT) -> SuiteReport:
    """z^4 = z x^3 + z y^3 over F_2, and z^2 in (x, y)^F with e = 1."""

    def body():
        C = CubicRing(2)
        gb = buchberger(C.ideal(), pair_limit=pair_limit)
        nf = gb.normal_form(C("z^4 - z*x^3 - z*y^3"))
        res = frobenius_closure_test(C("z^2"), C.ideal("x", "y"), 1, pair_limit)
        found = isinstance(res, Found) and res.e == 1
        return {
            "identity": {"normal_form": str(nf), "zero": not nf},
            "closure": {"found": found, "e": res.e if isinstance(res, Found) else None},
        }

    return _report("cubic-char2", {"p": 2}, body)


def check_separable_example(q: int) -> SuiteReport:
    """The hypersurface Z^q - A X^q - B Y^q embeds in the polynomial ring F_p[X,Y,U,V]."""
    from .separable import symplectic_b_image

    def body():
        ok = verify_symplectic_example(q)
        return {"ok": ok, "b_image": str(symplectic_b_image(q))}

    return _report("separable-example", {"q": q}, body)
