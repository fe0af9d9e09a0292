import random

import pytest

from plusclosure.groebner import IdealPresentation, buchberger
from plusclosure.poly import Ring
from plusclosure.separable import (
    ExtensionPresentation,
    FrobeniusWitness,
    WitnessError,
    build_extension,
    parse_witness,
    perturb_witness,
    random_witness,
    symplectic_b_image,
    verify_separability,
    verify_symplectic_example,
    verify_u0_identity,
)


def hypersurface(p, q):
    R = Ring("X,Y,Z,A,B", p)
    return R, R(f"Z^{q} - A*X^{q} - B*Y^{q}")


def hypersurface_witness(p, q):
    R, rel = hypersurface(p, q)
    return FrobeniusWitness(q, R("Z"), (R("X"), R("Y")), (R("A"), R("B")), (rel,))


def test_hypersurface_witness_extension_q2():
    w = hypersurface_witness(2, 2)
    E = build_extension(w)
    R = E.ring
    assert E.u_vars == ("U1",)
    # U1^2 + U1*X^2 - B, written in characteristic 2
    assert E.relations == (R("U1^2 + U1*X^2 + B"),)
    assert E.u0_numerator == R("Z - Y*U1")
    assert E.u0_denominator == R("X")
    assert verify_separability(E)
    assert verify_u0_identity(E)


def test_hypersurface_witness_hand_reduction_q2():
    # (Z + Y U)^2 = Z^2 + Y^2 U^2 = (A X^2 + B Y^2) + Y^2 (B + U X^2) = X^2 (A + U Y^2) in char 2
    R = Ring("U,X,Y,Z,A,B", 2)
    lhs = R("Z + Y*U") ** 2
    rhs = R("X^2") * R("A + U*Y^2")
    diff = lhs - rhs
    ideal = IdealPresentation.of(R, ["U^2 + U*X^2 + B"], ["Z^2 + A*X^2 + B*Y^2"])
    assert buchberger(ideal).contains(diff)


@pytest.mark.parametrize("p, q", [(2, 4), (3, 3), (3, 9), (5, 5)])
def test_hypersurface_witness_other_q(p, q):
    E = build_extension(hypersurface_witness(p, q))
    assert verify_separability(E) and verify_u0_identity(E)


def test_single_generator_needs_no_new_variables():
    R = Ring("x,y", 3)
    w = FrobeniusWitness(3, R("x*y"), (R("x"),), (R("y^3"),))
    E = build_extension(w)
    assert E.u_vars == () and E.relations == ()
    assert E.u0_numerator == R("x*y").to_ring(E.ring)
    assert verify_separability(E) and verify_u0_identity(E)


def test_char2_cubic_witnesses():
    R = Ring("x,y,z", 2)
    rel = R("x^3 + y^3 + z^3")
    # z^4 = (zx) x^2 + (zy) y^2, and its square
    for q, a in ((2, ("z*x", "z*y")), (4, ("z^2*x^2", "z^2*y^2"))):
        w = FrobeniusWitness(q, R("z^2"), (R("x"), R("y")), tuple(R(s) for s in a), (rel,))
        E = build_extension(w)
        assert len(E.u_vars) == 1
        assert verify_separability(E) and verify_u0_identity(E)


def test_invalid_witness_rejected():
    R, rel = hypersurface(2, 2)
    with pytest.raises(WitnessError, match="nonzero normal form"):
        FrobeniusWitness(2, R("Z"), (R("X"), R("Y")), (R("A + 1"), R("B")), (rel,))
    with pytest.raises(WitnessError):
        FrobeniusWitness(6, R("Z"), (R("X"),), (R("A"),))
    with pytest.raises(WitnessError, match="zero modulo"):
        FrobeniusWitness(2, R("Z"), (R("Z^2 - A*X^2 - B*Y^2"),), (R("0"),), (rel,))


def test_corrupted_a0_fails_identity():
    w = hypersurface_witness(3, 3)
    bad = perturb_witness(w, 0)
    assert not verify_u0_identity(build_extension(bad))
    assert not verify_u0_identity(build_extension(perturb_witness(w, 1)))


def _adversarial(w, relations):
    E = build_extension(w)
    return ExtensionPresentation(E.base, E.ring, E.u_vars, relations, E.quotient_relations,
                                 E.u0_numerator, E.u0_denominator, w)


def test_purely_inseparable_relation_rejected():
    w = hypersurface_witness(3, 3)
    E = build_extension(w)
    R = E.ring
    assert not verify_separability(_adversarial(w, (R("U1^3 - B"),)))
    # relation mixing U-variables or non-monic
    assert not verify_separability(_adversarial(w, (R("2*U1^3 + U1*X^3 - B"),)))


def test_zero_x0_modulo_relations_rejected():
    R = Ring("X,Y,A,U1", 3)
    rel = R("X")
    E = ExtensionPresentation(R, R, ("U1",), (R("U1^3 + U1*X^3 - A"),), (rel,), R("Y"), R("X"))
    assert not verify_separability(E)


def test_u_name_collision():
    R = Ring("U1,x", 2)
    w = FrobeniusWitness(2, R("U1*x"), (R("x"), R("U1")), (R("U1^2"), R("0")))
    E = build_extension(w)
    assert E.u_vars == ("U1_",)
    assert verify_u0_identity(E)


def test_random_witnesses_verify_and_perturbations_fail():
    rng = random.Random(2026)
    for _ in range(100):
        p = rng.choice([2, 3, 5])
        q = p ** rng.choice([1, 2])
        n = rng.randint(0, 3)
        w = random_witness(rng, p, q, n)
        assert w.residual().is_zero()
        E = build_extension(w)
        assert verify_separability(E)
        assert verify_u0_identity(E)
        for i in range(n + 1):
            assert not verify_u0_identity(build_extension(perturb_witness(w, i)))


# B-image fixture derived by expanding (UX + VY)^q in characteristic p:
# (UX + VY)^q = U^q X^q + V^q Y^q, minus (U^q + U Y^q) X^q leaves Y^q (V^q - U X^q)
B_IMAGES = {2: "V^2 + X^2*U", 3: "V^3 - X^3*U", 4: "V^4 + X^4*U", 5: "V^5 - X^5*U", 8: "V^8 + X^8*U", 9: "V^9 - X^9*U"}


@pytest.mark.parametrize("q", sorted(B_IMAGES))
def test_symplectic_example(q):
    p = next(d for d in range(2, q + 1) if q % d == 0)
    S = Ring("X,Y,U,V", p)
    assert symplectic_b_image(q) == S(B_IMAGES[q])
    assert verify_symplectic_example(q)


def test_symplectic_rejects_non_prime_power():
    with pytest.raises(ValueError):
        verify_symplectic_example(6)


WITNESS_TEXT = """\
p=2 q=2
# Z^2 = A X^2 + B Y^2
vars=X,Y,Z,A,B
z=Z
x0=X
x1=Y
a0=A
a1=B
rel=Z^2 - A*X^2 - B*Y^2
"""


def test_parse_witness_file():
    w = parse_witness(WITNESS_TEXT)
    assert w.q == 2 and w.n == 1
    assert w.ring.vars == ("X", "Y", "Z", "A", "B")
    assert w == hypersurface_witness(2, 2)


def test_parse_witness_infers_variables():
    w = parse_witness(WITNESS_TEXT.replace("vars=X,Y,Z,A,B\n", ""))
    assert w.ring.vars == ("Z", "X", "Y", "A", "B")


@pytest.mark.parametrize(
    "text",
    [
        "",
        "p=2\nz=Z\nx0=X\na0=A",
        "p=2 q=2\nx0=X\na0=X",
        "p=2 q=2\nz=Z\nx0=X\nx1=Y\na0=A",
        "p=2 q=2\nz=Z\nx0=X\na0=A\nfoo=1",
        "p=2 q=2\nz=Z\nx0=X\na0=A+",
    ],
)
def test_parse_witness_errors(text):
    with pytest.raises(ValueError):
        parse_witness(text)
