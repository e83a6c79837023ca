import random

import pytest

from permupoly import (CompositePoly, PolyParseError, SparsePoly, build_field,
                       evaluate, evaluate_all, parse_poly, reduce_mod_field,
                       to_text)
from permupoly.poly import load_poly_file


def test_parse_identity(gf64):
    f = parse_poly(gf64, "x")
    assert len(f.terms) == 1
    for a in range(64):
        assert evaluate(gf64, f, a) == a


def test_parse_example_shapes(gf64):
    two = parse_poly(gf64, "(x^8 + x + g^3)^57 + g^1*x")
    assert len(two.terms) == 2
    base = two.terms[0][1]
    assert [e for e, _ in base.terms] == [0, 1, 8]
    assert two.terms[0][2] == 57

    three = parse_poly(gf64, "(g^1*x + g^3)^5 + x^4 + g^48*x")
    assert len(three.terms) == 3
    assert three.terms[0][2] == 5
    assert three.terms[1][2] == 4


def test_round_trip_structural_and_pointwise(gf64):
    texts = [
        "x",
        "(g^1*x + g^3)^5 + x^4 + g^48*x",
        "(x^8 + x + g^3)^57 + g^1*x",
        "(x^8 + x + 1)^-6 + g^1*x",
        "g^7",
        "x^62 + g^3*x^2 + 1",
    ]
    for text in texts:
        f = parse_poly(gf64, text)
        again = parse_poly(gf64, to_text(gf64, f))
        assert again == f
        for a in range(64):
            assert evaluate(gf64, f, a) == evaluate(gf64, again, a)


def test_zero_with_negative_exponent_convention(gf64):
    # at a root of the inner base, the whole bracket term contributes 0
    delta = gf64.subfield_elements(3)[4]
    inner = SparsePoly.make(gf64, [(8, 1), (1, 1), (0, delta)])
    b = gf64.subfield_elements(3)[2]
    x = SparsePoly(((1, 1),))
    f = CompositePoly.make([(1, inner, -6), (b, x, 1)])
    roots = [a for a in range(64) if evaluate(gf64, inner, a) == 0]
    assert roots  # delta is in the image of a^8 + a
    for a in roots:
        assert evaluate(gf64, f, a) == gf64.mul(b, a)


def test_inner_base_lands_in_subfield(gf64):
    # t = x^8 + x + delta satisfies t^8 = t whenever delta does
    for delta in gf64.subfield_elements(3):
        inner = SparsePoly.make(gf64, [(8, 1), (1, 1), (0, delta)])
        for a in range(64):
            t = evaluate(gf64, inner, a)
            assert gf64.frobenius(t, 3) == t


def test_evaluate_all_matches_scalar(gf64, gf625):
    f1 = parse_poly(gf64, "(x^8 + x + g^3)^57 + g^1*x")
    vals = evaluate_all(gf64, f1)
    for a in range(64):
        assert int(vals[a]) == evaluate(gf64, f1, a)
    f2 = parse_poly(gf625, "x^155 + g^7*x^151")
    vals2 = evaluate_all(gf625, f2)
    for a in range(625):
        assert int(vals2[a]) == evaluate(gf625, f2, a)


def test_reduce_fermat(gf16):
    r = reduce_mod_field(gf16, parse_poly(gf16, "x^16"))
    assert r.terms == ((1, 1),)
    assert r.reduced


def test_reduce_zero(gf16):
    assert reduce_mod_field(gf16, parse_poly(gf16, "0")).terms == ()


def test_reduce_example6_pointwise(gf256):
    delta = next(d for d in range(256) if gf256.relative_trace(1, d) == 1)
    b = gf256.subfield_elements(4)[3]
    text = f"(x^2 + x + {gf256.format_element(delta)})^120 + " \
           f"{gf256.format_element(b)}*x"
    f = parse_poly(gf256, text)
    r = reduce_mod_field(gf256, f)
    assert r.degree() < 256
    for a in range(256):
        assert evaluate(gf256, r, a) == evaluate(gf256, f, a)


def test_reduce_random_pointwise(gf64, gf625):
    rng = random.Random(31337)
    for ctx in (gf64, gf625):
        for _ in range(5):
            terms = [(rng.randrange(200), rng.randrange(1, ctx.q))
                     for _ in range(3)]
            inner = SparsePoly.make(
                ctx, [(rng.randrange(5), rng.randrange(ctx.q)) for _ in range(2)])
            f = CompositePoly.make(
                [(c, SparsePoly(((1, 1),)), e) for e, c in terms]
                + [(1, inner, rng.randrange(-50, 50))])
            r = reduce_mod_field(ctx, f)
            for a in range(ctx.q):
                assert evaluate(ctx, r, a) == evaluate(ctx, f, a)


def test_reduce_guard():
    big = build_field(2, 13)
    with pytest.raises(ValueError, match="pointwise"):
        reduce_mod_field(big, parse_poly(big, "x^2"))


def test_parse_errors(gf4):
    cases = ["", "x +", "(x", "g^", "x^^2", "((x))", "0x7*x", "y", "x^999999999999999999999"]
    for text in cases:
        with pytest.raises((PolyParseError, ValueError)):
            parse_poly(gf4, text)
    try:
        parse_poly(gf4, "x + *")
    except PolyParseError as exc:
        assert isinstance(exc.position, int) and 3 <= exc.position <= 5
        assert "position" in str(exc)


def test_odd_characteristic_minus(gf625):
    f = parse_poly(gf625, "x^5 - x")
    for a in range(625):
        assert evaluate(gf625, f, a) == gf625.sub(gf625.pow(a, 5), a)


def test_poly_file(tmp_path, gf64):
    path = tmp_path / "polys.txt"
    path.write_text("# comment line\nx\n(x^8 + x + g^3)^57 + g^1*x  # trailing\n\n")
    polys = load_poly_file(gf64, str(path))
    assert len(polys) == 2
    assert polys[0] == parse_poly(gf64, "x")
