import random

import pytest

from permupoly import (FamilyParams, enumerate_params, evaluate,
                       evaluate_all, field_for_family, is_permutation,
                       kernel_is_trivial, make_family, parse_poly,
                       proof_identity_check, to_text, unit_circle)
from permupoly.families import check_enumeration_guard, iter_family


@pytest.fixture(scope="module")
def p1_ctx():
    return field_for_family("P1", {"m": 2, "k": 3})


def params_for(family, ctx, **kw):
    return FamilyParams(family=family, ctx=ctx, **kw)


# -- construction fixtures: each family matches its hand-written text --------

def test_p1_matches_text(p1_ctx):
    ctx = p1_ctx
    b, delta = ctx.gen_pow(1), ctx.gen_pow(3)
    poly, checklist = make_family(params_for("P1", ctx, m=2, k=3, b=b, delta=delta))
    c = ctx.pow(b, 48)
    text = f"(g^1*x + g^3)^5 + x^4 + {ctx.format_element(c)}*x"
    ref = parse_poly(ctx, text)
    for x in range(64):
        assert evaluate(ctx, poly, x) == evaluate(ctx, ref, x)
    assert checklist.all_true()
    assert checklist.entry("c = b^(1-2^(2m))").ok


def test_p2_matches_text(gf64):
    delta = gf64.subfield_elements(3)[2]
    b = gf64.subfield_elements(3)[3]
    poly, checklist = make_family(params_for("P2", gf64, m=3, s=6, b=b, delta=delta))
    text = (f"(x^8 + x + {gf64.format_element(delta)})^57 + "
            f"{gf64.format_element(b)}*x")
    ref = parse_poly(gf64, text)
    for x in range(64):
        assert evaluate(gf64, poly, x) == evaluate(gf64, ref, x)
    assert checklist.satisfied()
    assert not checklist.entry("(2^m+2)(-s) = 2^m-1 (mod 2^(2m)-1)").ok
    assert not checklist.all_true()


def test_p3_matches_text(gf256):
    bprime = next(x for x in unit_circle(gf256) if x != 1)
    # pick b with b^30 * bprime^3 = 1 and b outside GF(16)
    target = gf256.inv(gf256.pow(bprime, 3))
    b = next(x for x in range(1, 256)
             if gf256.pow(x, 30) == target and not gf256.in_subfield(4, x))
    poly, checklist = make_family(params_for("P3", gf256, m=4, bprime=bprime, b=b))
    text = (f"x^32 + {gf256.format_element(bprime)}*x^2 + "
            f"{gf256.format_element(b)}*x")
    ref = parse_poly(gf256, text)
    for x in range(256):
        assert evaluate(gf256, poly, x) == evaluate(gf256, ref, x)
    assert checklist.satisfied()


def test_p4_matches_text(gf625):
    a = gf625.gen_pow(2)
    poly, checklist = make_family(params_for("P4", gf625, q=5, e=4, r=151, a=a))
    ref = parse_poly(gf625, f"x^155 + {gf625.format_element(a)}*x^151")
    for x in range(625):
        assert evaluate(gf625, poly, x) == evaluate(gf625, ref, x)
    assert checklist.satisfied()
    poly1, _ = make_family(params_for("P4", gf625, q=5, e=4, r=1, a=a))
    ref1 = parse_poly(gf625, f"x^5 + {gf625.format_element(a)}*x")
    for x in range(625):
        assert evaluate(gf625, poly1, x) == evaluate(gf625, ref1, x)


def test_p5_matches_text(gf256):
    delta = next(d for d in range(256) if gf256.relative_trace(4, d) != 0)
    b = next(x for x in range(256) if not gf256.in_subfield(4, x))
    poly, _ = make_family(params_for("P5", gf256, m=4, b=b, delta=delta))
    text = (f"(x^16 + x + {gf256.format_element(delta)})^136 + "
            f"{gf256.format_element(b)}*x")
    ref = parse_poly(gf256, text)
    for x in range(256):
        assert evaluate(gf256, poly, x) == evaluate(gf256, ref, x)


def test_p6_matches_text(gf256):
    delta = next(d for d in range(256) if gf256.relative_trace(1, d) == 1)
    b = gf256.subfield_elements(4)[5]
    poly, checklist = make_family(params_for("P6", gf256, k=4, b=b, delta=delta))
    text = (f"(x^2 + x + {gf256.format_element(delta)})^120 + "
            f"{gf256.format_element(b)}*x")
    ref = parse_poly(gf256, text)
    for x in range(256):
        assert evaluate(gf256, poly, x) == evaluate(gf256, ref, x)
    assert checklist.satisfied()


# -- checklist behaviour ------------------------------------------------------

def test_p5_flags_bad_delta(gf256):
    delta = next(d for d in range(256) if gf256.relative_trace(4, d) == 0)
    b = next(x for x in range(256) if not gf256.in_subfield(4, x))
    _, checklist = make_family(params_for("P5", gf256, m=4, b=b, delta=delta))
    assert not checklist.entry("Tr_m^(2m)(delta) != 0").ok
    assert not checklist.satisfied()


def test_p4_flags_bad_norm(gf625):
    a = gf625.gen_pow(4)  # a^156 = 1 = (-1)^4
    _, checklist = make_family(params_for("P4", gf625, q=5, e=4, r=151, a=a))
    assert not checklist.entry("norm(a) != (-1)^e").ok
    assert not checklist.satisfied()


def test_p1_explicit_c_mismatch(p1_ctx):
    ctx = p1_ctx
    b = ctx.gen_pow(1)
    _, checklist = make_family(
        params_for("P1", ctx, m=2, k=3, b=b, delta=0, c=ctx.gen_pow(5)))
    assert not checklist.entry("c = b^(1-2^(2m))").ok


def test_p1_degenerate_c_is_reported_not_gating(p1_ctx):
    # b = g^21 gives c = b^48 = 1, violating the stated c-range while the
    # polynomial still permutes
    ctx = p1_ctx
    b = ctx.gen_pow(21)
    poly, checklist = make_family(params_for("P1", ctx, m=2, k=3, b=b, delta=0))
    assert ctx.pow(b, 48) == 1
    entry = checklist.entry("c not in F_2")
    assert not entry.ok and not entry.gating
    assert checklist.satisfied() and not checklist.all_true()
    assert is_permutation(ctx, poly).permutation


def test_param_validation(p1_ctx, gf64, gf16):
    with pytest.raises(ValueError, match="requires parameter"):
        make_family(FamilyParams(family="P1", ctx=p1_ctx, m=2, k=3, b=2))
    with pytest.raises(ValueError, match="does not take"):
        make_family(FamilyParams(family="P1", ctx=p1_ctx, m=2, k=3, b=2,
                                 delta=0, a=1))
    with pytest.raises(ValueError, match="not in GF"):
        make_family(FamilyParams(family="P2", ctx=gf64, m=3, s=6, b=64, delta=0))
    with pytest.raises(ValueError, match="lives in"):
        make_family(FamilyParams(family="P2", ctx=gf16, m=3, s=6, b=2, delta=0))
    with pytest.raises(ValueError, match="unknown family"):
        make_family(FamilyParams(family="P9", ctx=gf64))
    with pytest.raises(ValueError, match="prime power"):
        make_family(FamilyParams(family="P4", ctx=gf64, q=6, e=2, r=1, a=1))
    with pytest.raises(ValueError, match="prime power"):
        make_family(FamilyParams(family="P4", ctx=gf64, q=1, e=2, r=1, a=1))


# -- linearity of P3 ----------------------------------------------------------

def test_p3_additive_and_kernel_route(gf256):
    count = 0
    for params in enumerate_params("P3", {"m": 4}, ctx=gf256):
        poly, _ = make_family(params)
        table = [int(v) for v in evaluate_all(gf256, poly)]
        # additivity: g(x + y) = g(x) + g(y); field addition is xor here
        for x in (1, 7, 100, 255):
            for y in range(256):
                assert table[x ^ y] == table[x] ^ table[y]
        assert kernel_is_trivial(gf256, poly) == \
            is_permutation(gf256, poly).permutation
        count += 1
        if count >= 8:
            break


# -- enumeration --------------------------------------------------------------

def test_enumerate_counts(p1_ctx, gf256):
    assert sum(1 for _ in enumerate_params("P1", {"m": 2, "k": 3},
                                           ctx=p1_ctx)) == 3968
    # oracle for P6: b in GF(16)* times delta with absolute trace 1
    traces = sum(1 for d in range(256) if gf256.relative_trace(1, d) == 1)
    assert traces == 128
    assert sum(1 for _ in enumerate_params("P6", {"k": 4}, ctx=gf256)) == 15 * 128
    # oracle for P3: direct double loop
    oracle = sum(
        1
        for bp in unit_circle(gf256)
        for b in range(1, 256)
        if not gf256.in_subfield(4, b)
        and gf256.mul(gf256.pow(b, 30), gf256.pow(bp, 3)) == 1)
    got = sum(1 for _ in enumerate_params("P3", {"m": 4}, ctx=gf256))
    assert got == oracle == 240


def test_enumerate_deterministic_and_partitioned(gf64):
    fp = {"m": 3, "s": 6}
    first = [p.to_dict() for p in enumerate_params("P2", fp, ctx=gf64)]
    second = [p.to_dict() for p in enumerate_params("P2", fp, ctx=gf64)]
    assert first == second
    n_all = sum(1 for _ in enumerate_params("P2", fp, "all", ctx=gf64))
    n_sat = len(first)
    n_vio = sum(1 for _ in enumerate_params("P2", fp, "violating", ctx=gf64))
    assert n_sat + n_vio == n_all == 64 * 64
    assert n_sat == 48
    with pytest.raises(ValueError):
        list(enumerate_params("P2", fp, "sometimes", ctx=gf64))


def test_enumeration_guard():
    with pytest.raises(ValueError, match="guard"):
        check_enumeration_guard("P5", {"m": 13})
    with pytest.raises(ValueError, match="guard"):
        list(enumerate_params("P5", {"m": 13}))


def test_iter_family_yields_checklists(gf625):
    seen = 0
    for params, poly, checklist in iter_family("P4", {"q": 5, "e": 4}, ctx=gf625):
        assert params.r in (1, 151)
        assert params.a != 0
        seen += 1
    assert seen == 2 * 624


# -- proof-internal identities -------------------------------------------------

def test_p1_identity_random(p1_ctx):
    ctx = p1_ctx
    rng = random.Random(11)
    for _ in range(25):
        params = params_for("P1", ctx, m=2, k=3,
                            b=ctx.gen_pow(rng.randrange(63)),
                            delta=rng.randrange(64))
        if not make_family(params)[1].satisfied():
            continue
        assert proof_identity_check("P1", params, d=rng.randrange(64))


def test_p2_identity_both_cases(gf64):
    # s = 56 satisfies the exponent congruence for m = 3
    sub = gf64.subfield_elements(3)
    b, delta = sub[4], sub[6]
    params = params_for("P2", gf64, m=3, s=56, b=b, delta=delta)
    _, checklist = make_family(params)
    assert checklist.all_true()
    zero_case = nonzero_case = 0
    for d in range(64):
        w = gf64.add(gf64.add(gf64.div(gf64.frobenius(d, 3), gf64.frobenius(b, 3)),
                              gf64.div(d, b)), delta)
        if w == 0:
            zero_case += 1
        else:
            nonzero_case += 1
        assert proof_identity_check("P2", params, d=d)
    assert zero_case > 0 and nonzero_case > 0


def test_p2_identity_requires_congruence(gf64):
    sub = gf64.subfield_elements(3)
    params = params_for("P2", gf64, m=3, s=6, b=sub[4], delta=sub[6])
    with pytest.raises(ValueError, match="congruence"):
        proof_identity_check("P2", params, d=1)


def test_p3_identity(gf256):
    for i, params in enumerate(enumerate_params("P3", {"m": 4}, ctx=gf256)):
        assert proof_identity_check("P3", params)
        if i >= 10:
            break


def test_identity_rejects_violating_params(p1_ctx):
    params = params_for("P1", p1_ctx, m=2, k=3, b=1, delta=0)  # b in F_2
    with pytest.raises(ValueError):
        proof_identity_check("P1", params, d=0)


def test_family_text_smoke(p1_ctx):
    poly, _ = make_family(params_for("P1", p1_ctx, m=2, k=3,
                                     b=p1_ctx.gen_pow(1), delta=0))
    text = to_text(p1_ctx, poly)
    assert parse_poly(p1_ctx, text) == poly
