"""Additive-coset criteria: kernel/image machinery, the coverage criterion,
its corollaries, the trace-based construction, and the explicit family."""

import random

import pytest

from ppforge.additive import (AdditiveTriple, TraceTheoremParams,
                              commuting_criterion_check, example_family,
                              gamma_search, necessary_conditions_check,
                              proposition_check, subgroup_data,
                              trace_theorem_check, trace_theorem_poly,
                              triple_poly)
from ppforge.errors import FieldError, ScopeError
from ppforge.field import make_field
from ppforge.oracle import is_permutation
from ppforge.poly import AdditivePoly, FqPoly, parse_poly, trace_poly

F5 = make_field(5)
F9 = make_field(3, 2)
F8 = make_field(2, 3)
F25 = make_field(5, 2)

A_ID = AdditivePoly(F9, (1,))
B_TRACE9 = AdditivePoly(F9, (1, 1))


def test_subgroup_data_trace_f9():
    sd = subgroup_data(A_ID, B_TRACE9)
    assert sd.kernel == (0, 3, 6)          # {0, t, 2t}
    assert sd.image == (0, 1, 2)
    assert sd.a_kernel_image == (0, 3, 6)
    for gamma in sd.image:
        assert B_TRACE9.eval(sd.right_inverse[gamma]) == gamma
        assert sd.a_of_right_inverse[gamma] == A_ID.eval(sd.right_inverse[gamma])
    assert sd.coset_reps == (0, 1, 2)      # least index per coset of {0,t,2t}


def test_subgroup_data_identity_b():
    sd = subgroup_data(A_ID, AdditivePoly(F9, (1,)))
    assert sd.kernel == (0,)
    assert sd.image == tuple(F9.elements())


def test_subgroup_data_artin_schreier_prime_field():
    # x^p - x over F_p: kernel is everything, image is {0}
    B = AdditivePoly(F5, (4, 1))
    sd = subgroup_data(AdditivePoly(F5, (1,)), B)
    assert sd.kernel == tuple(F5.elements())
    assert sd.image == (0,)


@pytest.mark.parametrize("p,n", [(2, 2), (3, 2), (2, 4), (5, 2), (3, 3)])
def test_rank_nullity_sampled(p, n):
    fld = make_field(p, n)
    rng = random.Random(f"ranknull/{p}/{n}")
    one = AdditivePoly(fld, (1,))
    for _ in range(10):
        B = AdditivePoly(fld, [rng.randrange(fld.q) for _ in range(3)])
        sd = subgroup_data(one, B)
        assert len(sd.kernel) * len(sd.image) == fld.q


def test_right_inverse_preimage_rules():
    sd_least = subgroup_data(A_ID, B_TRACE9, preimage="least")
    sd_great = subgroup_data(A_ID, B_TRACE9, preimage="greatest")
    for gamma in sd_least.image:
        assert sd_least.right_inverse[gamma] <= sd_great.right_inverse[gamma]
        assert B_TRACE9.eval(sd_great.right_inverse[gamma]) == gamma
    with pytest.raises(FieldError):
        subgroup_data(A_ID, B_TRACE9, preimage="middle")


def test_proposition_identity():
    tr = AdditiveTriple(A_ID, AdditivePoly(F9, (1,)), FqPoly.zero(F9))
    assert proposition_check(tr).verdict
    assert triple_poly(tr) == FqPoly.x(F9)


def test_proposition_example_f9():
    # x + t*(x^3+x)^2 permutes F_9 (t = index 3, t^2 = -1)
    tr = AdditiveTriple(A_ID, B_TRACE9, parse_poly(F9, "3*x^2"))
    assert proposition_check(tr).verdict
    f = triple_poly(tr)
    assert is_permutation(f)


def test_proposition_a_zero():
    for g in (FqPoly.zero(F9), parse_poly(F9, "x^2+3")):
        tr = AdditiveTriple(AdditivePoly(F9), B_TRACE9, g)
        rpt = proposition_check(tr)
        assert not rpt.verdict
        assert not is_permutation(triple_poly(tr))


def test_proposition_matches_oracle_sampled():
    rng = random.Random("prop-oracle")
    for fld in (F9, F8):
        for _ in range(25):
            A = AdditivePoly(fld, [rng.randrange(fld.q) for _ in range(3)])
            B = AdditivePoly(fld, [rng.randrange(fld.q) for _ in range(3)])
            g = FqPoly(fld, [rng.randrange(fld.q) for _ in range(4)])
            tr = AdditiveTriple(A, B, g)
            assert proposition_check(tr).verdict == is_permutation(triple_poly(tr))


def test_coset_law():
    # f(alpha + beta) = f(alpha) + A(beta) for beta in ker B
    rng = random.Random("coset")
    for fld in (F9, F25):
        for _ in range(6):
            A = AdditivePoly(fld, [rng.randrange(fld.q) for _ in range(3)])
            B = AdditivePoly(fld, [rng.randrange(fld.q) for _ in range(3)])
            g = FqPoly(fld, [rng.randrange(fld.q) for _ in range(4)])
            f = triple_poly(AdditiveTriple(A, B, g))
            kernel = subgroup_data(A, B).kernel
            for alpha in fld.elements():
                fa = f.eval(alpha)
                for beta in kernel:
                    assert f.eval(fld.add(alpha, beta)) == fld.add(fa, A.eval(beta))


def test_right_inverse_choice_does_not_change_verdict():
    rng = random.Random("swap")
    for fld in (F9, F8):
        for _ in range(30):
            A = AdditivePoly(fld, [rng.randrange(fld.q) for _ in range(3)])
            B = AdditivePoly(fld, [rng.randrange(fld.q) for _ in range(3)])
            g = FqPoly(fld, [rng.randrange(fld.q) for _ in range(4)])
            tr = AdditiveTriple(A, B, g)
            v1 = proposition_check(tr, data=subgroup_data(A, B)).verdict
            v2 = proposition_check(tr, data=subgroup_data(A, B, preimage="greatest")).verdict
            assert v1 == v2


def test_necessary_conditions_examples():
    g = parse_poly(F9, "3*x^2")
    # A = x is injective on any kernel
    rpt = necessary_conditions_check(AdditiveTriple(A_ID, B_TRACE9, g))
    assert rpt.condition("A is injective on ker B").holds
    # A = B = x^3+x collapses t and 0
    rpt2 = necessary_conditions_check(AdditiveTriple(B_TRACE9, B_TRACE9, g))
    assert not rpt2.condition("A is injective on ker B").holds
    # permuting triples satisfy both conditions
    tr = AdditiveTriple(A_ID, B_TRACE9, g)
    assert proposition_check(tr).verdict
    assert necessary_conditions_check(tr).verdict


def test_commuting_criterion_example():
    # A = x^3 permutes the trace kernel {0, t, 2t}: t -> 2t -> t
    A = AdditivePoly(F9, (0, 1))
    rpt = commuting_criterion_check(AdditiveTriple(A, B_TRACE9, FqPoly.zero(F9)))
    assert rpt.condition("A permutes ker B").holds


def test_commuting_criterion_trace_specialization():
    # A = x, B = trace: the criterion reduces to x + B(g(x)) permuting F_p
    for g in (parse_poly(F9, "3*x^2"), parse_poly(F9, "x^2"), FqPoly.zero(F9)):
        tr = AdditiveTriple(A_ID, B_TRACE9, g)
        rpt = commuting_criterion_check(tr)
        inner = [F9.add(c, B_TRACE9.eval(g.eval(c))) for c in range(3)]
        assert rpt.condition("A(x)+B(g(x)) permutes im B").holds == (sorted(inner) == [0, 1, 2])
        assert rpt.verdict == is_permutation(triple_poly(tr))


def test_commuting_criterion_rejects_noncommuting():
    A = AdditivePoly(F9, (3,))            # t*x
    B = AdditivePoly(F9, (0, 1))          # x^3
    with pytest.raises(ScopeError):
        commuting_criterion_check(AdditiveTriple(A, B, FqPoly.zero(F9)))


def test_commuting_criterion_matches_oracle_sampled():
    rng = random.Random("cor2")
    cases = 0
    pool = [AdditivePoly(F9, cs) for cs in
            [(1,), (0, 1), (1, 1), (2, 1), (0, 0, 1), (1, 0, 1)]]
    for A in pool:
        for B in pool:
            for _ in range(4):
                g = FqPoly(F9, [rng.randrange(9) for _ in range(3)])
                tr = AdditiveTriple(A, B, g)
                rpt = commuting_criterion_check(tr)   # all-F_p pool always commutes
                assert rpt.verdict == is_permutation(triple_poly(tr))
                cases += 1
    assert cases == 144


def test_trace_theorem_example_true():
    tp = TraceTheoremParams(FqPoly.zero(F9), A_ID, parse_poly(F9, "x^2+1"))
    rpt = trace_theorem_check(tp)
    assert rpt.verdict and all(c.holds for c in rpt.conditions)
    f = trace_theorem_poly(tp)
    assert f == parse_poly(F9, "x^7+2*x^5+x^3+x")   # ((x^3+x)^2+1)*x expanded
    assert is_permutation(f)


def test_trace_theorem_root_fails():
    tp = TraceTheoremParams(FqPoly.zero(F9), A_ID, parse_poly(F9, "x"))
    rpt = trace_theorem_check(tp)
    assert not rpt.condition("h has no roots in F_p").holds
    assert not rpt.verdict


def test_trace_theorem_identity_case():
    tp = TraceTheoremParams(FqPoly.zero(F9), A_ID, FqPoly.one(F9))
    assert trace_theorem_check(tp).verdict
    assert trace_theorem_poly(tp) == FqPoly.x(F9)


def test_trace_theorem_rejects_bad_coefficients():
    with pytest.raises(FieldError):
        TraceTheoremParams(FqPoly.zero(F9), AdditivePoly(F9, (3,)), FqPoly.one(F9))
    with pytest.raises(FieldError):
        TraceTheoremParams(FqPoly.zero(F9), A_ID, parse_poly(F9, "3*x+1"))


def test_trace_theorem_rejects_prime_fields():
    # over F_p the no-roots condition is not necessary (the kernel is trivial)
    tp = TraceTheoremParams(FqPoly.zero(F5), AdditivePoly(F5, (1,)), FqPoly.one(F5))
    with pytest.raises(ScopeError):
        trace_theorem_check(tp)


def test_trace_theorem_gamma_delta_preset():
    # g = gamma*h + delta is just another g; spot-check against the oracle
    rng = random.Random("gdelta")
    for fld in (F9, F25):
        gamma, delta = gamma_search(fld), rng.randrange(fld.q)
        for _ in range(8):
            h = FqPoly(fld, [rng.randrange(fld.p) for _ in range(3)])
            A = AdditivePoly(fld, [rng.randrange(fld.p) for _ in range(2)])
            tp = TraceTheoremParams.gamma_delta(h, A, gamma, delta)
            assert tp.g == h.scaled(gamma) + FqPoly.constant(fld, delta)
            assert trace_theorem_check(tp).verdict == is_permutation(trace_theorem_poly(tp))


def test_no_roots_gives_unit_values_everywhere():
    # h without roots in F_p keeps h(B(alpha)) in F_p minus {0} for every alpha
    rng = random.Random("noroot")
    for fld in (F9, F25):
        B = trace_poly(fld)
        hs = [FqPoly(fld, [rng.randrange(fld.p) for _ in range(3)]) for _ in range(20)]
        for h in hs:
            if any(h.eval(c) == 0 for c in range(fld.p)):
                continue
            for alpha in fld.elements():
                v = h.eval(B.eval(alpha))
                assert 0 < v < fld.p


def test_gamma_search_examples():
    assert gamma_search(F9) == 3          # t, since t^2 = -1 under x^2+1
    assert gamma_search(F25) == 5         # least index with gamma^4 = -1
    assert F25.pow(5, 4) == F25.neg(1)
    for idx in range(5):
        if idx:
            assert F25.pow(idx, 4) != F25.neg(1)
    with pytest.raises(ScopeError):
        gamma_search(make_field(2, 2))
    with pytest.raises(ScopeError):
        gamma_search(F5)


def test_example_family_f9():
    f = example_family(F9, parse_poly(F9, "x^2"))
    assert f == parse_poly(F9, "3*x^6+6*x^4+3*x^2+x")
    assert f.degree == 6 == 2 * F9.p
    assert is_permutation(f)


def test_example_family_h_zero():
    assert example_family(F9, FqPoly.zero(F9)) == FqPoly.x(F9)


def test_example_family_f49_degree():
    F49 = make_field(7, 2)
    f = example_family(F49, parse_poly(F49, "x^2"))
    assert f.degree == 14
    assert is_permutation(f)


def test_example_family_validations():
    with pytest.raises(FieldError):
        example_family(F9, parse_poly(F9, "3*x"))     # coefficient outside F_p
    with pytest.raises(ScopeError):
        example_family(make_field(3, 3), FqPoly.one(make_field(3, 3)))
