import random

import pytest

from bentcyc.boolfun import BooleanFunction
from bentcyc.constructions import (
    CONSTRUCTION_IDS,
    DillonMuR,
    DillonTwoBranch,
    KasamiTwoValue,
    KasamiZeroBranch,
    NihoParams,
    add_walsh_predictor,
    dillon_dual,
    dillon_is_bent,
    dillon_ps_criterion,
    e_set,
    kasami_coverage_ok,
    kasami_dual,
    kasami_walsh,
    kloosterman_subfield,
    niho_condition_thm2,
    niho_is_bent,
    niho_walsh,
    tr1m,
    walsh_predictor_mixed,
)
from bentcyc.fields import make_field

from conftest import heavy
from genspecs import (
    random_add_general,
    random_dillon_general,
    random_dillon_mu_r,
    random_dillon_r3,
    random_dillon_two_branch,
    random_kasami_coverage,
    random_kasami_general,
    random_mixed_spec,
    random_niho,
    rng_for,
)

DILLON_GENS = {
    "general": random_dillon_general,
    "two_branch": random_dillon_two_branch,
    "mu_r": random_dillon_mu_r,
}


def check_dual_exact(p, f=None):
    """When the predicate holds: walsh[b] = 2^m (-1)^dual(b) for every b."""
    f = f or p.materialize()
    spec = f.walsh()
    assert spec.is_bent()
    assert spec.dual() == p.dual_function()


# ---------------------------------------------------------------------------
# Predicate == oracle, per variant
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("m", [2, 3])
@pytest.mark.parametrize("variant", sorted(DILLON_GENS))
def test_dillon_predicate_matches_oracle(m, variant):
    K = make_field(2 * m)
    rng = rng_for(f"dillon-{variant}", m)
    bents = 0
    for _ in range(120):
        p = DILLON_GENS[variant](K, rng)
        pred = dillon_is_bent(p)
        assert pred == p.materialize().is_bent()
        if pred:
            bents += 1
            check_dual_exact(p)
    assert bents > 0


@pytest.mark.parametrize("m", [3, 5])
def test_dillon_r3_predicate_matches_oracle(m):
    K = make_field(2 * m)
    rng = rng_for("dillon-r3", m)
    bents = 0
    for _ in range(120 if m == 3 else 40):
        p = random_dillon_r3(K, rng)
        pred = dillon_is_bent(p)
        assert pred == p.materialize().is_bent()
        if pred and m == 3:
            bents += 1
            check_dual_exact(p)
    if m == 3:
        assert bents > 0


@pytest.mark.parametrize("m", [2, 3])
def test_niho_predicate_matches_oracle(m):
    K = make_field(2 * m)
    rng = rng_for("niho", m)
    bents = 0
    for _ in range(120):
        p = random_niho(K, rng)
        pred = niho_is_bent(p)
        assert pred == niho_is_bent(p, fast=False)
        assert pred == p.materialize().is_bent()
        if pred:
            bents += 1
    assert bents > 0


@pytest.mark.parametrize("m", [2, 3])
def test_kasami_predicate_matches_oracle(m):
    K = make_field(2 * m)
    rng = rng_for("kasami", m)
    bents = 0
    for _ in range(150):
        p = random_kasami_general(K, rng)
        pred = p.is_bent_predicate()
        oracle = p.materialize().is_bent()
        # coverage is sufficient for bentness; never a false positive
        if pred:
            assert oracle
            bents += 1
            check_dual_exact(p)
    # coverage instances exist (and the greedy generator makes them)
    p = random_kasami_coverage(K, rng)
    assert p.is_bent_predicate() and p.materialize().is_bent()
    assert bents >= 0


@heavy
@pytest.mark.parametrize("m", [4, 5])
def test_predicates_match_oracle_larger_fields(m):
    K = make_field(2 * m)
    for variant, gen in DILLON_GENS.items():
        rng = rng_for(f"large-{variant}", m)
        for _ in range(500):
            p = gen(K, rng)
            assert dillon_is_bent(p) == p.materialize().is_bent()
    rng = rng_for("large-niho", m)
    for _ in range(500):
        p = random_niho(K, rng)
        assert niho_is_bent(p) == p.materialize().is_bent()
    rng = rng_for("large-kasami", m)
    for _ in range(100):
        p = random_kasami_coverage(K, rng)
        assert p.materialize().is_bent()
    if m == 5:
        rng = rng_for("large-r3", m)
        for _ in range(500):
            p = random_dillon_r3(K, rng)
            assert dillon_is_bent(p) == p.materialize().is_bent()


# ---------------------------------------------------------------------------
# Dillon specifics
# ---------------------------------------------------------------------------

def test_two_branch_empty_Z_is_monomial_criterion():
    K = make_field(6)
    q = 8
    rng = rng_for("z-empty", 3)
    for _ in range(40):
        a2 = rng.randrange(1, K.order)
        p = DillonTwoBranch(K, rng.randrange(K.order), 1, a2, 1, frozenset())
        k = kloosterman_subfield(K, K.pow(a2, q + 1))
        assert p.is_bent_predicate() == (k == 0)


def test_mu_r_monomial_case():
    # eps = 1, l1 = l2: reduces to Tr(c x^(l(q-1))), bent iff K_m(c^(q+1)) = 0
    K = make_field(6)
    q = 8
    for clog in range(0, 63, 5):
        c = K.exp(clog)
        p = DillonMuR(K, c, 1, 3, 2, 2)
        mono = BooleanFunction.from_closure(
            K,
            lambda x: K.abs_trace(K.mul(c, K.pow(x, 2 * (q - 1)))) if x else 0,
        )
        assert p.materialize() == mono
        assert p.is_bent_predicate() == mono.is_bent()


def test_dillon_dual_is_bent_and_exact():
    K = make_field(6)
    rng = rng_for("dual", 3)
    found = 0
    while found < 10:
        p = random_dillon_general(K, rng)
        if dillon_is_bent(p):
            found += 1
            f = p.materialize()
            d = dillon_dual(p)
            assert f.walsh().dual() == d
            assert d.is_bent()
            assert d.dual() == f  # involution back to f


def test_dillon_ps_criterion():
    K = make_field(6)
    assert dillon_ps_criterion(BooleanFunction.zero(K)) is False
    rng = rng_for("ps", 3)
    for _ in range(60):
        p = random_dillon_general(K, rng)
        f = p.materialize()
        assert dillon_ps_criterion(f) == f.is_bent()
    with pytest.raises(ValueError, match="not Dillon type"):
        dillon_ps_criterion(
            BooleanFunction.from_closure(K, lambda x: x & 1)
        )
    g = BooleanFunction.from_closure(K, lambda x: 1)
    with pytest.raises(ValueError, match="not Dillon type"):
        dillon_ps_criterion(g)


def test_dillon_monomial_ps():
    # Tr(c x^(q-1)) with K_m(c^(q+1)) = 0 passes the partial-spread count
    K = make_field(6)
    q = 8
    hits = 0
    for clog in range(63):
        c = K.exp(clog)
        if kloosterman_subfield(K, K.pow(c, q + 1)) == 0:
            f = BooleanFunction.from_closure(
                K, lambda x: K.abs_trace(K.mul(c, K.pow(x, q - 1))) if x else 0
            )
            assert dillon_ps_criterion(f) and f.is_bent()
            hits += 1
    assert hits > 0


# ---------------------------------------------------------------------------
# Niho specifics
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("m", [2, 3])
def test_niho_walsh_formula(m):
    K = make_field(2 * m)
    rng = rng_for("niho-walsh", m)
    for _ in range(30):
        p = random_niho(K, rng)
        sp = p.materialize().walsh()
        for b in range(K.order):
            assert sp[b] == niho_walsh(p, b)


def test_niho_alphas_live_in_subfield():
    K = make_field(8)
    rng = rng_for("niho-alpha", 4)
    for _ in range(20):
        p = random_niho(K, rng)
        assert all(K.subfield_test(4, al) for al in p.alphas())


def test_niho_t_at_zero_counts_alpha_zeros():
    K = make_field(6)
    rng = rng_for("niho-zeros", 3)
    for _ in range(30):
        p = random_niho(K, rng)
        assert p.t_sum(0) == sum(1 for al in p.alphas() if al == 0)


@pytest.mark.parametrize("m", [2, 3])
def test_niho_condition_classification_matches_bentness(m):
    K = make_field(2 * m)
    rng = rng_for("niho-cond", m)
    seen = set()
    for _ in range(400 if m == 2 else 150):
        p = random_niho(K, rng)
        cls = niho_condition_thm2(p)
        seen.add(cls)
        assert (cls in ("cond1", "cond2")) == niho_is_bent(p)
    assert "neither" in seen


def test_niho_const_alpha_is_cond1_and_single_zero_is_neither():
    K = make_field(4)
    xi = K.subfield_generator(2)
    for i in range(3):
        p = NihoParams.const_alpha(K, K.pow(xi, i))
        assert niho_condition_thm2(p) == "cond1"
        assert niho_is_bent(p)
        check_dual_exact(p)
    # exactly one zero alpha cannot be bent (T-sum at 0 is 1)
    rng = rng_for("niho-onezero", 2)
    for _ in range(200):
        p = random_niho(K, rng)
        if sum(1 for al in p.alphas() if al == 0) == 1:
            assert niho_condition_thm2(p) == "neither"
            assert not niho_is_bent(p)
            break


# ---------------------------------------------------------------------------
# Mixed predictor
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("m", [2, 3])
def test_mixed_predictor_matches_oracle(m):
    K = make_field(2 * m)
    rng = rng_for("mixed", m)
    for _ in range(60):
        spec = random_mixed_spec(K, rng)
        sp = spec.materialize().walsh()
        for b in range(K.order):
            assert walsh_predictor_mixed(spec, b) == sp[b]


def test_mixed_predictor_rejects_other_exponents():
    K = make_field(6)
    q = 8
    from bentcyc.cyclotomic import MultCycSpec

    spec = MultCycSpec(K, [(1, 3)] + [(0, 0)] * q)  # 3 mod 7 not a 2-power
    with pytest.raises(ValueError, match="mixed theorem inapplicable"):
        walsh_predictor_mixed(spec, 0)


def test_mixed_all_zero_at_b0():
    # all a_i = 0 with Dillon rows: W(0) = q^2 (spectrum of the zero function)
    K = make_field(6)
    q = 8
    from bentcyc.cyclotomic import MultCycSpec

    spec = MultCycSpec(K, [(0, q - 1)] * (q + 1))
    assert walsh_predictor_mixed(spec, 0) == q * q


# ---------------------------------------------------------------------------
# Kasami specifics
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("m", [2, 3])
def test_kasami_walsh_formula_and_dual(m):
    K = make_field(2 * m)
    q = 1 << m
    rng = rng_for("kasami-walsh", m)
    for _ in range(25):
        p = random_kasami_coverage(K, rng)
        sp = p.materialize().walsh()
        for b in range(K.order):
            assert kasami_walsh(p, b) == sp[b]
        assert sp.dual() == kasami_dual(p)


def test_kasami_coverage_is_bijection_check():
    K = make_field(6)
    rng = rng_for("kasami-bij", 3)
    for _ in range(40):
        p = random_kasami_general(K, rng)
        vals = p.coverage_values()
        assert p.coverage_ok() == (
            len(set(vals)) == len(vals) == 8
        )
        if p.coverage_ok():
            assert set(vals) == set(K.subfield_elements(3))


def test_kasami_beta_set_under_coverage():
    K = make_field(6)
    rng = rng_for("kasami-beta", 3)
    p = random_kasami_coverage(K, rng)
    assert set(p.beta_map()) == set(K.subfield_elements(3))


def test_kasami_constant_alpha_reduces_to_monomial():
    K = make_field(6)
    q = 8
    xi = K.subfield_generator(3)
    a = K.pow(xi, 5)
    from bentcyc.constructions import KasamiGeneral

    p = KasamiGeneral(K, a, (a,) * (q - 1))
    assert p.coverage_ok()
    mono = BooleanFunction.from_closure(
        K, lambda x: tr1m(K, K.mul(a, K.pow(x, q + 1)))
    )
    assert p.materialize() == mono
    ainv = K.inv(a)
    want_dual = BooleanFunction.from_closure(
        K, lambda x: tr1m(K, K.mul(ainv, K.pow(x, q + 1))) ^ 1
    )
    assert p.materialize().walsh().dual() == want_dual


@pytest.mark.parametrize("m", [2, 3, 4])
def test_kasami_zero_branch_all_c(m):
    K = make_field(2 * m)
    q = 1 << m
    xi = K.subfield_generator(m)
    for i in range(q - 1):
        p = KasamiZeroBranch(K, K.pow(xi, i))
        assert p.coverage_ok()
        check_dual_exact(p)


def test_kasami_two_value_predicate():
    K = make_field(8)
    q = 16
    xi = K.subfield_generator(4)
    Z = frozenset({2})
    hits = []
    for i in range(q - 1):
        for j in range(q - 1):
            if i == j:
                continue
            p = KasamiTwoValue(K, K.pow(xi, i), K.pow(xi, j), Z)
            if p.is_bent_predicate():
                hits.append(p)
                assert kasami_coverage_ok(p)
                check_dual_exact(p)
    assert len(hits) == 14


# ---------------------------------------------------------------------------
# Additive predictor
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("m", [2, 3])
def test_add_general_predictor_matches_oracle(m):
    K = make_field(2 * m)
    rng = rng_for("addpred", m)
    for _ in range(40):
        spec = random_add_general(K, rng)
        sp = spec.materialize().walsh()
        for b in range(K.order):
            assert add_walsh_predictor(spec, b) == sp[b]


def test_e_set_specializations():
    K = make_field(6)
    rng = rng_for("eset", 3)
    # all a_i = 0: E(b) = {i : Tr_k^n(b) = 0} and each term is (-1)^Tr(b v_i)
    spec = random_add_general(K, rng)
    zero_spec_ = type(spec)(
        K, spec.k, spec.representatives, [(0, t) for _, t in spec.branches]
    )
    for b in (0, 1, K.exp(17), K.exp(40)):
        es = e_set(zero_spec_, b)
        if K.rel_trace(zero_spec_.k, b) == 0:
            assert es == list(range(len(spec.representatives)))
        else:
            assert es == []
    # Kasami specialization: |E(b)| = 1 for every b under coverage
    p = random_kasami_coverage(K, rng)
    gen = p.build().to_general()
    for b in range(K.order):
        assert len(e_set(gen, b)) == 1


def test_registry_ids():
    assert len(CONSTRUCTION_IDS) == 10
    assert "dillon.mu_r" in CONSTRUCTION_IDS and "mixed.wf" in CONSTRUCTION_IDS
