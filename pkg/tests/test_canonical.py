"""Canonical natural transformations: constructions and decision values."""

import pytest

from gradedmod import analyze
from gradedmod import canonical as C
from gradedmod.abelian import make_epi, make_group
from gradedmod.functors import extend, restrict, tensor
from gradedmod.graded import (GradedError, GradedMorphism, GradedRing,
                              GradedRingHom, graded_kernel, ring_as_module,
                              shift)
from gradedmod.znlinalg import FpZnModule

from util import inverse_of, is_component_epi, is_component_iso, \
    is_component_mono

G0 = make_group([])
D0 = ()


def _ungraded_ring(n, extra_rels=None):
    comp = FpZnModule(n, 1, extra_rels or [])
    return GradedRing(G0, n, {D0: comp}, {(D0, D0): (((1,),),)}, (1,))


@pytest.fixture(scope="module")
def quot():
    """The quotient Z/4 -> Z/2 with the ring modules it acts on."""
    r4 = _ungraded_ring(4)
    s2 = _ungraded_ring(4, [(2,)])
    h = GradedRingHom(r4, s2, {D0: ((1,),)})
    return {"h": h, "mr": ring_as_module(r4), "ms": ring_as_module(s2),
            "mh": restrict(h, ring_as_module(s2))}


@pytest.fixture(scope="module")
def frob(instances):
    inst = instances["frobenius"]
    return {"h": inst["h"], "psi": inst["psi"],
            "mr": ring_as_module(inst["ring_r"]),
            "ms": ring_as_module(inst["ring_s"])}


def test_sigma_iso_exactly_for_ring_epi(quot, frob):
    # [DERIVED] sigma_S is bijective for the ring epi Z/4 -> Z/2 ...
    assert is_component_iso(C.sigma(quot["h"], quot["ms"]).morphism)
    # ... and not for the (non-epi) Frobenius inclusion
    assert not is_component_iso(C.sigma(frob["h"], frob["ms"]).morphism)


def test_theta_vanishes_on_counterexample(quot):
    # [DERIVED] both sides have two elements, yet the comparison map is zero
    th = C.theta(quot["h"], quot["mh"], quot["mr"])
    assert th.morphism.is_zero
    assert th.morphism.source.cardinality() == 2
    assert th.morphism.target.cardinality() == 2


def test_theta_on_graded_instance(frob):
    mh = restrict(frob["h"], frob["ms"])
    # [DERIVED] h^*(Hom_R(h_* S, R)) and Hom_S(h^*(h_* S), h^*(R)) both
    # have 16 elements here and theta does not vanish
    th = C.theta(frob["h"], mh, frob["mr"])
    assert th.morphism.source.cardinality() == 16
    assert th.morphism.target.cardinality() == 16
    assert not th.morphism.is_zero


def test_delta_and_alpha_are_isomorphisms(quot):
    dl = C.delta(quot["h"], quot["mr"], quot["mh"])
    inv = inverse_of(dl.morphism)
    assert dl.inverse == inv or \
        dl.inverse.compose(dl.morphism) == GradedMorphism.identity(
            dl.morphism.source)
    al = C.alpha(quot["h"], quot["ms"], quot["ms"], quot["mr"])
    assert al.inverse.compose(al.morphism) == GradedMorphism.identity(
        al.morphism.source)
    assert al.morphism.compose(al.inverse) == GradedMorphism.identity(
        al.morphism.target)


def test_gamma_epi_eta_mono(quot, frob):
    assert is_component_epi(C.gamma(quot["h"], quot["ms"], quot["ms"]).morphism)
    assert is_component_mono(C.eta(quot["h"], quot["ms"], quot["ms"]).morphism)
    et = C.eta(frob["h"], frob["ms"], frob["ms"])
    assert is_component_mono(et.morphism)
    # [DERIVED] graded sizes: S (x)_R S has 16 elements, Hom side as well
    assert et.morphism.source.cardinality() == 4
    assert et.morphism.target.cardinality() == 16


def test_mu_nu_pi_tau(quot):
    h, mr, ms = quot["h"], quot["mr"], quot["ms"]
    assert C.mu(h, ms, mr).morphism is not None
    assert C.nu(h, ms, mr, mr).morphism is not None
    assert C.pi(h, ms, mr, ms).morphism is not None
    assert C.tau3(mr, mr, mr).morphism is not None
    # [TRIVIAL] tau_R: R (x) M -> M is an iso for M = R
    assert is_component_iso(C.tau(mr).morphism)


def test_kappa_lambda_iso(quot):
    mr, mh = quot["mr"], quot["mh"]
    assert is_component_iso(C.kappa(mr, [mr, mh]).morphism)
    assert is_component_iso(C.lambda_big(mr, [mr, mh]).morphism)


def test_epsilon_rejects_non_surjective_h(frob):
    with pytest.raises(GradedError):
        C.epsilon(frob["h"], frob["mr"], frob["mr"])


def test_epsilon_iso_for_identity(quot):
    h_id = GradedRingHom.identity(quot["mr"].ring)
    ep = C.epsilon(h_id, quot["mr"], quot["mr"])
    assert is_component_iso(ep.morphism)


def test_epsilon_not_mono_on_truncated_polynomials(instances):
    # [DERIVED] for R = F_2[X]/(X^3) and S = R/(X) the comparison map
    # has a four-element source and a nonzero kernel
    inst = instances["d25e"]
    h = inst["h"]
    ep = C.epsilon(h, ring_as_module(inst["ring_r"]),
                   restrict(h, ring_as_module(inst["ring_s"])))
    ker, _ = graded_kernel(ep.morphism)
    assert not ker.is_zero
    assert ep.morphism.source.cardinality() == 4


def test_epsilon_defined_on_all_surjective_instances(instances):
    for name in ("d25e", "d25e_z3", "z4_to_z2"):
        inst = instances[name]
        h = inst["h"]
        m = ring_as_module(inst["ring_r"])
        n = restrict(h, ring_as_module(inst["ring_s"]))
        ep = C.epsilon(h, m, n)
        assert ep.morphism.source.ring == h.target


def test_beta_and_tensor_coarsen_iso(frob):
    psi = frob["psi"]
    ms, mr, h = frob["ms"], frob["mr"], frob["h"]
    assert is_component_iso(C.beta(psi, ms, ms).morphism)
    assert is_component_iso(
        C.beta_h(psi, h, ms, restrict(h, ms)).morphism)
    assert is_component_iso(C.tensor_coarsen_iso(psi, tensor(ms, ms)).morphism)
    assert is_component_iso(
        C.tensor_coarsen_iso(psi, extend(h, mr)).morphism)


def test_beta_under_z_to_trivial(instances):
    inst = instances["zgraded"]
    psi = inst["psi"]
    ms = ring_as_module(inst["ring_s"])
    assert is_component_iso(C.beta(psi, ms, ms).morphism)
    assert is_component_iso(
        C.tensor_coarsen_iso(psi, tensor(ms, ms)).morphism)


def test_hstar_ring_iso_and_underline(frob):
    assert is_component_iso(C.hstar_ring_iso(frob["h"]).morphism)
    ul = C.underline(frob["h"])
    assert isinstance(ul, GradedMorphism)
    assert analyze.is_mono(ul)[0]


def test_rho_mono_on_free_restriction(frob):
    # h_*(S) is free over R for the Frobenius inclusion, so rho is mono
    rho = C.rho(frob["h"], frob["mr"])
    assert analyze.is_mono(rho.morphism)[0]
