"""Shared helpers for the test suite."""

from gradedmod import analyze
from gradedmod.graded import GradedMorphism
from gradedmod.znlinalg import howell, span_contains


def rebase(u: GradedMorphism, source, target) -> GradedMorphism:
    """The same matrices between different (componentwise equal) modules."""
    for d, c in u.source.components.items():
        assert source.component(d) == c, f"source mismatch at {d}"
    for d, c in u.target.components.items():
        assert target.component(d) == c, f"target mismatch at {d}"
    return GradedMorphism(source, target, dict(u.maps), validate=False)


def inverse_of(u: GradedMorphism) -> GradedMorphism:
    """Two-sided inverse of an isomorphism, verified."""
    ok, v = analyze.is_section(u)
    assert ok, "morphism is not even a section"
    assert u.compose(v) == GradedMorphism.identity(u.target)
    return v


def is_component_iso(u: GradedMorphism) -> bool:
    """Componentwise bijectivity, decided directly by linear algebra."""
    return analyze.is_iso(u)[0]


def is_component_epi(u: GradedMorphism) -> bool:
    return analyze.is_epi(u)[0]


def is_component_mono(u: GradedMorphism) -> bool:
    return analyze.is_mono(u)[0]
