import math

import numpy as np
import pytest

from bubbletons.algebra import mul
from bubbletons.bianchi import (SectionPair, Stage, beta_of, build_pipeline, permute,
                                stage_from_pair)
from bubbletons.darboux import make_darboux_surface, transform_quaternion
from bubbletons.delaunay import frame, make_profile
from bubbletons.errors import EqualSpectralParams, NotClosed
from bubbletons.resonance import resonance_mu
from bubbletons.spectral import ParallelSection, multiplier, spectral_data
from bubbletons.verify import Grid, check_closure, check_mean_curvature


def pair_at(prof, spec, coeffs, x, y):
    alpha = ParallelSection(spec, prof, coeffs)(x, y)
    return SectionPair(alpha, beta_of(alpha, frame(prof, x, y).N, spec), spec)


@pytest.fixture
def points(rng):
    return rng.uniform(-4, 4, 100), rng.uniform(0, 2 * np.pi, 100)


def test_beta_at_parallel_parameter(points):
    prof = make_profile(0.2)
    x, y = points
    spec = spectral_data(resonance_mu(0.2, 1, 2).mu, 0.2)
    alpha = ParallelSection(spec, prof, (1, 1))(x, y)
    fr = frame(prof, x, y)
    par = spectral_data(-1.0, 0.2)
    beta = beta_of(alpha, fr.N, par)
    assert beta.allclose(-mul(fr.N, alpha), atol=1e-12)
    assert SectionPair(alpha, beta, par).offset().allclose(fr.N, atol=1e-12)


@pytest.mark.parametrize("r,mu", [(0.5, 7 + 4 * math.sqrt(3)), (0.2, 2.3), (-0.125, -4.0),
                                  (0.2, -5.0)])
def test_offset_equals_darboux_step(r, mu, points):
    prof, spec = make_profile(r), spectral_data(mu, r)
    x, y = points
    pair = pair_at(prof, spec, (1, 0.5 - 1j), x, y)
    fr = frame(prof, x, y)
    T = transform_quaternion(fr.f, fr.N, pair.alpha, spec) - fr.f
    assert (fr.f + pair.offset()).allclose(fr.f + T, atol=1e-10)


def test_beta_inherits_multiplier(points):
    r, (m, n) = -0.125, (2, 3)
    prof = make_profile(r)
    spec = spectral_data(resonance_mu(r, m, n).mu, r)
    x, y = points
    h = multiplier(spec, m, 1)
    a =pair_at(prof, spec, (1, 0), x, y)
    b = pair_at(prof, spec, (1, 0), x, y + 2 * np.pi * m)
    assert (a.beta * h).allclose(b.beta, atol=1e-9 * float(np.max(abs(b.beta))))


def test_equal_parameters_rejected(points):
    prof = make_profile(0.2)
    spec = spectral_data(2.3, 0.2)
    x, y = points
    p1 = pair_at(prof, spec, (1, 0), x, y)
    p2 = pair_at(prof, spec, (0, 1), x, y)
    with pytest.raises(EqualSpectralParams):
        permute(p1, p2)
    inv = pair_at(prof, spectral_data(1 / 2.3, 0.2), (1, 0), x, y)
    with pytest.raises(EqualSpectralParams):
        permute(p1, inv)


@pytest.mark.parametrize("mu", [2.3, -0.7, resonance_mu(0.2, 1, 2).mu])
def test_equal_parameters_collapse_to_base(mu, points):
    prof = make_profile(0.2)
    spec = spectral_data(mu, 0.2)
    x, y = points
    fr = frame(prof, x, y)
    p1 = pair_at(prof, spec, (1, 0), x, y)
    p2 = pair_at(prof, spec, (0.3j, 1), x, y)
    common = permute(p1, p2, check=False)
    f1 = fr.f + p1.offset()
    f_hat = f1 + common.offset()
    assert f_hat.allclose(fr.f, atol=1e-10)


def test_permuted_section_carries_second_multiplier(points):
    r = 0.2
    prof = make_profile(r)
    s1 = spectral_data(resonance_mu(r, 1, 3).mu, r)
    s2 = spectral_data(2.3, r)
    x, y = points
    shifted = y + 2 * np.pi
    for sign, coeffs in ((1, (1, 0)), (-1, (0, 1))):
        base = permute(pair_at(prof, s1, (1, 1), x, y), pair_at(prof, s2, coeffs, x, y))
        moved = permute(pair_at(prof, s1, (1, 1), x, shifted),
                        pair_at(prof, s2, coeffs, x, shifted))
        h = multiplier(s2, 1, sign)
        assert (base.alpha * h).allclose(moved.alpha, atol=1e-9 * float(np.max(abs(moved.alpha))))


def test_single_stage_matches_darboux_surface():
    r = 0.2
    prof = make_profile(r)
    stage = stage_from_pair(r, 1, 2, prof, coeffs=(1, 0.5j))
    pipe = build_pipeline(prof, [stage])
    surf = make_darboux_surface(prof, stage.spec, stage.coeffs)
    x, y = np.meshgrid(np.linspace(-4, 4, 21), np.linspace(0, 6.3, 21), indexing="ij")
    assert np.allclose(pipe(x, y), surf(x, y), atol=1e-13)
    assert pipe.closure_cover == 1


def test_doublebubbleton_is_closed_and_cmc():
    r = 0.2
    prof = make_profile(r)
    stages = [stage_from_pair(r, 1, 2, prof, centre=-1.5), stage_from_pair(r, 1, 3, prof, centre=1.5)]
    pipe = build_pipeline(prof, stages)
    assert pipe.closure_cover == 1
    assert check_closure(pipe, 1, np.linspace(-5, 5, 41)).passed
    grid = Grid(-5, 5, 41, 2 * np.pi, 49)
    assert check_mean_curvature(pipe, grid).passed


def test_order_does_not_matter():
    r = -0.125
    prof = make_profile(r)
    a = stage_from_pair(r, 1, 2, prof, centre=-2.0)
    b = stage_from_pair(r, 2, 3, prof, centre=2.0)
    x, y = np.meshgrid(np.linspace(-5, 5, 31), np.linspace(0, 4 * np.pi, 31), indexing="ij")
    one = build_pipeline(prof, [a, b])
    two = build_pipeline(prof, [b, a])
    assert one.closure_cover == two.closure_cover == 2
    assert np.max(np.abs(one(x, y) - two(x, y))) < 1e-7


def test_closure_cover_is_lcm():
    r = 0.5
    prof = make_profile(r)
    stages = [stage_from_pair(r, m, 5, prof) for m in (1, 2, 3, 4)]
    assert build_pipeline(prof, stages).closure_cover == 12
    assert build_pipeline(prof, stages[1:3]).closure_cover == 6


def test_pipeline_validation():
    prof = make_profile(0.2)
    good = stage_from_pair(0.2, 1, 2, prof)
    with pytest.raises(EqualSpectralParams):
        build_pipeline(prof, [good, stage_from_pair(0.2, 1, 2, prof, coeffs=(1, 2))])
    with pytest.raises(EqualSpectralParams):
        build_pipeline(prof, [good, stage_from_pair(0.2, 1, 2, prof, branch=-1)])
    with pytest.raises(NotClosed):
        build_pipeline(prof, [good, Stage(spectral_data(2.3, 0.2), (1, 1), 1)])
    with pytest.raises(ValueError):
        build_pipeline(prof, [stage_from_pair(0.5, 1, 2)])
    with pytest.raises(ValueError):
        build_pipeline(prof, [])
    with pytest.raises(ValueError):
        stage_from_pair(0.2, 1, 2, centre=1.0)
