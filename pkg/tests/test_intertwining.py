import random
from itertools import product

import pytest

from tameforge.cyclotomic import Cyclotomic
from tameforge.errors import InvalidInput, OddDimension
from tameforge.heisenberg import SchroedingerModel
from tameforge.intertwining import (
    block_operator,
    build_fibered_sum,
    check_covariance,
    intertwiner,
    sample_block_elements,
    sample_unipotent_elements,
    siegel_element,
    siegel_unipotent,
)


@pytest.mark.parametrize(
    "dim_w13, dim_w0, dims",
    [
        (0, 2, (3, 3, 3, 3)),
        (2, 0, (9, 3, 3, 1)),
        (2, 2, (27, 9, 9, 3)),
    ],
)
def test_intertwiner_is_unique_and_supported_on_tau0(dim_w13, dim_w0, dims):
    report = intertwiner(build_fibered_sum(dim_w13, dim_w0, 3), rng=random.Random(7))
    assert report.hom_dimension == 1
    assert (report.dim_tau_star, report.dim_tau, report.dim_gtau, report.dim_tau0) == dims
    assert report.multiplicity_in_tau == 1
    assert report.multiplicity_in_gtau == 1
    assert report.equivariance_checked == 5
    nonzero = report.to_dict()["operator_nonzero"]
    assert len(nonzero) == report.dim_tau0


def test_intertwiner_scales_with_c():
    data = build_fibered_sum(2, 2, 3)
    c = Cyclotomic.root_of_unity(3)
    base = intertwiner(data)
    scaled = intertwiner(data, c=c)
    assert scaled.operator == base.operator.scale(c)
    assert scaled.scalar == c


def test_fibered_sum_dimensions():
    data = build_fibered_sum(2, 2, 5)
    summary = data.to_dict()
    assert summary["dim_W"] == 4
    assert summary["dim_gW"] == 4
    assert summary["dim_W_star"] == 6


@pytest.mark.parametrize(
    "dim_w13, dim_w0, error",
    [(1, 2, OddDimension), (2, 3, OddDimension), (0, 0, InvalidInput), (-2, 2, InvalidInput)],
)
def test_fibered_sum_rejects_bad_dimensions(dim_w13, dim_w0, error):
    with pytest.raises(error):
        build_fibered_sum(dim_w13, dim_w0, 3)


def test_block_elements_are_covariant():
    data = build_fibered_sum(2, 2, 3)
    for s in sample_block_elements(data, random.Random(3), count=3):
        check_covariance(data, s)


def test_singular_block_rejected():
    data = build_fibered_sum(2, 2, 3)
    with pytest.raises(InvalidInput):
        siegel_element(data, [[[0]], [[1]], [[1]]])


@pytest.mark.slow
def test_intertwiner_over_f5():
    report = intertwiner(build_fibered_sum(2, 2, 5), rng=random.Random(11))
    assert report.hom_dimension == 1
    assert report.dim_tau0 == 5


def _span(space, vectors):
    spanned = set()
    for coeffs in product(range(space.p), repeat=len(vectors)):
        total = tuple([0] * space.dimension)
        for c, v in zip(coeffs, vectors):
            total = space.add(total, tuple(c * x for x in v))
        spanned.add(total)
    return spanned


@pytest.mark.parametrize("dim_w13, dim_w0", [(0, 2), (2, 0), (2, 2)])
def test_unipotent_elements_preserve_w_and_gw(dim_w13, dim_w0):
    data = build_fibered_sum(dim_w13, dim_w0, 3)
    w, gw = _span(data.space, data.w), _span(data.space, data.gw)
    for s in sample_unipotent_elements(data, random.Random(5), count=3):
        assert s != data.space.identity()
        assert {data.space.apply(s, v) for v in w} == w
        assert {data.space.apply(s, v) for v in gw} == gw
        check_covariance(data, s)


def test_unipotent_operator_is_diagonal():
    data = build_fibered_sum(2, 2, 3)
    s = siegel_unipotent(data, [[[1]], [[2]], [[0]]])
    omega = block_operator(SchroedingerModel(data.space, data.polarization), s)
    assert omega.is_diagonal()
    assert any(omega.exps)


def test_unipotent_block_must_be_symmetric():
    data = build_fibered_sum(4, 0, 3)
    with pytest.raises(InvalidInput):
        siegel_unipotent(data, [[[0, 1], [0, 0]], [], [[0, 0], [0, 0]]])
