import numpy as np
import pytest

from python.helpers import gallery
from python.helpers import matrix_core as mc
from python.helpers.errors import UsageError
from python.helpers.matrix_core import RandomModel


@pytest.mark.parametrize("name", gallery.names())
@pytest.mark.parametrize("k", [2, 3, 5])
def test_every_expectation_holds(name, k):
    entry = gallery.gallery_entry(name, k)
    results = gallery.run_expectations(entry, RandomModel(k), trials=100)
    assert [r.name for r in results] == [e.name for e in entry.expectations]
    failed = [r for r in results if not r.passed]
    assert not failed, failed


def test_registry():
    assert gallery.names() == ["nilpotent-range", "embed-k2", "direct-sum"]
    with pytest.raises(UsageError):
        gallery.gallery_entry("no-such-map")
    with pytest.raises(UsageError):
        gallery.gallery_embed_k2(1)


def test_nilpotent_range_images():
    theta = gallery.gallery_nilpotent_range().map
    assert np.array_equal(theta.image(0, 0), mc.matrix_unit(2, 0, 1))
    for (i, j), image in theta.units():
        if (i, j) != (0, 0):
            assert not np.any(image)


def test_embed_k2_shape():
    entry = gallery.gallery_embed_k2(3)
    assert (entry.map.m, entry.map.s) == (3, 5)
    assert entry.params == {"k": 3}
    image = entry.map(mc.matrix_unit(3, 0, 0))
    assert image[0, 1] == 1 and image[1, 4] == 1
    assert np.count_nonzero(image) == 2


def test_embed_k2_keeps_zero_products():
    # theta(x) theta(y) only sees (xy)_11
    entry = gallery.gallery_embed_k2(2)
    results = {r.name: r for r in gallery.run_expectations(entry, RandomModel(0), trials=20)}
    products = results["idempotent_pair_products"].detail
    assert products["ab"] == 0.0
    assert products["ba"] == 0.0


def test_direct_sum_dimension():
    entry = gallery.gallery_direct_sum(4)
    assert (entry.map.m, entry.map.s) == (4, 10)
    results = {r.name: r for r in gallery.run_expectations(entry, RandomModel(1), trials=20)}
    assert results["identity_trace"].detail == 4
    assert results["dimension_mismatch"].detail["s"] == 10
