import numpy as np
import pytest

from l2uwe.fusion.multiscale import fuse_multiscale, fuse_multiscale_unclamped
from l2uwe.fusion.objects import NormalizedWeight, WeightMaps
from l2uwe.fusion.weights import (
    WEIGHT_DELTA,
    compute_weight_maps,
    local_contrast_weight,
    luminance_weight,
    normalize_weights,
    saliency_weight,
)
from l2uwe.imgcore.objects import ImageF
from l2uwe.tests.oracles import random_image
from l2uwe.utils import EnhancementException


def random_weights(rng, count: int, height: int, width: int) -> list[NormalizedWeight]:
    maps = [compute_weight_maps(random_image(rng, height, width)) for _ in range(count)]
    return normalize_weights(maps)


def test_weights_of_constant_image_are_zero():
    maps = compute_weight_maps(ImageF.full(16, 16, 0.4))
    for weight in (maps.saliency, maps.luminance, maps.local_contrast):
        np.testing.assert_allclose(weight.plane(), 0.0, atol=1e-12)


def test_saliency_of_flat_color_is_zero():
    np.testing.assert_allclose(saliency_weight(ImageF.full(12, 12, (0.1, 0.5, 0.9))).plane(), 0.0, atol=1e-12)


def test_saliency_highlights_a_spot():
    data = np.full((21, 21, 3), 0.2)
    data[10, 10] = 1.0
    saliency = saliency_weight(ImageF(data)).plane()
    assert np.unravel_index(np.argmax(saliency), saliency.shape) == (10, 10)


def test_luminance_weight_of_gray_is_zero(rng):
    gray = rng.random((10, 10, 1))
    np.testing.assert_allclose(luminance_weight(ImageF(np.repeat(gray, 3, axis=2))).plane(), 0.0, atol=1e-12)


def test_luminance_weight_of_pure_red():
    # Deviations (2/3, -1/3, -1/3) from the mean 1/3
    weight = luminance_weight(ImageF.full(2, 2, (1.0, 0.0, 0.0))).plane()
    np.testing.assert_allclose(weight, np.sqrt(2.0) / 3.0)


def test_local_contrast_on_isolated_point():
    data = np.zeros((7, 7, 3))
    data[3, 3] = 1.0
    contrast = local_contrast_weight(ImageF(data)).plane()
    assert contrast[3, 3] == pytest.approx(1.0)
    assert contrast[2, 3] == pytest.approx(1 / 8)
    assert contrast[0, 0] == 0.0


def test_weight_maps_are_non_negative(rng):
    maps = compute_weight_maps(random_image(rng, 20, 20))
    for weight in (maps.saliency, maps.luminance, maps.local_contrast):
        assert weight.data.min() >= 0.0


def test_weight_maps_reject_negative_values():
    zero = ImageF.full(3, 3, 0.0, channels=1)
    with pytest.raises(EnhancementException):
        WeightMaps(saliency=ImageF.full(3, 3, -0.1, channels=1), luminance=zero, local_contrast=zero)


def test_normalized_weights_partition_unity(rng):
    for count in (2, 3):
        weights = random_weights(rng, count, 24, 24)
        total = np.sum([w.data for w in weights], axis=0)
        np.testing.assert_allclose(total, 1.0, atol=1e-6)


def test_normalized_weights_split_evenly_where_all_zero():
    maps = [compute_weight_maps(ImageF.full(8, 8, v)) for v in (0.2, 0.7)]
    weights = normalize_weights(maps)
    for weight in weights:
        np.testing.assert_allclose(weight.data, 0.5, atol=1e-9)


def test_normalized_weights_follow_closed_form(rng):
    maps = [compute_weight_maps(random_image(rng, 10, 10)) for _ in range(2)]
    products = [m.product() for m in maps]
    expected = (products[0] + WEIGHT_DELTA) / (products[0] + products[1] + 2 * WEIGHT_DELTA)
    np.testing.assert_allclose(normalize_weights(maps)[0].image.plane(), expected, rtol=1e-12)


def test_normalize_needs_two_inputs(rng):
    with pytest.raises(EnhancementException):
        normalize_weights([compute_weight_maps(random_image(rng, 8, 8))])


def test_fusing_identical_inputs_returns_input(rng):
    image = random_image(rng, 64, 64)
    weights = random_weights(rng, 2, 64, 64)
    fused = fuse_multiscale([image, image], weights, levels=5)
    assert np.max(np.abs(fused.data - image.data)) <= 1e-3


def test_single_level_fusion_is_weighted_average(rng):
    inputs = [random_image(rng, 16, 16) for _ in range(2)]
    weights = random_weights(rng, 2, 16, 16)
    fused, depth = fuse_multiscale_unclamped(inputs, weights, levels=1)

    expected = weights[0].data * inputs[0].data
    expected = expected + weights[1].data * inputs[1].data
    assert depth == 1
    np.testing.assert_array_equal(fused.data, expected)


def test_single_level_fusion_stays_in_convex_hull(rng):
    inputs = [random_image(rng, 20, 20) for _ in range(3)]
    weights = random_weights(rng, 3, 20, 20)
    fused, _ = fuse_multiscale_unclamped(inputs, weights, levels=1)
    stack = np.stack([i.data for i in inputs])
    assert np.all(fused.data >= stack.min(axis=0) - 1e-12)
    assert np.all(fused.data <= stack.max(axis=0) + 1e-12)


def test_fusion_depth_is_limited_for_small_images(rng):
    inputs = [random_image(rng, 20, 20) for _ in range(2)]
    fused, depth = fuse_multiscale_unclamped(inputs, random_weights(rng, 2, 20, 20), levels=5)
    assert depth == 2
    assert fused.shape == (20, 20)


def test_fused_output_is_clamped(rng):
    inputs = [random_image(rng, 32, 32) for _ in range(2)]
    fused = fuse_multiscale(inputs, random_weights(rng, 2, 32, 32), levels=3).data
    assert fused.min() >= 0.0
    assert fused.max() <= 1.0


def test_fusion_rejects_mismatched_inputs(rng):
    weights = random_weights(rng, 2, 16, 16)
    with pytest.raises(EnhancementException):
        fuse_multiscale([random_image(rng, 16, 16)], weights)
    with pytest.raises(EnhancementException):
        fuse_multiscale([random_image(rng, 16, 16), random_image(rng, 16, 17)], weights)
