import time

import numpy as np
import pytest

from l2uwe.batch.objects import EnhanceConfig
from l2uwe.cci.contrast import compute_cci
from l2uwe.dehaze.objects import DehazeParams
from l2uwe.dehaze.transmission import enhance_single
from l2uwe.fusion.objects import EnhanceResult
from l2uwe.fusion.pipeline import l2uwe_enhance, l2uwe_enhance_detailed
from l2uwe.imgcore.filters import invert
from l2uwe.imgcore.objects import ImageF
from l2uwe.metrics.scores import e_r_scores, gradient_magnitude, mean_luminance
from l2uwe.synthetic.darken import darken, make_clean_scene, synthetic_suite
from l2uwe.utils import EnhancementException

SUITE_SIZE = 20
# Wide enough for the m=30 lighting patches and the sigma=10 smoothing to
# stay local instead of spanning the whole frame
LARGE_SIDE = 256


@pytest.fixture(scope="module")
def suite_results() -> list[tuple[ImageF, EnhanceResult]]:
    return [(lowlight, l2uwe_enhance_detailed(lowlight)) for _, lowlight in synthetic_suite(SUITE_SIZE, 64, 64, seed=7)]


@pytest.fixture(scope="module")
def large_suite_results() -> list[tuple[ImageF, EnhanceResult]]:
    suite = synthetic_suite(SUITE_SIZE, LARGE_SIDE, LARGE_SIDE, seed=3)
    return [(lowlight, l2uwe_enhance_detailed(lowlight)) for _, lowlight in suite]


def test_suite_is_dark():
    for clean, lowlight in synthetic_suite(5, 32, 32, seed=1):
        assert mean_luminance(lowlight) < mean_luminance(clean)


def test_synthetic_suite_is_reproducible():
    first = synthetic_suite(3, 16, 16, seed=4)
    second = synthetic_suite(3, 16, 16, seed=4)
    for (clean_a, dark_a), (clean_b, dark_b) in zip(first, second, strict=True):
        np.testing.assert_array_equal(clean_a.data, clean_b.data)
        np.testing.assert_array_equal(dark_a.data, dark_b.data)


def test_darken_applies_gamma_without_falloff():
    clean = ImageF.full(4, 4, 0.5)
    np.testing.assert_allclose(darken(clean, floor=1.0).data, 0.5**2.2)


def test_synthetic_scenes_are_noise_free_by_default():
    clean = make_clean_scene(32, 32, seed=2)
    noisy = make_clean_scene(32, 32, seed=2, noise=0.01)
    np.testing.assert_array_equal(clean.data, make_clean_scene(32, 32, seed=2).data)
    assert not np.array_equal(clean.data, noisy.data)
    with pytest.raises(EnhancementException):
        make_clean_scene(8, 8, seed=0, noise=-0.1)


def test_enhancement_raises_mean_luminance(large_suite_results):
    for lowlight, result in large_suite_results:
        assert mean_luminance(result.output) >= mean_luminance(lowlight) + 0.05


def test_enhancement_reveals_edges(large_suite_results):
    improved = 0
    for lowlight, result in large_suite_results:
        e, _ = e_r_scores(lowlight, result.output)
        if e is not None and e > 0:
            improved += 1
    assert improved >= 0.9 * SUITE_SIZE


def test_detail_input_brightens(large_suite_results):
    brighter = sum(
        mean_luminance(result.inputs[0].output) > mean_luminance(lowlight) for lowlight, result in large_suite_results
    )
    assert brighter >= 0.9 * SUITE_SIZE


def test_bright_input_is_brighter_than_detail_input(large_suite_results):
    brighter = sum(
        mean_luminance(result.inputs[1].output) >= mean_luminance(result.inputs[0].output)
        for _, result in large_suite_results
    )
    assert brighter >= 0.9 * SUITE_SIZE


@pytest.mark.parametrize("seed", range(6))
def test_quarter_darkened_scene_brightens_with_wide_lighting(seed):
    dark = ImageF(0.25 * make_clean_scene(LARGE_SIDE, LARGE_SIDE, seed=seed).data)
    cci = compute_cci(invert(dark))
    out = enhance_single(dark, cci, 30, DehazeParams())
    assert mean_luminance(out) > mean_luminance(dark)


@pytest.mark.parametrize("seed", range(6))
def test_gamma_darkened_scene_gains_luminance(seed):
    # floor=1 disables the spot-light falloff, leaving the 2.2 gamma alone
    dark = darken(make_clean_scene(LARGE_SIDE, LARGE_SIDE, seed=seed), floor=1.0)
    out = l2uwe_enhance(dark)
    assert mean_luminance(out) >= mean_luminance(dark) + 0.05


def test_default_codes_follow_contrast_on_darkened_scene():
    dark = ImageF(0.25 * make_clean_scene(LARGE_SIDE, LARGE_SIDE, seed=0).data)
    codes = compute_cci(invert(dark)).codes
    assert np.mean(codes == 7) < 0.5


def test_fusion_keeps_detail(suite_results):
    fused = sum(gradient_magnitude(result.output).sum() for _, result in suite_results)
    best_input = sum(
        max(gradient_magnitude(single.output).sum() for single in result.inputs) for _, result in suite_results
    )
    assert fused >= 0.9 * best_input


def test_weights_partition_unity(suite_results):
    for _, result in suite_results:
        total = np.sum([w.data for w in result.normalized], axis=0)
        np.testing.assert_allclose(total, 1.0, atol=1e-6)


def test_detailed_result_shapes(suite_results):
    lowlight, result = suite_results[0]
    assert result.cci.shape == lowlight.shape
    assert [single.m for single in result.inputs] == [5, 30]
    assert len(result.weight_maps) == 2
    assert result.levels == 4
    np.testing.assert_array_equal(result.output.data, np.clip(result.fused_raw.data, 0.0, 1.0))


@pytest.mark.parametrize("height,width", [(1, 1), (3, 3), (5, 9), (40, 30)])
@pytest.mark.parametrize("value", [0.0, 1.0])
def test_flat_inputs_give_valid_output(height, width, value):
    out = l2uwe_enhance(ImageF.full(height, width, value)).data
    assert out.shape == (height, width, 3)
    assert np.all(np.isfinite(out))
    assert out.min() >= 0.0
    assert out.max() <= 1.0


def test_tiny_textured_input(rng):
    out = l2uwe_enhance(ImageF(rng.random((3, 3, 3)) * 0.2)).data
    assert out.shape == (3, 3, 3)
    assert np.all((out >= 0.0) & (out <= 1.0))


def test_pipeline_is_deterministic():
    lowlight = darken(make_clean_scene(48, 48, seed=11))
    first = l2uwe_enhance(lowlight)
    second = l2uwe_enhance(lowlight)
    np.testing.assert_array_equal(first.data, second.data)


def test_global_lighting_changes_output():
    lowlight = darken(make_clean_scene(48, 48, seed=12))
    local = l2uwe_enhance(lowlight, EnhanceConfig(lighting_mode="local_cg"))
    single = l2uwe_enhance_detailed(lowlight, EnhanceConfig(lighting_mode="global"))
    assert not np.array_equal(local.data, single.output.data)
    # A single light value makes both inputs identical
    np.testing.assert_array_equal(single.inputs[0].output.data, single.inputs[1].output.data)


def test_extra_factor_adds_a_fusion_input():
    lowlight = darken(make_clean_scene(32, 32, seed=13))
    result = l2uwe_enhance_detailed(lowlight, EnhanceConfig(m_extra=[15]))
    assert [single.m for single in result.inputs] == [5, 30, 15]
    total = np.sum([w.data for w in result.normalized], axis=0)
    np.testing.assert_allclose(total, 1.0, atol=1e-6)


def test_single_level_config(rng):
    lowlight = ImageF(rng.random((32, 32, 3)) * 0.3)
    result = l2uwe_enhance_detailed(lowlight, EnhanceConfig(levels=1))
    assert result.levels == 1
    stack = np.stack([single.output.data for single in result.inputs])
    assert np.all(result.fused_raw.data >= stack.min(axis=0) - 1e-12)
    assert np.all(result.fused_raw.data <= stack.max(axis=0) + 1e-12)


def test_rejects_gray_input(rng):
    with pytest.raises(EnhancementException):
        l2uwe_enhance(ImageF(rng.random((8, 8, 1))))


@pytest.mark.slow
def test_full_size_image_runs_quickly():
    lowlight = darken(make_clean_scene(600, 800, seed=5))
    start = time.perf_counter()
    out = l2uwe_enhance(lowlight)
    assert time.perf_counter() - start < 10.0
    assert out.shape == (600, 800)
