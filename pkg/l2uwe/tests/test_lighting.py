import numpy as np
import pytest

from l2uwe.cci.contrast import ContrastCodeImage
from l2uwe.imgcore.objects import ImageF
from l2uwe.lighting.atmosphere import (
    dark_channel_cg,
    global_atmosphere,
    local_cg_atmosphere,
    min_image,
    s_upsilon,
    smooth_lighting,
)
from l2uwe.lighting.objects import LIGHT_FLOOR, GlobalLight, LightingField
from l2uwe.tests.oracles import (
    naive_dark_channel,
    naive_global,
    naive_local_cg,
    naive_min_image,
    normalized_gaussian,
    random_cci,
    random_image,
)
from l2uwe.utils import EnhancementException


def ones_cci(height: int, width: int, code: int = 1) -> ContrastCodeImage:
    return ContrastCodeImage(np.full((height, width), code))


def random_case(seed: int) -> tuple[ImageF, ContrastCodeImage]:
    """Seeded random image of 2x2 up to 16x16 with random codes in 1..7."""
    rng = np.random.default_rng(seed)
    height, width = (int(n) for n in rng.integers(2, 17, size=2))
    return random_image(rng, height, width), random_cci(rng, height, width)


@pytest.mark.parametrize("m,c,expected", [(15, 1, 45), (15, 5, 25), (15, 7, 15), (5, 7, 5), (5, 1, 15)])
def test_s_upsilon_values(m, c, expected):
    assert s_upsilon(m, c) == expected


def test_s_upsilon_is_odd_and_at_least_three():
    for m in range(1, 61):
        sides = [s_upsilon(m, c) for c in range(1, 8)]
        assert all(side % 2 == 1 and side >= 3 for side in sides)
        assert sides == sorted(sides, reverse=True)


def test_s_upsilon_rejects_bad_arguments():
    with pytest.raises(EnhancementException):
        s_upsilon(5, 0)
    with pytest.raises(EnhancementException):
        s_upsilon(5, 8)
    with pytest.raises(EnhancementException):
        s_upsilon(0, 1)


def test_min_image_of_constant():
    img = ImageF.full(10, 10, (0.2, 0.5, 0.7))
    np.testing.assert_array_equal(min_image(img, ones_cci(10, 10, 3)).data, img.data)


def test_min_image_spreads_a_zero_over_three_by_three():
    data = np.ones((9, 9, 3))
    data[4, 4, 1] = 0.0
    out = min_image(ImageF(data), ones_cci(9, 9)).data

    expected = np.ones((9, 9, 3))
    expected[3:6, 3:6, 1] = 0.0
    np.testing.assert_array_equal(out, expected)


def test_min_image_matches_brute_force():
    for seed in range(50):
        img, cci = random_case(seed)
        np.testing.assert_array_equal(min_image(img, cci).data, naive_min_image(img.data, cci.codes))


@pytest.mark.parametrize("code", range(1, 8))
def test_min_image_matches_brute_force_per_code(code):
    for seed in range(50):
        img, cci = random_case(seed)
        uniform = ones_cci(cci.height, cci.width, code)
        np.testing.assert_array_equal(min_image(img, uniform).data, naive_min_image(img.data, uniform.codes))


def test_min_image_rejects_mismatched_codes(rng):
    with pytest.raises(EnhancementException):
        min_image(random_image(rng, 8, 8), ones_cci(8, 9))


def test_dark_channel_of_constant_gray():
    dark = dark_channel_cg(ImageF.full(8, 8, 0.4), ones_cci(8, 8, 2))
    assert dark.channels == 1
    np.testing.assert_array_equal(dark.plane(), 0.4)


def test_dark_channel_with_empty_channel_is_zero(rng):
    data = rng.random((12, 12, 3))
    data[:, :, 2] = 0.0
    np.testing.assert_array_equal(dark_channel_cg(ImageF(data), random_cci(rng, 12, 12)).plane(), 0.0)


def test_dark_channel_matches_brute_force():
    for seed in range(50):
        img, cci = random_case(seed)
        np.testing.assert_array_equal(dark_channel_cg(img, cci).plane(), naive_dark_channel(img.data, cci.codes))


def test_global_atmosphere_of_constant():
    img = ImageF.full(20, 20, 0.35)
    light = global_atmosphere(img, dark_channel_cg(img, ones_cci(20, 20)))
    assert light.values == pytest.approx((0.35, 0.35, 0.35))


def test_global_atmosphere_picks_unique_brightest_dark_pixel(rng):
    data = rng.random((30, 30, 3)) * 0.5
    data[7, 11] = (0.9, 0.8, 0.95)
    dark = np.full((30, 30), 0.1)
    dark[7, 11] = 0.6
    light = global_atmosphere(ImageF(data), ImageF(dark), fraction=0.001)
    assert light.values == pytest.approx((0.9, 0.8, 0.95))


@pytest.mark.parametrize("fraction", [0.001, 0.002, 0.01, 0.05])
def test_global_atmosphere_matches_sort_oracle(fraction):
    for seed in range(50):
        img, cci = random_case(seed)
        dark = dark_channel_cg(img, cci)
        light = global_atmosphere(img, dark, fraction=fraction)
        np.testing.assert_array_equal(light.values, naive_global(img.data, dark.plane(), fraction))


def test_global_atmosphere_breaks_dark_ties_in_row_major_order():
    data = np.zeros((4, 4, 3))
    data[1, 2] = (0.2, 0.9, 0.1)
    data[3, 0] = (0.8, 0.1, 0.7)
    dark = np.zeros((4, 4))
    dark[1, 2] = dark[3, 0] = 0.5
    # One pixel of 16 is selected; the earlier of the two tied positions wins
    light = global_atmosphere(ImageF(data), ImageF(dark), fraction=0.05)
    assert light.values == pytest.approx((0.2, 0.9, 0.1))


@pytest.mark.parametrize("fraction", [0.0, 0.06, -0.01])
def test_global_atmosphere_rejects_bad_fraction(rng, fraction):
    img = random_image(rng, 8, 8)
    with pytest.raises(EnhancementException):
        global_atmosphere(img, ImageF(np.zeros((8, 8))), fraction=fraction)


def test_global_light_is_floored():
    light = GlobalLight((0.0, 0.5, 1.0))
    assert light.values == (LIGHT_FLOOR, 0.5, 1.0)
    field = light.broadcast(3, 4)
    assert field.shape == (3, 4)
    np.testing.assert_array_equal(field.data[:, :, 0], LIGHT_FLOOR)


def test_local_cg_of_constant_is_floored_constant():
    field = local_cg_atmosphere(ImageF.full(16, 16, 0.6), ones_cci(16, 16, 4), m=5)
    np.testing.assert_array_equal(field.data, 0.6)

    dark = local_cg_atmosphere(ImageF.full(16, 16, 0.0), ones_cci(16, 16, 4), m=5)
    np.testing.assert_array_equal(dark.data, LIGHT_FLOOR)


def test_local_cg_spreads_bright_block_over_upsilon_square():
    # A 3x3 bright block survives the 3x3 erosion only at its centre, which
    # the 15-wide max then dilates
    data = np.full((31, 31, 3), 0.1)
    data[14:17, 14:17] = 1.0
    field = local_cg_atmosphere(ImageF(data), ones_cci(31, 31), m=5).data

    expected = np.full((31, 31, 3), 0.1)
    expected[8:23, 8:23] = 1.0
    np.testing.assert_array_equal(field, expected)


def test_local_cg_single_bright_pixel_is_eroded():
    data = np.full((31, 31, 3), 0.1)
    data[15, 15] = 1.0
    field = local_cg_atmosphere(ImageF(data), ones_cci(31, 31), m=5).data
    np.testing.assert_array_equal(field, 0.1)


@pytest.mark.parametrize("m", [1, 2, 3, 5, 15, 30])
def test_local_cg_matches_brute_force(m):
    for seed in range(50):
        img, cci = random_case(seed)
        field = local_cg_atmosphere(img, cci, m)
        np.testing.assert_array_equal(field.data, naive_local_cg(img.data, cci.codes, m))


def test_local_cg_bounds_min_image(rng):
    img = random_image(rng, 16, 16)
    cci = random_cci(rng, 16, 16)
    minimum = min_image(img, cci).data
    assert np.all(minimum <= img.data)
    assert np.all(local_cg_atmosphere(img, cci, 5).data >= minimum)


def test_larger_m_never_darkens(rng):
    for _ in range(10):
        img = random_image(rng, 16, 16)
        cci = random_cci(rng, 16, 16)
        small = local_cg_atmosphere(img, cci, 5).data
        large = local_cg_atmosphere(img, cci, 30).data
        assert np.all(large >= small)


def test_local_cg_rejects_bad_m(rng):
    with pytest.raises(EnhancementException):
        local_cg_atmosphere(random_image(rng, 8, 8), ones_cci(8, 8), m=0)


def test_smooth_lighting_keeps_constant():
    field = LightingField(ImageF.full(40, 40, (0.3, 0.6, 0.9)))
    np.testing.assert_allclose(smooth_lighting(field).data, field.data, atol=1e-6)


def test_smooth_lighting_flattens_step():
    data = np.full((40, 40, 3), 0.2)
    data[:, 20:] = 0.8
    field = LightingField(ImageF(data))
    smoothed = smooth_lighting(field).data
    assert np.abs(np.diff(smoothed, axis=1)).max() < np.abs(np.diff(data, axis=1)).max()


def test_smooth_lighting_impulse_matches_gaussian():
    base = LIGHT_FLOOR
    data = np.full((80, 80, 3), base)
    data[40, 40] = 1.0
    smoothed = smooth_lighting(LightingField(ImageF(data))).data

    expected = np.full((80, 80), base)
    expected[10:71, 10:71] += (1.0 - base) * normalized_gaussian(10.0, 30)
    for c in range(3):
        np.testing.assert_allclose(smoothed[:, :, c], expected, atol=1e-4)
