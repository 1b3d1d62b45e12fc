"""Colormaps, scalogram rendering and PGM/PPM files."""

import numpy as np
import pytest

from src.exceptions import ImageError
from src.imaging.colormaps import (
    BUILTIN_COLORMAPS,
    Colormap,
    ColormapClass,
    Interpolation,
    get_colormap,
    resolve_colormaps,
)
from src.imaging.pnm import read_image, write_image
from src.imaging.scalogram import (
    Scalogram,
    apply_colormap,
    feature_memory_bytes,
    normalize,
    render_scalogram,
    resize,
)
from src.transforms.cwt import ScaleSet, cwt
from src.transforms.wavelets import get_wavelet


class TestColormaps:

    def test_grayscale_rounds_half_up(self):
        gray = get_colormap("grayscale")
        np.testing.assert_array_equal(gray(np.array([0.0, 0.5, 1.0])), [0, 128, 255])
        assert gray.channels == 1

    def test_linear_interpolation(self):
        coolwarm = get_colormap("coolwarm")
        pixels = coolwarm(np.array([0.0, 0.5, 1.0, 0.25]))
        np.testing.assert_array_equal(pixels[0], [59, 76, 192])
        np.testing.assert_array_equal(pixels[1], [255, 255, 255])
        np.testing.assert_array_equal(pixels[2], [180, 4, 38])
        np.testing.assert_array_equal(pixels[3], [157, 166, 224])

    def test_discrete_bins(self):
        qual8 = get_colormap("qual8")
        pixels = qual8(np.array([0.0, 0.124, 0.125, 1.0]))
        np.testing.assert_array_equal(pixels[0], [228, 26, 28])
        np.testing.assert_array_equal(pixels[1], [228, 26, 28])
        np.testing.assert_array_equal(pixels[2], [55, 126, 184])
        np.testing.assert_array_equal(pixels[3], [166, 86, 40])

    def test_every_class_is_represented(self):
        classes = {cmap.cmap_class for cmap in BUILTIN_COLORMAPS.values()}
        assert classes == set(ColormapClass)

    def test_cyclic_map_wraps(self):
        dusk = get_colormap("dusk")
        np.testing.assert_array_equal(dusk(np.array([0.0]))[0], dusk(np.array([1.0]))[0])

    def test_out_of_range_values(self):
        with pytest.raises(ImageError):
            get_colormap("ember")(np.array([1.2]))
        with pytest.raises(ImageError):
            get_colormap("grayscale")(np.array([np.nan]))

    @pytest.mark.parametrize("points, cmap_class, interpolation", [
        (((0.0, 0, 0, 0),), ColormapClass.SEQUENTIAL, Interpolation.LINEAR),
        (((0.1, 0, 0, 0), (1.0, 1, 1, 1)), ColormapClass.SEQUENTIAL, Interpolation.LINEAR),
        (((0.0, 0, 0, 0), (0.0, 1, 1, 1), (1.0, 2, 2, 2)), ColormapClass.SEQUENTIAL,
         Interpolation.LINEAR),
        (((0.0, 0, 0, 300), (1.0, 1, 1, 1)), ColormapClass.SEQUENTIAL, Interpolation.LINEAR),
        (((0.0, 0, 0, 0), (1.0, 1, 1, 1)), ColormapClass.QUALITATIVE, Interpolation.LINEAR),
    ])
    def test_invalid_control_points(self, points, cmap_class, interpolation):
        with pytest.raises(ImageError):
            Colormap("bad", cmap_class, points, interpolation)

    def test_matplotlib_colormaps(self):
        viridis = get_colormap("mpl:viridis")
        assert viridis.interpolation is Interpolation.LINEAR
        assert viridis.channels == 3
        tab10 = get_colormap("mpl:tab10")
        assert tab10.cmap_class is ColormapClass.QUALITATIVE
        assert tab10.interpolation is Interpolation.DISCRETE
        with pytest.raises(ImageError):
            get_colormap("mpl:not-a-colormap")

    def test_lookup(self):
        assert len(resolve_colormaps("all")) == len(BUILTIN_COLORMAPS)
        assert [c.name for c in resolve_colormaps("ember,helix")] == ["ember", "helix"]
        with pytest.raises(ImageError):
            get_colormap("jet2")


class TestNormalize:

    def test_per_window(self):
        values = normalize(np.array([[-2.0, 0.0], [2.0, 1.0]]))
        np.testing.assert_allclose(values, [[0.0, 0.5], [1.0, 0.75]])

    def test_constant_matrix_maps_to_half(self):
        np.testing.assert_array_equal(normalize(np.full((2, 3), 7.0)), np.full((2, 3), 0.5))

    def test_global_clamps_to_bounds(self):
        values = normalize(np.array([[-5.0, 0.0, 5.0]]), "global", (-1.0, 1.0))
        np.testing.assert_allclose(values, [[0.0, 0.5, 1.0]])
        np.testing.assert_allclose(normalize(np.array([[0.0]]), "global", (-1.0, 1.0)), [[0.5]])

    def test_errors(self):
        with pytest.raises(ImageError):
            normalize(np.zeros((2, 2)), "global")
        with pytest.raises(ImageError):
            normalize(np.zeros((2, 2)), "global", (1.0, 1.0))
        with pytest.raises(ImageError):
            normalize(np.zeros((2, 2)), "zscore")
        with pytest.raises(ImageError):
            normalize(np.array([[np.inf]]))


class TestResize:

    def test_nearest_neighbour_rows_and_columns(self):
        pixels = np.arange(16, dtype=np.uint8).reshape(4, 4)
        image = Scalogram(pixels, source_scales=ScaleSet.parse("1:4"))
        small = resize(image, 2, 2)
        np.testing.assert_array_equal(small.pixels, [[0, 2], [8, 10]])
        assert list(small.source_scales) == [1.0, 3.0]

    def test_same_size_returns_input(self):
        image = Scalogram(np.zeros((3, 5), dtype=np.uint8))
        assert resize(image, 5, 3) is image

    def test_upsampling_drops_scale_labels(self):
        pixels = np.arange(4, dtype=np.uint8).reshape(2, 2)
        image = Scalogram(pixels, source_scales=ScaleSet((1, 2)))
        big = resize(image, 4, 4)
        np.testing.assert_array_equal(big.pixels[:, 0], [0, 0, 2, 2])
        assert big.source_scales is None

    def test_rgb_and_invalid_target(self):
        image = Scalogram(np.zeros((4, 6, 3), dtype=np.uint8))
        assert resize(image, 3, 2).pixels.shape == (2, 3, 3)
        with pytest.raises(ImageError):
            resize(image, 0, 2)


class TestRender:

    def test_grayscale_and_rgb_shapes(self, rng):
        coefficients = cwt(rng.normal(size=40), get_wavelet("gaus1"), "1:6")
        gray = render_scalogram(coefficients, "grayscale")
        assert gray.pixels.shape == (6, 40)
        assert gray.source_scales == coefficients.scale_set
        rgb = render_scalogram(coefficients, get_colormap("ember"))
        assert rgb.pixels.shape == (6, 40, 3)
        assert feature_memory_bytes(rgb) == 3 * feature_memory_bytes(gray)
        assert gray.features().max() == 1.0
        assert gray.features().min() == 0.0

    def test_abs_and_resize(self):
        coefficients = np.array([[-1.0, 0.0, 1.0]])
        signed = render_scalogram(coefficients, "grayscale")
        np.testing.assert_array_equal(signed.pixels, [[0, 128, 255]])
        absolute = render_scalogram(coefficients, "grayscale", use_abs=True)
        np.testing.assert_array_equal(absolute.pixels, [[255, 0, 255]])
        resized = render_scalogram(coefficients, "grayscale", size=(6, 2))
        assert (resized.height, resized.width) == (2, 6)

    def test_apply_colormap_needs_matrix(self):
        with pytest.raises(ImageError):
            apply_colormap(np.zeros(4), "grayscale")
        with pytest.raises(ImageError):
            Scalogram(np.zeros((2, 2), dtype=np.float64))


class TestPnm:

    def test_pgm_header_and_round_trip(self, tmp_path, rng):
        pixels = rng.integers(0, 256, size=(3, 4), dtype=np.uint8)
        path = write_image(Scalogram(pixels), tmp_path / "s.pgm")
        payload = path.read_bytes()
        assert payload.startswith(b"P5\n4 3\n255\n")
        assert len(payload) == len(b"P5\n4 3\n255\n") + 12
        np.testing.assert_array_equal(read_image(path), pixels)

    def test_ppm_round_trip(self, tmp_path, rng):
        pixels = rng.integers(0, 256, size=(2, 5, 3), dtype=np.uint8)
        path = write_image(pixels, tmp_path / "s.ppm")
        assert path.read_bytes().startswith(b"P6\n5 2\n255\n")
        np.testing.assert_array_equal(read_image(path), pixels)

    def test_header_comments(self, tmp_path):
        path = tmp_path / "c.pgm"
        path.write_bytes(b"P5\n# made elsewhere\n2 1\n255\n\x01\x02")
        np.testing.assert_array_equal(read_image(path), [[1, 2]])

    def test_errors(self, tmp_path):
        with pytest.raises(ImageError):
            write_image(np.zeros((2, 2)), tmp_path / "f.pgm")
        with pytest.raises(ImageError):
            write_image(np.zeros((2, 2), dtype=np.uint8), tmp_path / "f.ppm", fmt="ppm")
        deep = tmp_path / "deep.pgm"
        deep.write_bytes(b"P5\n1 1\n65535\n\x00\x01")
        with pytest.raises(ImageError):
            read_image(deep)
        short = tmp_path / "short.pgm"
        short.write_bytes(b"P5\n4 4\n255\n\x00")
        with pytest.raises(ImageError):
            read_image(short)
        text = tmp_path / "text.pgm"
        text.write_bytes(b"P2\n1 1\n255\n0\n")
        with pytest.raises(ImageError):
            read_image(text)
