import numpy as np
import pytest

from harmospec.spectrum import Spectrum


@pytest.fixture
def section() -> Spectrum:
    return Spectrum.from_eigenvalues(np.array([3.0, -4.0, 1.0]), K=1, d=2)


class TestSpectrum:
    def test_sorted_by_magnitude(self, section: Spectrum):
        np.testing.assert_array_equal(section.values, [-4.0, 3.0, 1.0])
        assert section.provenance == "galerkin"

    def test_count_is_strict(self, section: Spectrum):
        assert section.count(1.0) == 1
        assert section.count(0.5) == 2
        assert section.count(3.0, sign=-1) == 1

    def test_schatten(self, section: Spectrum):
        assert section.schatten(2) == pytest.approx(np.sqrt(26.0))
        assert section.trace() == pytest.approx(0.0)

    def test_weak_schatten(self, section: Spectrum):
        # sup_j j^(1/2) s_j over s = (4, 3, 1)
        assert section.weak_schatten(2) == pytest.approx(3.0 * np.sqrt(2.0))

    def test_multiplicities(self):
        spectrum = Spectrum(
            values=np.array([0.5, 1.0]),
            multiplicities=np.array([2, 1]),
            K=1,
            d=2,
            provenance="exact-radial",
        )
        assert spectrum.total == 3
        np.testing.assert_array_equal(spectrum.expanded(), [1.0, 0.5, 0.5])
        assert spectrum.weak_schatten(2) == pytest.approx(1.0)

    def test_invalid(self):
        with pytest.raises(ValueError, match=".*positive multiplicities.*"):
            Spectrum(np.ones(2), np.array([1, 0]), K=1, d=2, provenance="galerkin")

    def test_to_frame(self, section: Spectrum):
        frame = section.to_frame()
        assert list(frame.columns) == ["eigenvalue", "multiplicity"]
        assert len(frame) == 3
