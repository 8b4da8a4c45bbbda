import numpy as np
import pytest

from dilcon import BinaryImage, parse_grid_text


@pytest.fixture
def grid():
    return parse_grid_text


def grid_image(text: str) -> BinaryImage:
    return parse_grid_text(text)


def random_image(seed: int, width: int, height: int, density: float = 0.5) -> BinaryImage:
    rng = np.random.default_rng(seed)
    return BinaryImage.from_array(rng.random((height, width)) < density)


def all_3x3_images():
    """All 512 bilevel 3x3 images, in mask order."""
    out = []
    for mask in range(512):
        bits = [(mask >> i) & 1 for i in range(9)]
        out.append(BinaryImage.from_array(np.array(bits, dtype=np.uint8).reshape(3, 3)))
    return out
