import random
from pathlib import Path

import numpy as np
import pytest
from PIL import Image

from huerank import FeatureVector, IndexStore

DATA_DIR = Path(__file__).parent / "data"

# Red means of the eight-image fixture, keyed by name.
EIGHT_RMEANS = {
    "991.jpg": 84.91315,
    "992.jpg": 83.37225,
    "993.jpg": 82.29895,
    "994.jpg": 110.7877,
    "995.jpg": 75.65936,
    "996.jpg": 86.83167,
    "997.jpg": 65.08289,
    "998.jpg": 63.36859,
}

# Full statistics of the seven-image fixture:
# (mean_r, mean_g, mean_b, median_r, median_g, median_b, std_r, std_g, std_b)
SEVEN_STATS = {
    "800.jpg": (96, 70, 64, 81, 69, 54, 11.20, 5.74, 7.13),
    "808.jpg": (69, 79, 61, 63, 80, 64, 22.85, 9.36, 6.38),
    "814.jpg": (114, 125, 91, 109, 155, 95, 13.44, 10.58, 7.11),
    "818.jpg": (124, 68, 58, 138, 56, 58, 10.31, 8.92, 7.43),
    "820.jpg": (88, 93, 68, 80, 97, 69, 14.47, 6.43, 6.80),
    "824.jpg": (102, 78, 62, 86, 78, 65, 11.00, 6.39, 6.72),
    "828.jpg": (99, 93, 78, 83, 91, 75, 11.42, 6.10, 7.17),
}

# Synthetic desk-scale corpus: three size classes x ten constant-color
# profiles. Profiles 8 and 9 repeat the colors of 0 and 1, so every size
# class contains two exact-duplicate pairs; all other channel sums are
# distinct, so no two different colors share a three-channel mean.
SIZE_CLASSES = [(24, 24), (32, 24), (40, 40)]
COLOR_PROFILES = [
    (10, 20, 30),
    (200, 40, 90),
    (0, 0, 0),
    (255, 255, 255),
    (5, 250, 125),
    (60, 60, 60),
    (90, 10, 200),
    (140, 70, 35),
    (10, 20, 30),
    (200, 40, 90),
]


@pytest.fixture(scope="session")
def rmean8_path():
    return DATA_DIR / "corpus_rmean8.csv"


@pytest.fixture(scope="session")
def rmean8_store(rmean8_path):
    return IndexStore.load(rmean8_path)


@pytest.fixture(scope="session")
def stats7_path():
    return DATA_DIR / "corpus_stats7.csv"


@pytest.fixture(scope="session")
def stats7_store(stats7_path):
    return IndexStore.load(stats7_path)


def write_image(path, size, color, fmt=None):
    """Write a constant-color image; format inferred from suffix unless given."""
    path = Path(path)
    Image.new("RGB", size, color).save(path, format=fmt)
    return path


def write_array_image(path, array):
    """Write an (h, w, 3) uint8 array as an image file."""
    path = Path(path)
    Image.fromarray(np.asarray(array, dtype=np.uint8), mode="RGB").save(path)
    return path


@pytest.fixture(scope="session")
def corpus30(tmp_path_factory):
    """Synthetic 30-image corpus; returns (directory, {name: (color, size)})."""
    root = tmp_path_factory.mktemp("corpus30")
    meta = {}
    for profile, color in enumerate(COLOR_PROFILES):
        for w, h in SIZE_CLASSES:
            name = f"c{profile}_{w}x{h}.png"
            write_image(root / name, (w, h), color)
            meta[name] = (color, (w, h))
    return root, meta


def quantize(value, places=6):
    return round(float(value), places)


def random_feature_vector(rng: random.Random, name, width, height) -> FeatureVector:
    """A valid feature vector with 6-decimal stats (survives CSV round-trips)."""
    stats = {}
    for kind in ("mean", "median"):
        for ch in "rgb":
            stats[f"{kind}_{ch}"] = quantize(rng.uniform(0, 255))
    for ch in "rgb":
        stats[f"std_{ch}"] = quantize(rng.uniform(0, 60))
    return FeatureVector(
        name=name, width=width, height=height, threshold=width * height, **stats
    )


def random_store(rng: random.Random, max_images=20, min_images=1) -> IndexStore:
    """A randomized small index with a handful of threshold groups."""
    n = rng.randint(min_images, max_images)
    dims = [(8, 8), (16, 8), (16, 16)]
    vectors = [
        random_feature_vector(rng, f"img{i:03d}.png", *rng.choice(dims))
        for i in range(n)
    ]
    return IndexStore(vectors)
