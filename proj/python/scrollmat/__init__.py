"""Writing-surface classification for manuscript fragment images.

Numpy-facing bindings over the C++ core: saturation conversion, the 2-d
spectral transform, the texture descriptors, exemplar filling, and the
synthetic fragment generator.
"""

from scrollmat._core import (
    dft2,
    dilate_mask,
    f1_score,
    featurize,
    fill_regions,
    generate,
    grid_features,
    largest_inscribed_rectangle,
    log_spectrum,
    ring_features,
    sample_positions,
    saturation,
    to_saturation,
    weighted_bin_features,
)

__all__ = [
    "dft2",
    "dilate_mask",
    "f1_score",
    "featurize",
    "fill_regions",
    "generate",
    "grid_features",
    "largest_inscribed_rectangle",
    "log_spectrum",
    "ring_features",
    "sample_positions",
    "saturation",
    "to_saturation",
    "weighted_bin_features",
]

__version__ = "0.1.0"
