from __future__ import annotations

import sys
from pathlib import Path

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile(
    "default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

from visrep.generate import generate_instance  # noqa: E402


@st.composite
def instances(draw, kinds=("planar", "ic", "one_planar"), n_min=6, n_max=40):
    """(kind, embedding) from the seeded generator; drop > 0 exercises augmentation."""
    kind = draw(st.sampled_from(kinds))
    n = draw(st.integers(n_min, n_max))
    seed = draw(st.integers(0, 10_000))
    drop = draw(st.sampled_from((0.0, 0.0, 0.25)))
    return kind, generate_instance(n, seed, kind, drop=drop)
