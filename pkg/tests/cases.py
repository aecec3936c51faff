"""
Parameter sets reused across the test modules
"""

import math

from models.orthoscheme import CombinatorialType, OrthoschemeParams, classify

H_B_2_13 = 2.0 / math.sqrt(3.0)

# (h, r, theta, expected type), one per regime
REGIME_CASES = [
    (0.5, 0.5, math.pi / 4, CombinatorialType.ORDINARY_ORTHOSCHEME),
    (1.0, 0.5, math.pi / 4, CombinatorialType.ORDINARY_ORTHOSCHEME),
    (0.5, 2.0, 1.3, CombinatorialType.SIMPLE_FRUSTUM),
    (2.0, 0.5, math.pi / 4, CombinatorialType.SIMPLE_FRUSTUM),
    (2.0, 1.0, math.pi / 4, CombinatorialType.SIMPLE_FRUSTUM_IDEAL_V0),
    (1.1, 2.0, 1.3, CombinatorialType.DOUBLE_FRUSTUM),
    (H_B_2_13, 2.0, 1.3, CombinatorialType.DOUBLE_FRUSTUM_IDEAL_VERTEX),
    (2.0, 2.0, 1.3, CombinatorialType.LAMBERT_CUBE),
]

# h > 1 configurations away from every boundary
ANALYTIC_CASES = [
    (2.0, 0.5, math.pi / 4),
    (3.0, 0.8, 1.0),
    (1.2, 0.3, 0.4),
    (2.0, 1.0, math.pi / 4),
    (5.0, 1.0, 1.2),
    (1.1, 2.0, 1.3),
    (1.02, 1.05, 0.8),
    (2.0, 2.0, 1.3),
    (1.5, 1.5, 1.0),
]


def random_params(rng, n, avoid_ideal=1e-3):
    """Admissible (h, r, theta) drawn uniformly, away from ideal cases"""
    out = []
    while len(out) < n:
        h = rng.uniform(0.1, 5.0)
        r = rng.uniform(0.1, 3.0)
        theta = rng.uniform(0.01, math.pi / 2 - 0.01)
        if r * math.cos(theta) >= 0.999:
            continue
        if abs(r - 1.0) < avoid_ideal or abs(h - 1.0) < avoid_ideal:
            continue
        params = OrthoschemeParams(h, r, theta)
        h_b = params.family.lambert_threshold
        if math.isfinite(h_b) and abs(h - h_b) < avoid_ideal:
            continue
        out.append(params)
    return out


def params_by_regime(rng, per_regime):
    """
    random_params with h > 1, grouped by regime, per_regime points each

    r = 1 has measure zero in random_params, so the ideal-v0 group is drawn
    separately with r = 1 exactly.
    """
    groups = {
        CombinatorialType.SIMPLE_FRUSTUM: [],
        CombinatorialType.DOUBLE_FRUSTUM: [],
        CombinatorialType.LAMBERT_CUBE: [],
    }
    while any(len(group) < per_regime for group in groups.values()):
        for params in random_params(rng, 200):
            if params.h <= 1.0:
                continue
            group = groups.get(classify(params))
            if group is not None and len(group) < per_regime:
                group.append(params)
    groups[CombinatorialType.SIMPLE_FRUSTUM_IDEAL_V0] = [
        OrthoschemeParams(rng.uniform(1.001, 5.0), 1.0, rng.uniform(0.01, math.pi / 2 - 0.01))
        for _ in range(per_regime)
    ]
    return groups


def derivative_grid(rng, n, margin=0.05):
    """h > 1 points at least margin away from h = 1, r = 1 and h = h_b"""
    out = []
    while len(out) < n:
        h = rng.uniform(1.0 + margin, 4.0)
        r = rng.uniform(0.2, 2.5)
        theta = rng.uniform(0.1, math.pi / 2 - 0.1)
        if r * math.cos(theta) >= 0.95 or abs(r - 1.0) < margin:
            continue
        params = OrthoschemeParams(h, r, theta)
        h_b = params.family.lambert_threshold
        if math.isfinite(h_b) and abs(h - h_b) < margin:
            continue
        out.append(params)
    return out
