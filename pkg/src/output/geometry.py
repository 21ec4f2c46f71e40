# === File: src/output/geometry.py ===

import numpy as np


def polar_to_cartesian(r, theta):
    """
    (r cos theta, r sin theta); scalars give floats, arrays give arrays.
    """
    r_arr = np.asarray(r, dtype=float)
    theta_arr = np.asarray(theta, dtype=float)
    x = r_arr * np.cos(theta_arr)
    y = r_arr * np.sin(theta_arr)
    if x.ndim == 0:
        return float(x), float(y)
    return x, y
