import os
import sys
import tempfile

import pytest

# Ensure project root is on sys.path so `import src...` works when running pytest
_THIS_DIR = os.path.dirname(os.path.abspath(__file__))
_PROJECT_ROOT = os.path.dirname(_THIS_DIR)
if _PROJECT_ROOT not in sys.path:
    sys.path.insert(0, _PROJECT_ROOT)

# Point the cache and the log file at a scratch directory before config is imported
_SCRATCH = tempfile.mkdtemp(prefix='polares-tests-')
os.environ.setdefault('DATABASE_CONNECTION_STRING', f"sqlite:///{os.path.join(_SCRATCH, 'cache.db')}")
os.environ.setdefault('LOG_FILE', os.path.join(_SCRATCH, 'polares.log'))
os.environ.setdefault('CACHE_ENABLED', 'True')


# (r, theta) of curves with known analyses
GOLDEN_CURVES = {
    'phi1': ('t/(1+t^2)', 't^2/(1+t^2)'),
    'phi2': ('t/(1+t^2)', '(t^2+14)/(1+t^2)'),
    'phi3': ('t^2/(t^2-11*t+30)', '(t^2+78)/(t^2+1)'),
    'phi4': ('t', '(t^2+14)/(t^2+1)'),
    'phi5': ('t^2/(t^2+1)', 't^3/(t^2+1)'),
    'phi6': ('t', '(t^3+1)/(t^2-3*t+2)'),
    'line_spiral': ('t', 't'),
    'quartic_angle': ('t', 't^4/(t^2+1)'),
    'bounded_loop': ('t/(t^2+1)', 't^2/(t^2+1)'),
    'inverse_square': ('1/t^2', '(t^3+t-1)/t'),
    'horizontal_asymptote': ('t', 't^2/(t^2+1)'),
}


@pytest.fixture(scope='session')
def golden_curves():
    return GOLDEN_CURVES


@pytest.fixture(scope='session')
def curve_of():
    """Parsed golden curve by name."""
    from src.curves.polar_curve import parse_curve

    cache = {}

    def build(name):
        if name not in cache:
            cache[name] = parse_curve(*GOLDEN_CURVES[name])
        return cache[name]

    return build


@pytest.fixture(scope='session')
def analysis_of(curve_of):
    """Full analysis of a golden curve, computed once per session."""
    from src.analysis.analyzer import AnalysisOptions, analyze_curve

    cache = {}

    def build(name):
        if name not in cache:
            cache[name] = analyze_curve(curve_of(name), AnalysisOptions(k_cap=2, workers=1))
        return cache[name]

    return build
