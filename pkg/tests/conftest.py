from pathlib import Path

import pytest

import cplanner as cp


@pytest.fixture(scope="session")
def reference_grid():
    return cp.parse_map(Path(cp.reference_map_path()).read_text())


@pytest.fixture(scope="session")
def reference_mdp(reference_grid):
    return cp.build_grid_mdp(reference_grid)


@pytest.fixture(scope="session")
def reference_explainer(reference_mdp):
    return cp.ContrastiveExplainer(alpha=0.0).fit(reference_mdp)
