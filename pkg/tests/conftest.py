import numpy as np
import pytest
from fluxgo import genfun
from fluxgo.types import ShockParams,MinimizerProblem

@pytest.fixture
def hbar():
    return 1.0

@pytest.fixture
def shock_params():
    """E_n=0.01 at x_i=0 compensated at x_f=1."""
    return ShockParams(0.01,0.0,1.0)

@pytest.fixture
def shock(shock_params):
    return genfun.make_shock(shock_params)

@pytest.fixture
def f_eta():
    return genfun.make_f_eta(0.01,1.0)

@pytest.fixture
def problem():
    return MinimizerProblem(0.01,1.0)

@pytest.fixture
def exp_generator():
    return genfun.make_numeric(np.exp,name='exp')

@pytest.fixture
def shock_json(tmp_path):
    path=tmp_path/'shock.json'
    path.write_text('{"constructor": "shock", "E_n": 0.01, "x_i": 0, "x_f": 1}')
    return path
