"""Shared fixtures: curve contexts built once per session from curves/*.curve."""
from __future__ import annotations

import os

import pytest

from ffinfra import curvefile

CURVES = os.path.join(os.path.dirname(__file__), os.pardir, "curves")


def curve_path(name):
    return os.path.join(CURVES, name)


def load_ctx(name):
    with open(curve_path(name)) as fh:
        spec = curvefile.parse_curve(fh.read())
    return curvefile.build_curve(spec)


@pytest.fixture(scope="session")
def ctx_f5_rank0():
    return load_ctx("f5_rank0.curve")


@pytest.fixture(scope="session")
def ctx_f7_rank2():
    return load_ctx("f7_rank2.curve")


@pytest.fixture(scope="session")
def ctx_f3_g2():
    return load_ctx("f3_hyper_g2.curve")


@pytest.fixture(scope="session")
def ctx_f3_g3():
    return load_ctx("f3_hyper_g3.curve")


@pytest.fixture(scope="session")
def ctx_f5_g1():
    return load_ctx("f5_hyper_g1.curve")


@pytest.fixture(scope="session")
def ctx_f5_g3():
    return load_ctx("f5_hyper_g3.curve")


@pytest.fixture(scope="session")
def ctx_c1():
    return load_ctx("f1009_rank1.curve")
