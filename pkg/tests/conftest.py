from __future__ import annotations

import os
from functools import lru_cache

import pytest
from hypothesis import HealthCheck, settings

from qpalg.builders import build_bicrossed, build_drinfeld_double, build_function_algebra, build_group_algebra
from qpalg.io import cocycles_of, load_spec, matched_pair_of
from qpalg.permgrp import parse_group

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@lru_cache(maxsize=None)
def pair(name: str):
    return matched_pair_of(load_spec(name))


@lru_cache(maxsize=None)
def bicrossed(name: str):
    spec = load_spec(name)
    mp = matched_pair_of(spec)
    cc = cocycles_of(spec, mp) if spec.kind == "bicrossed" else None
    return build_bicrossed(mp, cc)


@lru_cache(maxsize=None)
def group(text: str, degree: int):
    return parse_group(degree, [g for g in text.split(";") if g])


@lru_cache(maxsize=None)
def fun(text: str, degree: int):
    return build_function_algebra(group(text, degree))


@lru_cache(maxsize=None)
def grp(text: str, degree: int):
    return build_group_algebra(group(text, degree))


@lru_cache(maxsize=None)
def double(text: str, degree: int):
    return build_drinfeld_double(group(text, degree))


S3 = ("(12);(123)", 3)
S4 = ("(1234);(12)", 4)


@pytest.fixture(scope="session")
def s3_group():
    return group(*S3)


@pytest.fixture(scope="session")
def k_fun_s3():
    return fun(*S3)


@pytest.fixture(scope="session")
def k_grp_s3():
    return grp(*S3)


@pytest.fixture(scope="session")
def c4s3():
    return bicrossed("s4_c4")


@pytest.fixture(scope="session")
def c5s4():
    return bicrossed("s5_c5")


@pytest.fixture(scope="session")
def c5a4():
    return bicrossed("a5_c5")


@pytest.fixture(scope="session")
def kac_paljutkin():
    return bicrossed("kac_paljutkin")


@pytest.fixture(scope="session")
def double_s3():
    return double(*S3)


@lru_cache(maxsize=None)
def dual_of(name: str):
    from qpalg.builders import dual_bicrossed

    return dual_bicrossed(bicrossed(name))


@lru_cache(maxsize=None)
def verdict(method: str, name: str, dual: bool = False):
    """Cached certifier output; the dual S4 certificate alone takes tens of seconds."""
    from qpalg import qpacert

    H = dual_of(name) if dual else bicrossed(name)
    return getattr(qpacert, method)(H)
