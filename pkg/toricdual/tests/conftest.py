from importlib import resources

import pytest


def data_file(name: str) -> str:
    """Path of a file in ``toricdual/tests/data``."""
    from toricdual.tests import data

    return str(resources.files(data) / name)


@pytest.fixture(scope="session")
def data_path():
    return data_file


# verdicts are expensive; compute each built-in pair once per session
@pytest.fixture(scope="session")
def verdict_factory():
    from toricdual.duality import check_pair, get_builtin

    cache = {}

    def _verdict(pair_id: str):
        if pair_id not in cache:
            cache[pair_id] = check_pair(get_builtin(pair_id))
        return cache[pair_id]

    return _verdict


@pytest.fixture(scope="session")
def labelled_family_factory():
    """
    Fan and polytope of one side of a built-in pair, with the fan's rays
    numbered in the transcribed order so that ``fan.rays[k - 1]`` is ``Dk``.
    """
    from toricdual.duality import build_polytope, get_builtin, resolve_ray_labels
    from toricdual.polytope import polar_dual
    from toricdual.toric import mpcp_fan

    cache = {}

    def _family(pair_id: str, side: str):
        key = (pair_id, side)
        if key not in cache:
            spec = get_builtin(pair_id).side(side)
            delta = build_polytope(spec)
            labels = resolve_ray_labels(spec, polar_dual(delta), side)
            cache[key] = (mpcp_fan(delta, labels.order), delta, labels)
        return cache[key]

    return _family
