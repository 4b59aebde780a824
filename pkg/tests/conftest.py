import pytest

from stablemaps import (extract_classes, point_target, potential,
                        projective_space, solve_phi0, tree_sum_potential)


def _run(w, kmax, dmax):
    phi0 = solve_phi0(w, kmax, dmax)
    pot = potential(w, phi0)
    return {
        "w": w,
        "kmax": kmax,
        "dmax": dmax,
        "phi0": phi0,
        "pot": pot,
        "table": extract_classes(pot, w),
        "oracle": tree_sum_potential(w, kmax, dmax),
    }


@pytest.fixture(scope="session")
def point_run():
    return _run(point_target(), 8, ())


@pytest.fixture(scope="session")
def p1_run():
    return _run(projective_space(1), 5, (3,))


@pytest.fixture(scope="session")
def p2_run():
    return _run(projective_space(2), 4, (2,))
