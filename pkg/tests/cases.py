"""Shared measure results.

Every applicable MeasureResult used by the tests is built here, once, so
the brute-force acceptance check can validate exactly that set.
"""

from __future__ import annotations

from functools import lru_cache

from thuefund.exact import Field, qe
from thuefund.measures import (
    corollary1,
    corollary1_setup,
    corollary2,
    corollary2_gdata,
    corollary2_setup,
    theorem1,
    theorem2,
    transform_result,
)

GAUSS = Field(-1)
I = GAUSS.element(0, 1)

# (t, beta1 = (a, b) meaning a + b sqrt(t), gamma1, x), all with n = 3 and E > 1
COR2_CASES = (
    (-7, (-2, 1), (1, 1), 0),
    (3, (-2, 1), (-1, -1), 6),
    (2, (-1, 1), (-1, 1), -6),
    (-1, (-2, 1), (-1, 2), 5),
)


@lru_cache(maxsize=None)
def cube_root_two():
    return corollary1(128, 125, 3)


@lru_cache(maxsize=None)
def gaussian_unit_circle():
    return corollary1(10 + I, 10 - I, 3)


@lru_cache(maxsize=None)
def embedded_cube_root_two():
    setup, g = corollary1_setup(128, 125, 3)
    return theorem1(setup, g)


@lru_cache(maxsize=None)
def gaussian_near_one():
    setup, g = corollary1_setup(10 + I, qe(10, GAUSS), 3)
    return theorem2(setup, g)


@lru_cache(maxsize=None)
def cor2(k: int):
    t, beta1, gamma1, x = COR2_CASES[k]
    return corollary2(3, t, x, beta1, gamma1)


@lru_cache(maxsize=None)
def cor2_via_theorem1(k: int):
    t, beta1, gamma1, x = COR2_CASES[k]
    setup = corollary2_setup(3, t, x, beta1, gamma1)
    U = setup.U(setup.x)
    data = corollary2_gdata(int(2 * U.a), int(2 * U.b), t, 3)
    return theorem1(setup, data.g, h_rule=data.h_rule(), h=abs(2 * t) ** 0.5)


@lru_cache(maxsize=None)
def transformed():
    return transform_result(cube_root_two(), 5, 0, 0, 4)


def all_applicable() -> list[tuple[str, object]]:
    out = [("cor1 128/125", cube_root_two()), ("cor1 (10+i)/(10-i)", gaussian_unit_circle()),
           ("thm1 embedding 128/125", embedded_cube_root_two()), ("thm2 (10+i)/10", gaussian_near_one()),
           ("transform 5/4 * (128/125)^(1/3)", transformed())]
    for k in range(len(COR2_CASES)):
        out.append((f"cor2 case {k}", cor2(k)))
        out.append((f"thm1 cor2 case {k}", cor2_via_theorem1(k)))
    return out
