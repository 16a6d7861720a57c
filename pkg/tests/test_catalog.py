import json
from pathlib import Path

import pytest

from detkit.catalog import (EmptyLadder, banded_section, band_size, generic_matrix,
                            gorenstein_ladder_generators, gorenstein_ladder_phi, hb_block,
                            hollow_symmetric, koszul_matrix, lower_ladder, one_corner_ladder,
                            recurrence_corner, sparse_cofactor_example, sub_hankel, upper_ladder)
from detkit.matrix import PolyMatrix, determinant, matrix_to_json, maximal_pfaffians
from detkit.poly import Ring

GOLDEN = Path(__file__).parent / "golden"


def grid(M):
    """Entry strings with x_i_j written as ij, zeros as 0."""
    return [" ".join(str(M[i, j]).replace("x_", "").replace("_", "") for j in range(M.cols))
            for i in range(M.rows)]


# transcribed by hand from the displayed m = 4 sections
BANDED_4 = {
    (0, 0): ["11 12 13 14", "21 22 23 24", "31 32 33 34", "41 42 43 44"],
    (0, 1): ["11 12 13 14", "21 22 23 24", "31 32 33 34", "41 42 43 0"],
    (0, 2): ["11 12 13 14", "21 22 23 24", "31 32 33 0", "41 42 0 0"],
    (1, 1): ["0 12 13 14", "21 22 23 24", "31 32 33 34", "41 42 43 0"],
    (1, 2): ["0 12 13 14", "21 22 23 24", "31 32 33 0", "41 42 0 0"],
    (2, 2): ["0 0 13 14", "0 22 23 24", "31 32 33 0", "41 42 0 0"],
}


@pytest.mark.parametrize("rs", sorted(BANDED_4))
def test_banded_displays(rs):
    assert grid(banded_section(4, *rs)) == BANDED_4[rs]


@pytest.mark.parametrize("m,r,s", [(4, r, s) for r, s in sorted(BANDED_4)] + [(5, 1, 3), (3, 1, 1)])
def test_banded_ring_dimension(m, r, s):
    G = banded_section(m, r, s)
    assert G.ring.nvars == m * m - band_size(r) - band_size(s)
    assert m * m - G.zero_count() == G.ring.nvars


def test_band_size():
    assert [band_size(u) for u in range(5)] == [0, 1, 3, 6, 10]


@pytest.mark.parametrize("m,t", [(5, 3), (5, 4), (6, 4)])
def test_recurrence_corner(m, t):
    # top-right t×t corner of the m-th section is the t-th one up to renaming
    C = recurrence_corner(m, t)
    B = banded_section(t, t - 2, t - 2)
    assert [[bool(C[i, j]) for j in range(t)] for i in range(t)] == \
        [[bool(B[i, j]) for j in range(t)] for i in range(t)]


def test_upper_ladder_5_3():
    lad = upper_ladder(5, 3)
    assert lad.spec.t == 2
    assert sorted(lad.positions) == [(2, 4), (2, 5), (3, 3), (3, 4), (3, 5), (4, 2), (4, 3),
                                     (4, 4), (4, 5), (5, 2), (5, 3), (5, 4), (5, 5)]
    assert lad.blocks == [((4, 5), (2, 3, 4, 5)), ((3, 4, 5), (3, 4, 5)), ((2, 3, 4, 5), (4, 5))]


def test_lower_ladder_5_2():
    lad = lower_ladder(5, 2)
    assert lad.spec.t == 3
    expect = {(i, j) for i in range(1, 4) for j in range(1, 5)} | {(4, 1), (4, 2), (4, 3)}
    assert set(lad.positions) == expect
    assert lad.blocks == [((1, 2, 3, 4), (1, 2, 3)), ((1, 2, 3), (1, 2, 3, 4))]


def test_empty_ladder_is_explicit():
    assert isinstance(upper_ladder(4, 0), EmptyLadder)
    assert upper_ladder(4, 0).polys() == []


def test_sub_hankel_display():
    assert grid(sub_hankel(4)) == ["0 1 2 3", "1 2 3 4", "2 3 4 0", "3 4 0 0"]


def test_hollow_display():
    assert grid(hollow_symmetric(4)) == ["11 12 13 14", "12 0 0 24", "13 0 33 0", "14 24 0 0"]
    assert hollow_symmetric(5).is_symmetric()


def test_gorenstein_phi_display():
    phi = gorenstein_ladder_phi(3)
    assert phi.is_alternating()
    assert grid(phi) == ["0 0 31 21 11", "0 0 32 22 12", "- 31 - 32 0 - 23 - 13",
                         "- 21 - 22 23 0 0", "- 11 - 12 13 0 0"]


@pytest.mark.parametrize("m", [3, 4])
def test_gorenstein_generators_are_syzygy_annihilated(m):
    X = generic_matrix(m)
    gens = gorenstein_ladder_generators(X)
    phi = gorenstein_ladder_phi(m)
    assert (PolyMatrix(X.ring, [gens]) @ phi).is_zero()
    assert len(gens) == 2 * m - 1


def test_one_corner_ladder_generators():
    lad = one_corner_ladder(3)
    assert lad.spec.t == 2
    assert len(lad.polys()) == 5


def test_koszul_matrix():
    R = Ring(["x", "y", "z"])
    K = koszul_matrix(R("x"), R("y"), R("z"))
    assert (PolyMatrix(R, [[R("x"), R("y"), R("z")]]) @ K).is_zero()
    assert K.shape == (3, 3)


def test_sparse_example_support():
    L = sparse_cofactor_example()
    assert L.zero_count() == 6
    assert determinant(L)


def test_hb_block_validation():
    R = Ring(["x", "y", "z"])
    top = PolyMatrix(R, [[R("x^2"), R("y^2")]])
    bottom = PolyMatrix(R, [[R("y^2"), R("x*y")], [R("x*z"), R("x^2")]])
    hb, I, J = hb_block(top, bottom)
    assert (hb.a, hb.n, hb.e1, hb.e2) == (1, 3, 2, 2)
    assert len(I) == 3 and J == I[:1]
    with pytest.raises(ValueError):
        hb_block(top, PolyMatrix(R, [[R("x"), R("y^2")], [R("x*z"), R("x^2")]]))


def masked(lad):
    M = lad.matrix
    keep = set(lad.positions)
    z = M.ring.zero()
    return PolyMatrix(M.ring, [[M[i, j] if (i + 1, j + 1) in keep else z for j in range(M.cols)]
                               for i in range(M.rows)])


GOLDEN_CASES = {
    **{f"banded_4_{r}_{s}": (lambda r=r, s=s: banded_section(4, r, s)) for r, s in BANDED_4},
    "upper_ladder_5_3": lambda: masked(upper_ladder(5, 3)),
    "lower_ladder_5_2": lambda: masked(lower_ladder(5, 2)),
    "hollow_5": lambda: hollow_symmetric(5),
    "sub_hankel_4": lambda: sub_hankel(4),
    "gorenstein_phi_3": lambda: gorenstein_ladder_phi(3),
    "gorenstein_phi_4": lambda: gorenstein_ladder_phi(4),
}


@pytest.mark.parametrize("name", sorted(GOLDEN_CASES))
def test_golden_json(name):
    with open(GOLDEN / f"{name}.json") as fh:
        frozen = json.load(fh)
    assert matrix_to_json(GOLDEN_CASES[name]()) == frozen


def test_deterministic_constructors():
    assert matrix_to_json(banded_section(5, 1, 2)) == matrix_to_json(banded_section(5, 1, 2))
    assert maximal_pfaffians(gorenstein_ladder_phi(3)) == maximal_pfaffians(gorenstein_ladder_phi(3))
