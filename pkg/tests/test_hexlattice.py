import math

from hypothesis import given, strategies as st

from hexmono import hexlattice as hl

cells = st.tuples(st.integers(-50, 50), st.integers(-50, 50))
dirs = st.integers(0, 5)


def test_steps_close_up():
    assert sum(q for q, _ in hl.STEPS) == 0
    assert sum(r for _, r in hl.STEPS) == 0
    for k in range(6):
        assert hl.step(k + 3) == (-hl.STEPS[k][0], -hl.STEPS[k][1])


def test_rotation_fixture():
    # two sixth-turns, worked by hand: (3,-1) -> (1,2) -> (-2,3)
    assert hl.rotate_coord((3, -1), 1) == (1, 2)
    assert hl.rotate_coord((3, -1), 2) == (-2, 3)


@given(cells, dirs)
def test_rotation_permutes_neighbors(c, k):
    assert hl.rotate_coord(hl.neighbor(c, k), 1) == hl.neighbor(hl.rotate_coord(c, 1), k + 1)


@given(cells)
def test_rotation_has_order_six(c):
    x = c
    for _ in range(6):
        x = hl.rotate_coord(x, 1)
    assert x == c
    assert hl.rotate_coord(c, 3) == (-c[0], -c[1])


@given(cells, dirs)
def test_neighbor_round_trip(c, k):
    assert hl.neighbor(hl.neighbor(c, k), k + 3) == c


@given(cells, cells)
def test_distance_is_a_metric_on_steps(a, b):
    d = hl.hex_distance(a, b)
    assert d == hl.hex_distance(b, a)
    assert (d == 0) == (a == b)
    # one step changes distance by at most one
    for k in range(6):
        assert abs(hl.hex_distance(hl.neighbor(a, k), b) - d) <= 1


def test_distance_matches_euclidean_direction():
    assert hl.hex_distance((0, 0), (2, 0)) == 2
    assert hl.hex_distance((0, 0), (-1, 1)) == 1
    assert hl.hex_distance((0, 0), (1, 1)) == 2
    assert hl.hex_distance((0, 0), (2, -1)) == 2


def test_polar_to_cell():
    assert hl.polar_to_cell(3, 2) == (-3, 3)
    assert hl.polar_to_cell(0, 4) == (0, 0)


def test_spiral_anchor_fixtures():
    # partial sums of 2^(i-1) steps in directions 4i, worked by hand
    want = [(0, 0), (0, -1), (-2, 1), (2, 1), (2, -7), (-14, 9), (18, 9)]
    got = [hl.spiral_anchor(n) for n in range(7)]
    assert got == want


@given(cells, dirs)
def test_edge_id_shared_with_neighbor(c, k):
    assert hl.edge_id(c, k) == hl.edge_id(hl.neighbor(c, k), k + 3)


@given(cells, dirs)
def test_edge_id_canonical_direction(c, k):
    _, kk = hl.edge_id(c, k)
    assert 0 <= kk <= 2


@given(cells, dirs)
def test_vertex_id_shared_three_ways(c, j):
    v = hl.vertex_id(c, j)
    assert v == hl.vertex_id(hl.neighbor(c, j), j + 4)
    assert v == hl.vertex_id(hl.neighbor(c, j + 5), j + 2)


def test_vertex_positions_agree():
    c, j = (2, -1), 4
    x1 = hl.vertex_xy(c, j)
    x2 = hl.vertex_xy(hl.neighbor(c, j), (j + 4) % 6)
    assert math.dist(x1, x2) < 1e-9


def test_ball_and_ring_sizes():
    assert len(hl.cells_in_ball((0, 0), 0)) == 1
    assert len(hl.cells_in_ball((0, 0), 3)) == 1 + 3 * 3 * 4
    assert len(list(hl.ring((0, 0), 4))) == 24
    ball = set(hl.cells_in_ball((2, 3), 5))
    assert all(hl.hex_distance((2, 3), c) <= 5 for c in ball)
    assert set(hl.ring((2, 3), 5)) == {c for c in ball if hl.hex_distance((2, 3), c) == 5}


def test_ball_order_is_deterministic():
    assert hl.cells_in_ball((0, 0), 2) == hl.cells_in_ball((0, 0), 2)
    assert hl.cells_in_ball((0, 0), 1)[0] == (0, 0)
