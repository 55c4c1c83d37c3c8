import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from lleproj.dataset import (
    EmbeddingKind,
    PointCloud,
    Rectangle,
    apply_embedding,
    arc_length,
    default_hole,
    embed_named,
    gen_swiss_roll_hole,
    load_csv,
    make_extra_dim_sine,
    make_isometric_embedding,
    make_per_coord_sine,
    save_csv,
)
from lleproj.errors import CSVFormatError
from scipy.integrate import quad


def test_single_point_norm_is_t():
    far_hole = Rectangle(100.0, 101.0, 100.0, 101.0)
    cloud = gen_swiss_roll_hole(1, seed=7, hole=far_hole)
    x1, _, x3 = cloud.points[:, 0]
    # recover t from arc length by bisection-free inversion: |(x1, x3)| = t
    t = np.hypot(x1, x3)
    assert np.isclose(np.arctan2(x3, x1) % (2 * np.pi), t % (2 * np.pi), atol=1e-12)
    assert np.isclose(arc_length(t), cloud.params[0, 0], rtol=1e-12)


def test_no_sample_inside_hole(roll):
    hole = default_hole()
    t = np.hypot(roll.points[0], roll.points[2])
    h = roll.points[1]
    assert roll.n == 1000
    assert not np.any(hole.contains(t, h))


def test_full_rank(roll):
    s = np.linalg.svd(roll.points, compute_uv=False)
    assert s[2] > 1e-6 * s[0]


def test_params_are_arc_length_and_height(roll):
    t = np.hypot(roll.points[0], roll.points[2])
    assert np.allclose(roll.params[:, 1], roll.points[1])
    # quadrature oracle for s(t) = int_{1.5 pi}^t sqrt(1 + u^2) du
    for ti, si in zip(t[:5], roll.params[:5, 0]):
        ref, _ = quad(lambda u: np.sqrt(1 + u * u), 1.5 * np.pi, ti)
        assert si == pytest.approx(ref, rel=1e-10)


def test_generator_deterministic():
    a = gen_swiss_roll_hole(300, seed=11)
    b = gen_swiss_roll_hole(300, seed=11)
    c = gen_swiss_roll_hole(300, seed=12)
    assert np.array_equal(a.points, b.points) and np.array_equal(a.params, b.params)
    assert not np.array_equal(a.points, c.points)


def test_no_hole_option():
    cloud = gen_swiss_roll_hole(50, seed=1, hole=False)
    assert cloud.n == 50


@pytest.mark.parametrize("hole, message", [
    (Rectangle(0.0, 100.0, -1.0, 50.0), "empty support"),
    (Rectangle(float("nan"), 1.0, 0.0, 1.0), "finite"),
    (Rectangle(5.0, 4.0, 0.0, 1.0), "inverted"),
])
def test_bad_hole(hole, message):
    with pytest.raises(ValueError, match=message):
        gen_swiss_roll_hole(10, seed=0, hole=hole)


def test_point_cloud_invariants():
    with pytest.raises(ValueError):
        PointCloud(np.array([[np.inf, 1.0]]))
    with pytest.raises(ValueError):
        PointCloud(np.zeros((3, 4)), params=np.zeros((5, 2)))
    cloud = PointCloud(np.ones((2, 3)))
    with pytest.raises(ValueError):
        cloud.points[0, 0] = 5.0


def test_isometric_square_is_orthogonal():
    op = make_isometric_embedding(3, 3, seed=4)
    assert abs(abs(np.linalg.det(op.matrix)) - 1) < 1e-10


def test_isometric_columns_orthonormal():
    op = make_isometric_embedding(3, 18, seed=0)
    assert op.kind is EmbeddingKind.ISOMETRIC
    assert op.matrix.shape == (18, 3)
    assert np.abs(op.matrix.T @ op.matrix - np.eye(3)).max() < 1e-12


def test_isometric_deterministic_and_rejects_shrinking():
    a = make_isometric_embedding(3, 18, seed=5).matrix
    b = make_isometric_embedding(3, 18, seed=5).matrix
    assert np.array_equal(a, b)
    with pytest.raises(ValueError):
        make_isometric_embedding(4, 3)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_isometry_preserves_distances(seed):
    rng = np.random.default_rng(seed)
    pts = rng.normal(scale=10.0, size=(3, 6))
    cloud = PointCloud(pts)
    out = apply_embedding(make_isometric_embedding(3, 18, seed=seed), cloud).points
    for a, b in [(0, 1), (2, 5), (3, 4)]:
        assert abs(np.linalg.norm(out[:, a] - out[:, b]) - np.linalg.norm(pts[:, a] - pts[:, b])) < 1e-10


def test_isometric_zero_maps_to_zero():
    out = apply_embedding(make_isometric_embedding(3, 18, 1), PointCloud(np.zeros((3, 1))))
    assert np.all(out.points == 0)


def test_extra_dim_sine_zero_sum():
    pts = np.array([[1.0], [-2.0], [1.0]])
    out = apply_embedding(make_extra_dim_sine(3), PointCloud(pts))
    assert out.dim == 4
    assert np.array_equal(out.points[:3], pts)
    assert out.points[3, 0] == 0.0


def test_perturbation_bounds(roll):
    e1 = embed_named(roll, "e1", 18, seed=1)
    e2 = embed_named(roll, "e2", 18, seed=1)
    e3 = embed_named(roll, "e3", 18, seed=1)
    assert e2.dim == 19 and e3.dim == 18
    assert np.array_equal(e2.points[:18], e1.points)
    assert np.abs(e2.points[18]).max() <= 0.1
    diff = e3.points - e1.points
    assert np.abs(diff).max() <= 0.1
    assert np.linalg.norm(diff, axis=0).max() <= 0.1 * np.sqrt(18)
    assert np.array_equal(e3.params, roll.params)


def test_e2_matches_formula(roll):
    e1 = embed_named(roll, "e1", 18, seed=1).points
    e2 = embed_named(roll, "e2", 18, seed=1).points
    assert np.allclose(e2[18], 0.1 * np.sin(e1.sum(axis=0)), rtol=0, atol=1e-15)


def test_embedding_dimension_mismatch():
    with pytest.raises(ValueError, match="dimension"):
        apply_embedding(make_per_coord_sine(18), PointCloud(np.zeros((3, 2))))
    with pytest.raises(ValueError):
        embed_named(PointCloud(np.zeros((3, 2))), "e7")


def test_csv_round_trip(tmp_path, rng):
    pts = rng.normal(size=(4, 30)) * 10.0 ** rng.integers(-8, 8, size=(4, 30))
    cloud = PointCloud(pts)
    save_csv(cloud, tmp_path / "c.csv")
    back = load_csv(tmp_path / "c.csv")
    assert back.params is None
    assert np.array_equal(back.points, cloud.points)
    assert (tmp_path / "c.csv").read_text().splitlines()[0] == "x1,x2,x3,x4"


def test_csv_round_trip_with_params(tmp_path, small_roll):
    save_csv(small_roll, tmp_path / "r.csv")
    back = load_csv(tmp_path / "r.csv")
    assert np.array_equal(back.points, small_roll.points)
    assert np.array_equal(back.params, small_roll.params)
    assert (tmp_path / "r.csv").read_text().splitlines()[0] == "x1,x2,x3,s,h"


def test_csv_errors(tmp_path):
    p = tmp_path / "bad.csv"
    p.write_text("")
    with pytest.raises(CSVFormatError, match="no rows"):
        load_csv(p)
    p.write_text("x1,x2\n1,2\n3\n")
    with pytest.raises(CSVFormatError, match="line 3"):
        load_csv(p)
    p.write_text("x1,x2\n1,2\n3,abc\n")
    with pytest.raises(CSVFormatError, match="line 3"):
        load_csv(p)
    p.write_text("a,b\n1,2\n")
    with pytest.raises(CSVFormatError, match="line 1"):
        load_csv(p)
