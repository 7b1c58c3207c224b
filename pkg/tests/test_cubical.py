import pytest

from cellspan.chain import isomorphic_under, product
from cellspan.cubical import (
    CubicalComplex,
    algebraic_boundary,
    closure_of,
    cube,
    cube_weighted_tot_eigenvalues,
    face_key,
    is_near_prism,
    laurent_is_zero,
    laurent_matmul,
    mirror,
    near_prism_betti_check,
    prism_tot_identity_holds,
    prism_ud_identity_holds,
    shifted_spectrum,
    sign,
    simplicial_closure,
    weight_vars,
    weighted_diag_laplacian,
    weighted_total_laplacian,
    xi_weight,
    u_form,
)
from cellspan.exact import LaurentPoly
from fractions import Fraction


def test_face_key_order():
    faces = ["*0", "00", "01", "0*", "10", "11", "1*", "*1", "**"]
    assert sorted(faces, key=face_key) == [
        "00", "01", "0*", "10", "11", "1*", "*0", "*1", "**"]


def test_closure():
    assert closure_of({"*0", "0*"}) == {"*0", "0*", "00", "10", "01"}
    assert closure_of({"**"}) == {"**", "*0", "*1", "0*", "1*",
                                  "00", "01", "10", "11"}


def test_sign_rule():
    # pinning the j-th star: 0 gives (-1)^j, 1 gives (-1)^(j+1)
    assert sign("0*", "**") == -1
    assert sign("1*", "**") == 1
    assert sign("*0", "**") == 1
    assert sign("*1", "**") == -1
    assert sign("00", "0*") == -1
    assert sign("01", "0*") == 1
    assert sign("00", "*0") == -1
    assert sign("01", "*0") == 0
    with pytest.raises(ValueError):
        sign("**", "**")
    with pytest.raises(ValueError):
        sign("0", "**")


def test_cube_counts():
    assert cube(0).faces == frozenset({""})
    for n, counts in [(2, (4, 4, 1)), (3, (8, 12, 6, 1)), (4, (16, 32, 24, 8, 1))]:
        q = cube(n)
        assert q.dim == n
        assert tuple(q.n_faces(i) for i in range(n + 1)) == counts
    with pytest.raises(ValueError):
        cube(7)
    with pytest.raises(ValueError):
        cube(-1)


def test_to_chain_is_valid_complex():
    for n in range(5):
        c = cube(n).to_chain()
        assert c.validate() is None
        # the solid cube is contractible
        assert all(c.betti(i) == 0 for i in range(n + 1))


def test_q1_boundary_matrix():
    c = cube(1).to_chain()
    b = c.boundary(1)
    assert b.rows == ((-1,), (1,))
    assert c.labels(0) == ("0", "1")


def test_q2_total_spectra():
    c = cube(2).to_chain()
    assert c.spectrum(0, "tot").eigs == {0: 1, 2: 2, 4: 1}
    assert c.spectrum(1, "tot").eigs == {2: 2, 4: 2}
    assert c.spectrum(2, "tot").eigs == {4: 1}


def test_prism_deletion_link():
    q2 = cube(2)
    assert q2.prism(3) == cube(3)
    q3 = cube(3)
    d = q3.deletion(2)
    l = q3.link(2)
    assert d.universe == (1, 3) and l.universe == (1, 3)
    assert d.faces == closure_of({"**"}) and d == l
    for i in (1, 2, 3):
        assert q3.is_prism_in_direction(i)
    with pytest.raises(ValueError):
        q2.prism(1)
    with pytest.raises(ValueError):
        q2.deletion(9)


def test_near_prism_square_boundary():
    x = cube(2).boundary_complex()
    assert sorted(x.faces) == sorted(
        {"00", "01", "10", "11", "0*", "1*", "*0", "*1"})
    np = is_near_prism(x, 1)
    assert np.holds and bool(np)
    assert np.deletion.faces == {"*", "0", "1"}
    assert np.link.faces == {"0", "1"}
    assert np.b_faces == ("*",)


def test_near_prism_fails_for_lone_edge():
    # the edge (*,0): its deletion in direction 2 is a full segment
    # but the link is empty, so boundary containment fails
    x = CubicalComplex((1, 2), {"*0"})
    np = is_near_prism(x, 2)
    assert not np.holds
    assert np.link.faces == frozenset()
    # in its own direction the edge is an honest prism
    assert x.is_prism_in_direction(1)


def test_is_shifted():
    assert cube(2).is_shifted()
    assert cube(3).is_shifted()
    # full 1-skeleton with no 2-cells: condition (3) is vacuous
    assert cube(2).pure_skeleton(1).is_shifted()
    # 2-faces of directions {1,3},{2,3} but not {1,2}: violates the
    # componentwise order ({1,2} precedes {1,3})
    bad = CubicalComplex((1, 2, 3),
                         closure_of({"*0*", "*1*", "0**", "1**"})
                         | cube(3).pure_skeleton(1).faces)
    assert not bad.is_shifted()
    good = mirror(3, [[1, 2], [1, 3]])
    assert good.is_shifted()
    missing_edge = CubicalComplex((1, 2), {"*0", "00", "10", "01", "11"})
    assert not missing_edge.is_shifted()


def test_mirror_basic():
    assert mirror(2, [[1, 2]]) == cube(2)
    assert mirror(2, [[1], [2]]) == cube(2).boundary_complex()
    m = mirror(3, [[1, 2], [1, 3]])
    # two squares and a prism worth of faces: dirsets closed downward
    assert m.dirsets() == {(), (1,), (2,), (3,), (1, 2), (1, 3)}
    assert m.n_faces(0) == 8 and m.n_faces(2) == 4
    with pytest.raises(ValueError):
        mirror(2, [[1, 5]])


def test_mirror_circle_not_apc():
    c = mirror(3, [[1, 2], [1, 3]]).to_chain()
    assert c.betti(0) == 0
    assert c.betti(1) == 1
    assert c.betti(2) == 0
    assert not c.is_apc()


def test_simplicial_closure():
    got = simplicial_closure([[1, 2], [1, 3]])
    assert got == {frozenset(), frozenset({1}), frozenset({2}), frozenset({3}),
                   frozenset({1, 2}), frozenset({1, 3})}


def test_facets_and_pure():
    q2 = cube(2)
    assert q2.facets() == ("**",)
    assert q2.is_pure()
    bd = q2.boundary_complex()
    assert bd.facets() == ("0*", "1*", "*0", "*1")
    assert bd.is_pure()
    mixed = CubicalComplex((1, 2), {"*0", "11"})
    assert not mixed.is_pure()
    sk = cube(3).pure_skeleton(1)
    assert sk.n_faces(0) == 8 and sk.n_faces(1) == 12 and sk.dim == 1
    assert sk.is_pure()


def test_shifted_spectrum_small_cubes():
    assert shifted_spectrum(cube(1)) == (2,)
    assert shifted_spectrum(cube(2)) == (4,)
    assert shifted_spectrum(cube(3)) == (6,)
    assert shifted_spectrum(cube(4)) == (8,)


def test_shifted_spectrum_square_boundary():
    x = cube(2).boundary_complex()
    assert shifted_spectrum(x) == (4, 2, 2)


def test_shifted_spectrum_matches_direct():
    for x in [cube(2), cube(3), cube(2).boundary_complex(),
              cube(3).pure_skeleton(1), cube(3).pure_skeleton(2),
              mirror(3, [[1, 2], [1, 3]])]:
        s = shifted_spectrum(x)
        direct = x.to_chain().spectrum(x.dim - 1, "ud")
        assert sorted(s) == sorted(direct.nonzero_multiset())


def test_shifted_spectrum_preconditions():
    with pytest.raises(ValueError):
        shifted_spectrum(CubicalComplex((1, 2), {"*0", "11"}))  # not pure
    with pytest.raises(ValueError):
        shifted_spectrum(CubicalComplex((1, 2), {"*0", "0*"}))  # not near-prism
    assert shifted_spectrum(CubicalComplex((1,), {"0"})) == ()


def test_near_prism_betti_check():
    r = near_prism_betti_check(cube(2).boundary_complex(), 1)
    assert r["holds"]
    assert r["rows"] == [{"dim": 0, "betti": 0, "predicted": 0},
                         {"dim": 1, "betti": 1, "predicted": 1}]
    r2 = near_prism_betti_check(cube(2), 1)
    assert r2["holds"]
    r3 = near_prism_betti_check(mirror(3, [[1, 2], [1, 3]]), 1)
    assert r3["holds"]
    with pytest.raises(ValueError):
        near_prism_betti_check(CubicalComplex((1, 2), {"*0", "0*"}), 1)


def test_prism_is_product_with_segment():
    # appended largest direction matches the tensor sign convention:
    # the product label (f,g) maps to the face string f + g
    for x in [cube(1), cube(2), cube(2).boundary_complex()]:
        d = max(x.universe) + 1
        px = x.prism(d).to_chain()
        pr = product(x.to_chain(), cube(1).to_chain())
        remap = lambda lab: "".join(lab[1:-1].rsplit(",", 1))
        assert isomorphic_under(pr, px, remap)


def test_prism_spectral_identities():
    for x in [cube(1), cube(2), cube(2).boundary_complex(),
              mirror(3, [[1, 2], [1, 3]])]:
        assert prism_tot_identity_holds(x)
        assert prism_ud_identity_holds(x)


def test_prism_total_gf_multiplies():
    for x in [cube(1), cube(2), cube(2).boundary_complex()]:
        cx = x.to_chain()
        px = x.prism(max(x.universe) + 1).to_chain()
        g = cx.total_gf()
        edge = LaurentPoly(("q", "t"), {(0, 0): 1, (2, 0): 1, (2, 1): 1})
        assert px.total_gf() == g * edge


def test_json_round_trip():
    x = mirror(3, [[1, 2], [1, 3]])
    d = x.to_json_dict()
    assert d["universe"] == [1, 2, 3]
    y = CubicalComplex.from_json_dict(d)
    assert x == y
    # closure on load
    z = CubicalComplex.from_json_dict({"universe": [1, 2], "faces": ["**"]})
    assert z == cube(2)


def test_xi_weight():
    u = (1, 2)
    w = xi_weight(u, "0*")
    assert w.subs({"x1": 3, "q2": 5, "q1": 7, "y1": 1, "x2": 1, "y2": 1}) == 15
    assert xi_weight(u, "**") == LaurentPoly.monomial(weight_vars(u), {"q1": 1, "q2": 1})


def test_algebraic_boundary_q1():
    q1 = cube(1)
    b = algebraic_boundary(q1, 1)
    vs = weight_vars((1,))
    assert b[0][0] == LaurentPoly.monomial(vs, {"q1": 1, "x1": -1}, -1)
    assert b[1][0] == LaurentPoly.monomial(vs, {"q1": 1, "y1": -1}, 1)


def test_algebraic_boundary_composes_to_zero():
    for n in (2, 3):
        x = cube(n)
        for i in range(2, n + 1):
            prod = laurent_matmul(algebraic_boundary(x, i - 1),
                                  algebraic_boundary(x, i))
            assert laurent_is_zero(prod)


def test_weighted_specializes_to_unweighted():
    x = cube(2)
    ones = {v: 1 for v in weight_vars(x.universe)}
    c = x.to_chain()
    for i in range(x.dim + 1):
        w = weighted_total_laplacian(x, i)
        li = c.laplacian(i, "tot")
        for r in range(len(w)):
            for s in range(len(w)):
                assert w[r][s].subs(ones) == li.entry(r, s)
    # diagonal weighting at xi = 1 gives the up-down Laplacian
    w1 = weighted_diag_laplacian(x, 2)
    l1 = c.laplacian(1, "ud")
    for r in range(len(w1)):
        for s in range(len(w1)):
            assert w1[r][s].subs(ones) == l1.entry(r, s)


def test_cube_weighted_eigenvalue_forms():
    # at q=x=y=1 each u_A is 2|A| and multiplicities reproduce the
    # unweighted total spectrum
    for n, i in [(2, 0), (2, 1), (3, 1)]:
        forms = cube_weighted_tot_eigenvalues(n, i)
        assert sum(m for _, m in forms) == cube(n).n_faces(i)
        got = {}
        ones = {v: 1 for v in weight_vars(tuple(range(1, n + 1)))}
        for f, m in forms:
            lam = f.subs(ones)
            assert lam == Fraction(int(lam))
            got[int(lam)] = got.get(int(lam), 0) + m
        assert got == cube(n).to_chain().spectrum(i, "tot").eigs


def test_u_form():
    u = u_form((1, 2), (1,))
    val = u.subs({"q1": 2, "x1": 1, "y1": 2, "q2": 1, "x2": 1, "y2": 1})
    assert val == Fraction(4, 1) + Fraction(1, 1)
