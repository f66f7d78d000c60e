import random
from collections import Counter
from itertools import product

import pytest
from hypothesis import given, strategies as st

from oracles import n2_rational_dim, rational_dim_by_weyl, schur_dim, weights_by_box
from ratschur.exactlin import Coordinatizer, Echelon, ExactMatrix, canonical_rref, rank
from ratschur.schur import (
    TensorSpaceIndex,
    basis_dump,
    build_ordinary_schur,
    build_rational_envelope,
    build_rational_quotient,
    cell_ideal_dim,
    codeterminant_rank,
    exceeds,
    highest_weight_constituents,
    hyper_generators,
    mixed_generator_matrices,
    opp_dimension_check,
    opp_transport,
    rational_weyl_data,
    schur_coordinates,
    weight_idempotent,
    xi_matrix,
)
from ratschur.tableaux import weyl_dim
from ratschur.weights import dominance_leq, enum_weights


def compositions(d, n):
    if n == 1:
        yield (d,)
        return
    for k in range(d + 1):
        for rest in compositions(d - k, n - 1):
            yield (k,) + rest


# -- tensor space and xi ----------------------------------------------------------------


def test_tensor_space_indexing():
    space = TensorSpaceIndex(3, 2, 1)
    assert space.dim == 27
    ords = [space.ordinal(t) for t in space.basis()]
    assert ords == list(range(27))
    assert all(space.from_ordinal(space.ordinal(t)) == t for t in space.basis())
    assert space.weight((1, 2, 1)) == (0, 1, 0)
    with pytest.raises(IndexError):
        space.ordinal((0, 1, 1))


def test_xi_single_orbit_projector():
    X = xi_matrix((1, 1, 1), (1, 1, 1), 3).matrix
    assert X.nnz == 1 and X[0, 0] == 1


def test_weight_idempotent_rank():
    P = weight_idempotent((1, 1, 1), 3)
    assert P @ P == P
    assert rank([P]) == 1 and P.trace() == 6


@pytest.mark.parametrize("n, d", [(2, 3), (3, 3), (3, 2)])
def test_weight_idempotents_resolve_identity(n, d):
    total = ExactMatrix.zeros(n**d)
    projs = [weight_idempotent(mu, d) for mu in compositions(d, n)]
    for P in projs:
        assert P @ P == P
        total = total + P
    assert total == ExactMatrix.identity(n**d)
    for P, Q in zip(projs, projs[1:]):
        assert (P @ Q).is_zero()


def test_xi_rejects_out_of_range():
    with pytest.raises(IndexError):
        xi_matrix((1, 4), (1, 1), 3)


@given(st.integers(2, 3).flatmap(lambda n: st.tuples(
    st.just(n),
    st.lists(st.integers(1, n), min_size=3, max_size=3),
    st.lists(st.integers(1, n), min_size=3, max_size=3),
    st.permutations(range(3)),
)))
def test_xi_orbit_well_defined(case):
    n, I, J, sigma = case
    a = xi_matrix(I, J, n)
    b = xi_matrix([I[k] for k in sigma], [J[k] for k in sigma], n)
    assert a.matrix == b.matrix
    assert (a.I, a.J) == (b.I, b.J)


@pytest.mark.parametrize("n, d", [(2, 3), (3, 3)])
def test_xi_elements_commute_with_place_permutations(n, d):
    space = TensorSpaceIndex(n, d)
    swaps = []
    for k in range(d - 1):
        entries = {}
        for t in space.basis():
            u = list(t)
            u[k], u[k + 1] = u[k + 1], u[k]
            entries[(space.ordinal(u), space.ordinal(t))] = 1
        swaps.append(ExactMatrix(space.dim, space.dim, entries))
    for I in product(range(1, n + 1), repeat=d):
        X = xi_matrix(I, sorted(I), n).matrix
        for P in swaps:
            assert X @ P == P @ X


# -- codeterminant basis -----------------------------------------------------------


@pytest.mark.parametrize("d, dim", [(3, 165), (4, 495), (5, 1287)])
def test_codeterminant_basis(d, dim):
    cods = build_ordinary_schur(3, d)
    assert len(cods) == dim == schur_dim(3, d)
    assert codeterminant_rank(cods) == dim


@pytest.mark.slow
def test_codeterminant_basis_degree_six():
    cods = build_ordinary_schur(3, 6)
    assert codeterminant_rank(cods) == 3003 == len(cods)


@pytest.mark.parametrize("n, d", [(2, 3), (3, 3)])
def test_orbit_coordinates_agree_with_full_matrices(n, d):
    cods = build_ordinary_schur(n, d)
    for c in cods:
        assert schur_coordinates(c.matrix, n, d) == c.coordinates
    assert rank([c.matrix for c in cods]) == len(cods)


@pytest.mark.parametrize("n, d", [(2, 3), (3, 3), (2, 4)])
def test_cellular_axiom_c3(n, d):
    cods = build_ordinary_schur(n, d)
    co = Coordinatizer([c.coordinates for c in cods])
    gens = hyper_generators(n, d, 0).as_list()
    rng = random.Random(7)
    for _ in range(2):
        a = ExactMatrix.zeros(n**d)
        for g in gens:
            a = a + g * rng.randint(-3, 3)
        a = a @ rng.choice(gens) + a
        rows = {}
        for c in cods:
            coeffs = co.coordinates(schur_coordinates(a @ c.matrix, n, d))
            same = {}
            for k, v in coeffs.items():
                other = cods[k]
                if other.shape == c.shape:
                    assert other.T == c.T
                    same[other.S] = v
                else:
                    assert dominance_leq(c.shape, other.shape)
            rows.setdefault((c.shape, c.S), []).append(same)
        for group in rows.values():
            assert all(g == group[0] for g in group)


@pytest.mark.parametrize("n, r, s", [(3, 1, 1), (3, 2, 1)])
def test_excluded_span_is_two_sided_ideal(n, r, s):
    d = r + (n - 1) * s
    cods = build_ordinary_schur(n, d)
    excluded = [c for c in cods if exceeds(c.shape, r + s)]
    ech = Echelon()
    for c in excluded:
        ech.insert(c.coordinates)
    rng = random.Random(3)
    others = hyper_generators(n, d, 0).as_list() + [c.matrix for c in rng.sample(cods, 8)]
    for c in rng.sample(excluded, min(12, len(excluded))):
        for b in others:
            assert ech.contains(schur_coordinates(b @ c.matrix, n, d))
            assert ech.contains(schur_coordinates(c.matrix @ b, n, d))


def test_basis_dump_format():
    text = basis_dump(build_ordinary_schur(2, 2)[:1])
    lines = text.splitlines()
    assert lines[0] == "2,0 | 1,1 | 1,1"
    assert ExactMatrix.from_triplets("\n".join(lines[1:])) == build_ordinary_schur(2, 2)[0].matrix


# -- quotient route ---------------------------------------------------------------


@pytest.mark.parametrize("n, d, cutoff, dim", [(3, 3, 2, 100), (3, 4, 3, 225), (3, 5, 3, 1017)])
def test_cell_ideal_dims(n, d, cutoff, dim):
    assert cell_ideal_dim(n, d, cutoff) == dim


def test_kernel_decomposition_1017():
    assert cell_ideal_dim(3, 5, 3) == weyl_dim((5, 0, 0)) ** 2 + weyl_dim((4, 1, 0)) ** 2 == 21**2 + 24**2


def test_cell_ideal_rejects_mismatched_degree():
    with pytest.raises(ValueError):
        cell_ideal_dim(3, 4, 2, r=1, s=1)


@pytest.mark.parametrize(
    "r, s, dim, weyl",
    [
        (1, 1, 65, [((1, 0, -1), 8), ((0, 0, 0), 1)]),
        (2, 1, 270, [((2, 0, -1), 15), ((1, 1, -1), 6), ((1, 0, 0), 3)]),
        (1, 2, 270, [((1, 0, -2), 15), ((1, -1, -1), 6), ((0, 0, -1), 3)]),
    ],
)
def test_rational_quotient(r, s, dim, weyl):
    alg = build_rational_quotient(3, r, s)
    assert alg.dim == dim == alg.expected_dim
    assert alg.weyl_data == weyl == rational_weyl_data(3, r, s)


@pytest.mark.slow
def test_rational_quotient_two_two():
    alg = build_rational_quotient(3, 2, 2)
    assert alg.dim == 994 == rational_dim_by_weyl(3, 2, 2)


def test_quotient_structure_constants_drop_ideal_terms():
    q = build_rational_quotient(2, 1, 1).quotient
    assert q.dim == 10
    sc = q.structure_constants()
    assert len(sc) == 100
    assert all(0 <= k < q.dim for coeffs in sc.values() for k in coeffs)


def test_quotient_products_are_associative():
    q = build_rational_quotient(2, 1, 1).quotient
    sc = q.structure_constants()

    def mul(x, y):
        out = Counter()
        for a, ca in x.items():
            for b, cb in y.items():
                for k, v in sc[(a, b)].items():
                    out[k] += ca * cb * v
        return {k: v for k, v in out.items() if v}

    for a, b, c in product(range(q.dim), repeat=3):
        assert mul(mul({a: 1}, {b: 1}), {c: 1}) == mul({a: 1}, mul({b: 1}, {c: 1}))


# -- envelope route ---------------------------------------------------------------


def test_cartan_generator_examples():
    H1 = mixed_generator_matrices(3, 1, 0)[4]
    assert H1 == ExactMatrix.diagonal([1, 0, 0])
    H1_dual = hyper_generators(3, 0, 1).H[0]
    assert H1_dual == ExactMatrix.diagonal([-1, 0, 0])


@pytest.mark.parametrize("n, r, s", [(2, 1, 1), (3, 1, 1), (3, 2, 1), (2, 2, 3)])
def test_cartan_sum_is_scalar(n, r, s):
    total = ExactMatrix.zeros(n ** (r + s))
    for h in hyper_generators(n, r, s).H:
        total = total + h
    assert total == ExactMatrix.identity(n ** (r + s)) * (r - s)


@pytest.mark.parametrize("r, s, dim", [(1, 1, 65), (2, 1, 270), (1, 2, 270), (2, 2, 994)])
def test_rational_envelope(r, s, dim):
    alg = build_rational_envelope(3, r, s)
    assert alg.dim == dim


def test_envelope_is_closed_under_products():
    assert build_rational_envelope(3, 1, 1).span.product_residual_rank() == 0


@pytest.mark.parametrize("r, s", [(r, s) for r in range(6) for s in range(6 - r)])
def test_two_dimensional_collapse(r, s):
    assert build_rational_envelope(2, r, s).dim == n2_rational_dim(r, s) == schur_dim(2, r + s)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_trivial_bidegree(n):
    assert build_rational_envelope(n, 0, 0).dim == 1


@pytest.mark.parametrize("n, r, s", [(2, 1, 1), (3, 1, 1), (2, 2, 1), (3, 2, 1), (2, 2, 2)])
def test_quotient_and_envelope_agree(n, r, s):
    q = build_rational_quotient(n, r, s)
    e = build_rational_envelope(n, r, s)
    assert q.dim == e.dim == rational_dim_by_weyl(n, r, s)
    assert q.weyl_data == e.weyl_data


@pytest.mark.parametrize("n, r, s", [(2, 2, 1), (3, 1, 1), (3, 2, 1), (4, 1, 1), (3, 0, 3)])
def test_weight_support_is_weight_set(n, r, s):
    mult = TensorSpaceIndex(n, r, s).weight_multiplicities()
    assert set(mult) == enum_weights(n, r, s) == weights_by_box(n, r, s)
    assert sum(mult.values()) == n ** (r + s)


@pytest.mark.parametrize("n, r, s", [(3, 1, 1), (3, 2, 1), (2, 2, 2)])
def test_constituents_match_weyl_data(n, r, s):
    cons = highest_weight_constituents(n, r, s)
    assert {lam: dim for lam, (_, dim) in cons.items()} == dict(rational_weyl_data(n, r, s))
    assert sum(m * dim for m, dim in cons.values()) == n ** (r + s)


# -- opposite algebra --------------------------------------------------------------


@pytest.mark.parametrize(
    "n, r, s, method",
    [(3, 2, 1, "envelope"), (3, 2, 1, "quotient"), (3, 1, 1, "envelope"), (3, 4, 0, "envelope"), (2, 3, 1, "quotient")],
)
def test_opp_dimension(n, r, s, method):
    assert opp_dimension_check(n, r, s, method)


@given(st.tuples(st.integers(2, 4), st.integers(0, 4), st.integers(0, 4)).filter(lambda t: t[1] + t[2] <= 6))
def test_opp_dimension_weyl(p):
    assert opp_dimension_check(*p, method="weyl")


@pytest.mark.parametrize("n, r, s", [(3, 2, 1), (2, 2, 1), (3, 1, 0)])
def test_opp_transport_certificates(n, r, s):
    env_sr, moved = opp_transport(n, r, s)
    assert len(moved) == env_sr.dim
    assert canonical_rref(m.flatten() for m in moved) == env_sr.certificate()
    # reversal of products
    a, b = moved[1], moved[-1]
    assert env_sr.contains(a @ b)
