import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from ktpersist.complexes import (
    Filtration,
    InputError,
    PersistenceComplex,
    build_persistence_complex,
    parse_filtration,
)
from ktpersist.homology import (
    PersistenceModule,
    betti_at,
    graded_reduce,
    persistent_cohomology,
    persistent_homology,
    smith_normal_form,
)
from ktpersist.oracle import snapshot_homology
from ktpersist.poly import QQ, FieldSpec, Polynomial, SparsePolyMatrix, parse_poly, poly_gcd_many
from ktpersist.verify import random_filtration

from conftest import tp


def divisors(m):
    return [str(d) for d in smith_normal_form(m).divisors]


def test_snf_of_example_boundaries(example_complex):
    assert divisors(example_complex.boundary(1)) == ["1", "1", "1", "1", "t", "t", "t^3"]
    assert divisors(example_complex.boundary(2)) == ["t", "t^2", "t^3"]


def test_snf_upper_triangular():
    m = SparsePolyMatrix(2, 2, {(0, 0): tp(1), (0, 1): tp(2), (1, 1): tp(3)})
    assert divisors(m) == ["t", "t^3"]


def test_snf_zero_and_empty():
    assert smith_normal_form(SparsePolyMatrix(3, 2)).rank == 0
    assert smith_normal_form(SparsePolyMatrix(0, 0)).divisors == ()


def test_snf_general_polynomials():
    # diag(t-1, t+1) has invariant factors 1, t^2-1
    m = SparsePolyMatrix(2, 2, {(0, 0): parse_poly("t - 1"), (1, 1): parse_poly("t + 1")})
    assert divisors(m) == ["1", "t^2 - 1"]


# -- minor gcd oracle: d_1 ... d_k = gcd of all k x k minors


def det(rows):
    n = len(rows)
    total = Polynomial.zero()
    for perm in itertools.permutations(range(n)):
        sign = 1
        for i in range(n):
            for j in range(i + 1, n):
                if perm[i] > perm[j]:
                    sign = -sign
        term = Polynomial.constant(sign)
        for i in range(n):
            term = term * rows[i][perm[i]]
            if term.is_zero():
                break
        total = total + term
    return total


def minor_gcds(dense):
    nr, nc = len(dense), len(dense[0]) if dense else 0
    out = []
    for k in range(1, min(nr, nc) + 1):
        minors = (
            det([[dense[i][j] for j in cs] for i in rs])
            for rs in itertools.combinations(range(nr), k)
            for cs in itertools.combinations(range(nc), k)
        )
        g = poly_gcd_many(minors)
        if g.is_zero():
            break
        out.append(g)
    return out


entry = st.one_of(
    st.just(Polynomial.zero()),
    st.builds(lambda c, e: Polynomial.monomial(QQ, c, e), st.sampled_from([1, -1, 2]), st.integers(0, 3)),
    st.dictionaries(st.integers(0, 2), st.integers(-2, 2), max_size=3).map(lambda d: Polynomial(QQ, d)),
)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 5), st.integers(1, 5), st.data())
def test_snf_matches_minor_gcds(nr, nc, data):
    if nr * nc > 16:
        nr = min(nr, 4)
        nc = min(nc, 4)
    cells = data.draw(st.lists(entry, min_size=nr * nc, max_size=nr * nc))
    dense = [cells[i * nc:(i + 1) * nc] for i in range(nr)]
    m = SparsePolyMatrix(nr, nc, {(i, j): dense[i][j] for i in range(nr) for j in range(nc)})
    snf = smith_normal_form(m)
    gs = minor_gcds(dense)
    assert snf.rank == len(gs)
    prod = Polynomial.one()
    for d, g in zip(snf.divisors, gs):
        prod = prod * d
        assert prod == g
    for a, b in zip(snf.divisors, snf.divisors[1:]):
        assert a.divides(b)


# -- graded path


def test_graded_reduce_two_components_merge():
    c = build_persistence_complex(parse_filtration("steps 1\na 0\nb 0\na b 1\n"))
    assert graded_reduce(c, 0) == [(0, None), (1, 0)]
    h0 = persistent_homology(c, 0)
    assert h0 == PersistenceModule(free=(0,), torsion=((0, 1),))


def test_graded_reduce_example_top_degree(example_complex):
    pairs = graded_reduce(example_complex, 2)
    assert len(pairs) == 1 and pairs[0][1] is None


def test_graded_reduce_without_boundaries():
    c = build_persistence_complex(parse_filtration("steps 2\na 0\nb 1\nc 2\n"))
    assert graded_reduce(c, 0) == [(0, None), (1, None), (2, None)]


def test_graded_reduce_rejects_inhomogeneous():
    bad = SparsePolyMatrix(2, 1, {(0, 0): tp(0) * -1, (1, 0): tp(2)})
    c = PersistenceComplex(QQ, [[0, 0], [1]], [SparsePolyMatrix(0, 2), bad])
    with pytest.raises(InputError):
        graded_reduce(c, 0)


# -- golden decompositions


@pytest.mark.parametrize(
    "n, free, lifetimes",
    [(0, 1, (1, 1, 3)), (1, 1, (1, 2, 3)), (2, 1, ()), (3, 0, ())],
)
def test_example_homology(example_complex, n, free, lifetimes):
    assert persistent_homology(example_complex, n).iso_type() == (free, lifetimes)


@pytest.mark.parametrize(
    "n, free, lifetimes",
    [(0, 1, ()), (1, 1, (1, 1, 3)), (2, 1, (1, 2, 3))],
)
def test_example_cohomology(example_complex, n, free, lifetimes):
    assert persistent_cohomology(example_complex, n).iso_type() == (free, lifetimes)


def test_example_barcodes(example_complex):
    assert persistent_homology(example_complex, 0).bars() == [(0, 1), (0, 3), (1, 2), (0, None)]
    assert persistent_homology(example_complex, 1).bars() == [(1, 4), (2, 3), (2, 4), (1, None)]


def test_betti_at(example_complex, example_filtration):
    h1 = persistent_homology(example_complex, 1)
    assert betti_at(h1, example_filtration.steps) == 1
    for k in range(example_filtration.steps + 1):
        for n in range(3):
            m = persistent_homology(example_complex, n)
            assert betti_at(m, k) == snapshot_homology(example_filtration, n, k, QQ)
    assert betti_at(PersistenceModule((0, 3), ((0, 2),)), 99) == 2


def test_module_canonical_order_and_validation():
    m = PersistenceModule(free=(3, 1), torsion=((2, 1), (0, 5), (0, 2)))
    assert m.free == (1, 3)
    assert m.torsion == ((0, 2), (0, 5), (2, 1))
    with pytest.raises(ValueError):
        PersistenceModule(torsion=((0, 0),))


def permuted_within_steps(f: Filtration, rng: random.Random) -> Filtration:
    layers = []
    for d, layer in enumerate(f.simplices):
        layer = list(layer)
        if d:
            keyed = {}
            for s in layer:
                keyed.setdefault(s.birth, []).append(s)
            layer = []
            for b in sorted(keyed):
                group = keyed[b]
                rng.shuffle(group)
                layer.extend(group)
        layers.append(layer)
    return Filtration(f.vertex_order, f.steps, layers).validate()


def test_decomposition_invariant_under_reordering():
    rng = random.Random(11)
    for _ in range(40):
        f = random_filtration(rng)
        g = permuted_within_steps(f, rng)
        c1, c2 = build_persistence_complex(f), build_persistence_complex(g)
        for n in range(len(f.simplices) + 1):
            assert persistent_homology(c1, n) == persistent_homology(c2, n)
            assert persistent_cohomology(c1, n) == persistent_cohomology(c2, n)


def test_euler_characteristic_is_field_independent():
    rng = random.Random(5)
    fields = [FieldSpec(0), FieldSpec(2), FieldSpec(3)]
    for _ in range(30):
        f = random_filtration(rng)
        chis = []
        for field in fields:
            c = build_persistence_complex(f, field)
            mods = [persistent_homology(c, n) for n in range(len(f.simplices))]
            chis.append([sum((-1) ** n * betti_at(m, k) for n, m in enumerate(mods)) for k in range(f.steps + 1)])
        assert chis[0] == chis[1] == chis[2]


# a triangulated projective plane: H_1 vanishes over Q but not over F_2
RP2 = """steps 0
1 0
2 0
3 0
4 0
5 0
6 0
""" + "".join(
    f"{a} {b} 0\n" for a, b in sorted({tuple(sorted(e)) for tri in
        [(1, 2, 4), (2, 3, 4), (3, 1, 5), (1, 4, 5), (4, 5, 6), (2, 5, 6), (2, 3, 5), (3, 4, 6), (1, 3, 6), (1, 2, 6)]
        for e in itertools.combinations(tri, 2)})
) + "".join(f"{a} {b} {c} 0\n" for a, b, c in sorted(tuple(sorted(t)) for t in
        [(1, 2, 4), (2, 3, 4), (3, 1, 5), (1, 4, 5), (4, 5, 6), (2, 5, 6), (2, 3, 5), (3, 4, 6), (1, 3, 6), (1, 2, 6)]))


def test_field_dependence_on_projective_plane():
    f = parse_filtration(RP2)
    q = build_persistence_complex(f, QQ)
    f2 = build_persistence_complex(f, FieldSpec(2))
    assert persistent_homology(q, 1).rank == 0
    assert persistent_homology(f2, 1).rank == 1
    assert persistent_homology(f2, 2).rank == 1
    for c in (q, f2):
        chi = sum((-1) ** n * persistent_homology(c, n).rank for n in range(3))
        assert chi == 1
