import json
from fractions import Fraction
from itertools import permutations, product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ksalgebra.brauer import INF, is_definite, rational_symbol
from ksalgebra.errors import (
    FieldMismatch,
    InvalidPermutation,
    ParameterConstraintViolated,
    RouteDisagreement,
)
from ksalgebra.exactfield import RATIONAL_FIELD, cyclic_cubic_field, quadratic_field
from ksalgebra.pipeline import (
    KSReport,
    OrbitData,
    cyclic_generators,
    even_weight_orbits,
    ks_report,
    search_cubic_diagonal,
    six_lines_family,
    symmetric_generators,
)
from ksalgebra.qform import GramForm


# -- independent orbit oracle: pairwise-product closure and inverse-indexed action


def oracle_orbit_sizes(d: int, gens) -> list[int]:
    ident = tuple(range(1, d + 1))
    group = {ident} | {tuple(g) for g in gens}
    while True:
        more = {
            tuple(p[q[i] - 1] for i in range(d)) for p in group for q in group
        }
        if more <= group:
            break
        group |= more
    vecs = [v for v in product((0, 1), repeat=d) if sum(v) % 2 == 0]
    sizes = []
    seen = set()
    for v in vecs:
        if v in seen:
            continue
        orbit = set()
        for p in group:
            inv = [0] * d
            for i in range(d):
                inv[p[i] - 1] = i + 1
            orbit.add(tuple(v[inv[i] - 1] for i in range(d)))
        seen |= orbit
        sizes.append(len(orbit))
    return sorted(sizes)


def test_orbits_swap_degree_2():
    data = even_weight_orbits(2, [(2, 1)])
    assert data.group_order == 2
    assert data.orbits == (((0, 0), 1, 2), ((1, 1), 1, 2))
    assert data.sizes() == [1, 1]


def test_orbits_cyclic_and_symmetric_degree_3_match():
    cyc = even_weight_orbits(3, cyclic_generators(3))
    sym = even_weight_orbits(3, symmetric_generators(3))
    assert sorted(cyc.sizes()) == [1, 3]
    assert sorted(sym.sizes()) == [1, 3]
    assert cyc.group_order == 3 and sym.group_order == 6
    # zero vector is its own orbit, with full stabilizer
    assert cyc.orbits[0] == ((0, 0, 0), 1, 3)
    assert sym.orbits[0] == ((0, 0, 0), 1, 6)


def test_orbit_sums_and_stabilizers_degrees_1_to_6():
    for d in range(1, 7):
        for gens in (cyclic_generators(d), symmetric_generators(d)):
            data = even_weight_orbits(d, gens)
            assert sum(data.sizes()) == 2 ** (d - 1)
            for _, size, stab in data.orbits:
                assert size * stab == data.group_order
            assert data.sizes() == oracle_orbit_sizes(d, gens) or sorted(
                data.sizes()
            ) == oracle_orbit_sizes(d, gens)


def test_orbits_reject_bad_generators():
    with pytest.raises(InvalidPermutation):
        even_weight_orbits(2, [(1, 1)])
    with pytest.raises(InvalidPermutation):
        even_weight_orbits(3, [(1, 2, 4)])
    with pytest.raises(InvalidPermutation):
        even_weight_orbits(3, ["ab"])


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_orbit_laws_random_groups(data):
    d = data.draw(st.integers(min_value=1, max_value=5))
    perms = list(permutations(range(1, d + 1)))
    gens = data.draw(
        st.lists(st.sampled_from(perms), min_size=1, max_size=3)
    )
    orbits = even_weight_orbits(d, gens)
    assert sum(orbits.sizes()) == 2 ** (d - 1)
    for _, size, stab in orbits.orbits:
        assert size * stab == orbits.group_order
    assert sorted(orbits.sizes()) == oracle_orbit_sizes(d, gens)


# -- the six-lines family ----------------------------------------------------------


@pytest.fixture(scope="module")
def family_211() -> KSReport:
    return six_lines_family(2, 1, 1)


@pytest.fixture(scope="module")
def cubic_report() -> KSReport:
    f = cyclic_cubic_field()
    return ks_report(f, search_cubic_diagonal(f))


def test_family_211_symbol_chain(family_211):
    rep = family_211
    f = rep.field
    # C0 symbol of diag(s, s, s - 2) with s = sqrt(2): (-2, 2s - 2)
    assert rep.c0_symbol.a == f.rational(-2)
    assert rep.c0_symbol.b == f.elem([-2, 2])
    route = rep.cores_symbol_route
    assert route["symbol"].a == Fraction(-1)
    assert route["symbol"].b == Fraction(-4)
    assert route["reduced"] == rational_symbol(-1, -1)
    assert route["ramification"].sorted_list() == [2, INF]
    assert route["definiteness"] == "definite"
    # the rewrite divided slot 1 by the generator once
    assert route["scalings"] == ((1, f.gen()),)


def test_family_211_invariant_route_and_agreement(family_211):
    rep = family_211
    route = rep.cores_invariant_route
    assert route["dim"] == 16
    assert route["center_dim"] == 1
    assert route["trace_signature"] == (6, 10, 0)
    assert route["definiteness"] == "definite"
    assert rep.route_agreement is True
    assert rep.warnings == ()


def test_family_211_shape_numbers(family_211):
    rep = family_211
    assert (rep.m, rep.d) == (3, 2)
    assert rep.dim_T_Q == 6
    assert rep.ks_dim == 16
    assert rep.cores_dim == 16
    assert rep.smt_dim == 6
    assert rep.decomposition == "A ~ B'^2, End(B') = (-1,-1)/Q"
    assert rep.rank3_extras == "A ~ B^4, dim B = 4, D definite"
    assert rep.orbit_data.sizes() == [1, 1]


def test_family_211_json_and_text(family_211):
    doc = family_211.to_json_dict()
    assert doc["cores"] == "(-1,-1)/Q"
    assert doc["ramification"] == [2, "inf"]
    assert doc["c0_symbol"] == {"a": "-2", "b": ["-2", "2"]}
    assert doc["cores_symbol_route"]["scalings"] == [{"slot": 1, "factor": ["0", "1"]}]
    json.dumps(doc, sort_keys=True)  # must be serializable as-is
    text = family_211.to_text()
    assert "symbol route: cores = (-1,-1)/Q" in text
    assert "routes agree: yes" in text


def test_family_further_members_land_on_same_class():
    rep5 = six_lines_family(5, 1, 2)
    assert rep5.cores_symbol_route["symbol"].b == Fraction(-100)
    assert rep5.cores_symbol_route["reduced"] == rational_symbol(-1, -1)
    assert rep5.cores_invariant_route["trace_signature"] == (6, 10, 0)
    rep13 = six_lines_family(13, 2, 3)
    assert rep13.cores_symbol_route["symbol"].b == Fraction(-1521)
    assert rep13.cores_symbol_route["reduced"] == rational_symbol(-1, -1)
    assert rep13.cores_symbol_route["ramification"].sorted_list() == [2, INF]


def test_family_second_slot_matches_norm_formula():
    # cores slot 2 is d^2 (c^2 - d) on the nose, for several (d, c, e)
    for d, c, e in [(2, 1, 1), (5, 1, 2), (5, 2, 1), (13, 2, 3), (13, 3, 2)]:
        rep = six_lines_family(d, c, e)
        want = Fraction(d * d) * (Fraction(c) ** 2 - d)
        assert rep.cores_symbol_route["symbol"].a == Fraction(-1)
        assert rep.cores_symbol_route["symbol"].b == want


def test_family_grid_ramification_constant():
    grid = [
        (2, 1, 1),
        (5, 1, 2),
        (5, 2, 1),
        (10, 1, 3),
        (10, 3, 1),
        (13, 2, 3),
        (17, 1, 4),
        (2, Fraction(7, 5), Fraction(1, 5)),
    ]
    for d, c, e in grid:
        rep = six_lines_family(d, c, e)
        assert rep.cores_symbol_route["ramification"].sorted_list() == [2, INF]
        assert rep.cores_symbol_route["definiteness"] == "definite"


def test_family_parameter_validation():
    with pytest.raises(ParameterConstraintViolated):
        six_lines_family(2, 1, 2)  # 2 != 1 + 4
    with pytest.raises(ParameterConstraintViolated):
        six_lines_family(12, 2, 2)  # not squarefree (and 12 != 8 anyway)
    with pytest.raises(ParameterConstraintViolated):
        six_lines_family(8, 2, 2)  # squarefull
    with pytest.raises(ParameterConstraintViolated):
        six_lines_family(Fraction(5, 2), 1, 1)
    with pytest.raises(ParameterConstraintViolated):
        six_lines_family(2, 0, 1)
    with pytest.raises(ParameterConstraintViolated):
        six_lines_family(2, 1, -1)


# -- general reports ----------------------------------------------------------------


def test_failing_validation_keeps_shape_but_no_payload():
    f = quadratic_field(2)
    bad = GramForm.diagonal(f, [f.one(), f.one(), f.one()])
    rep = ks_report(f, bad)
    assert rep.validation.passed is False
    assert rep.c0_symbol is None
    assert rep.cores_symbol_route is None
    assert rep.cores_invariant_route is None
    assert rep.decomposition is None
    assert rep.rank3_extras is None
    doc = rep.to_json_dict()
    assert "cores" not in doc
    assert doc["cores_invariant_route"] is None
    assert "FAILED" in rep.to_text()


def test_report_rejects_form_over_other_field():
    f = quadratic_field(2)
    g = quadratic_field(5)
    form = GramForm.diagonal(g, [g.gen(), g.gen(), g.gen() - g.rational(5)])
    with pytest.raises(FieldMismatch):
        ks_report(f, form)


def test_degree_1_baseline_classical_clifford():
    q = RATIONAL_FIELD
    rep = ks_report(q, GramForm.diagonal(q, [q.one(), q.one(), -q.one()]))
    assert rep.ks_dim == 2
    assert rep.cores_dim == 4
    assert rep.cores_symbol_route["reduced"] == rational_symbol(-1, 1)
    assert rep.cores_symbol_route["definiteness"] == "split"
    assert rep.cores_invariant_route["dim"] == 4
    assert rep.cores_invariant_route["trace_signature"] == (3, 1, 0)
    assert rep.cores_invariant_route["definiteness"] == "indefinite_or_split"
    assert rep.route_agreement is True
    assert rep.orbit_data.sizes() == [1]


def test_rank_4_form_runs_invariant_route_only():
    f = quadratic_field(2)
    s = f.gen()
    form = GramForm.diagonal(f, [s, s, s - f.rational(2), s - f.rational(2)])
    rep = ks_report(f, form)
    assert rep.validation.passed
    assert rep.c0_symbol is None
    assert rep.cores_symbol_route is None
    assert rep.rank3_extras is None
    assert rep.route_agreement is None
    assert rep.ks_dim == 2 ** 6
    assert rep.cores_dim == 64
    route = rep.cores_invariant_route
    assert route["dim"] == 64
    # even Clifford algebra of a rank-4 form has a 2-dimensional center
    # over E; dropping to Q raises it to 2^d
    assert route["center_dim"] == 4
    assert route["definiteness"] is None
    assert sum(route["trace_signature"]) == 64


def test_cubic_search_finds_valid_form(cubic_report):
    f = cyclic_cubic_field()
    form = search_cubic_diagonal(f)
    assert form.entries[0][0] == form.entries[1][1]
    report = cubic_report
    assert report.validation.passed
    assert (report.m, report.d) == (3, 3)


def test_cubic_instance_unramified_at_infinity(cubic_report):
    rep = cubic_report
    route = rep.cores_symbol_route
    assert route is not None
    assert INF not in route["ramification"]
    assert not is_definite(route["symbol"])
    assert rep.cores_invariant_route["definiteness"] == "indefinite_or_split"
    assert rep.route_agreement is True
    assert rep.cores_invariant_route["dim"] == 64
    assert rep.cores_invariant_route["center_dim"] == 1
    assert rep.cores_invariant_route["trace_signature"] == (36, 28, 0)
    assert rep.orbit_data.sizes() == [1, 3]


def test_parity_law_across_degrees(family_211, cubic_report):
    q = RATIONAL_FIELD
    rep1 = ks_report(q, GramForm.diagonal(q, [q.one(), q.one(), -q.one()]))
    by_degree = {1: rep1, 2: family_211, 3: cubic_report}
    for d, rep in by_degree.items():
        definite = is_definite(rep.cores_symbol_route["symbol"])
        assert definite == (d % 2 == 0)
        assert rep.parity_expected == (
            "definite" if d % 2 == 0 else "indefinite_or_split"
        )
        assert not any("parity" in w for w in rep.warnings)


def test_dimension_laws_on_reports(family_211, cubic_report):
    for rep in (family_211, cubic_report):
        assert rep.ks_dim == 2 ** (rep.dim_T_Q - 2)
        assert rep.cores_dim == (2 ** (rep.m - 1)) ** rep.d
        assert rep.cores_invariant_route["dim"] == rep.cores_dim
        assert sum(rep.orbit_data.sizes()) == 2 ** (rep.d - 1)


def test_route_disagreement_is_detected(monkeypatch):
    import ksalgebra.pipeline as pl

    real = pl._reference_signatures(2)
    monkeypatch.setattr(pl, "_reference_signatures", lambda d: (real[1], real[0]))
    f = quadratic_field(2)
    form = GramForm.diagonal(f, [f.gen(), f.gen(), f.gen() - f.rational(2)])
    with pytest.raises(RouteDisagreement):
        pl.ks_report(f, form)


def test_orbit_data_json_shape():
    data = even_weight_orbits(3, cyclic_generators(3))
    doc = data.to_json_dict()
    assert doc == {
        "d": 3,
        "group_order": 3,
        "orbits": [
            {"representative": [0, 0, 0], "size": 1, "stabilizer": 3},
            {"representative": [0, 1, 1], "size": 3, "stabilizer": 1},
        ],
    }
    assert isinstance(data, OrbitData)
