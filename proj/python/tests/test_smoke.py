from fractions import Fraction

import pytest

import dpcc


def test_binomial_and_subsets():
    assert dpcc.binomial(23, 11) == 1352078
    assert dpcc.binomial(1, 3) == 0
    assert dpcc.binomial(100, 50) == 100891344545564193334812497256
    assert dpcc.subset_rank([2, 3], 4) == 5
    assert dpcc.subset_unrank(1, 2, 4) == [0, 2]


def test_u_vectors_and_v_sets():
    assert dpcc.build_u_vector(2, 3, 1, 0) == [0, 1, 0, 1]
    assert dpcc.build_u_vector(3, 2, 0, 0) == [0, 1, 2, 0, 1]
    assert dpcc.build_v([1, 1, 0], 2) == [0, 1, 2]
    assert dpcc.aux_demand([0, 0, 1], [0, 0, 1], 2) == ([0, 0, 0], "D0")
    assert dpcc.g_map(3, 2, 3) == [0, 1, 1]
    assert dpcc.f_map([1, 1, 1], 2) == 1


def test_round_trip_through_the_wire():
    params = dpcc.SchemeParams(2, 3, 2, 48)
    files = dpcc.FileLibrary.random(params, seed=5)
    keys = [1, 0, 1]
    demands = [0, 1, 1]
    d, _ = dpcc.aux_demand(demands, keys, 2)
    caches = dpcc.place(files, keys)
    x = dpcc.assemble_delivery(files, d, dpcc.build_v(d, 2)[0])
    assert x.payload_bits == 48
    received = dpcc.parse_delivery(params, x.serialize())
    for k, z in enumerate(caches):
        assert z.payload_bits == 32
        z2 = dpcc.parse_cache(params, k, z.serialize())
        assert dpcc.decode(params, z2, received, demands[k]) == files.file(demands[k])


def test_explicit_library_bytes():
    params = dpcc.SchemeParams.minimal(2, 2, 1)
    files = dpcc.FileLibrary(params, [b"\xa0", b"\x60"])
    assert files.file(0) == b"\xa0"
    z = dpcc.place_user(files, 0, 1)
    x = dpcc.assemble_delivery(files, [0, 0], 0)
    assert dpcc.decode(params, z, x, 1) == b"\x60"


def test_rates_and_tradeoff():
    assert dpcc.memory_rate(2, 3, 2) == (Fraction(2, 3), Fraction(1))
    assert dpcc.envelope_corners(2, 3) == [
        (0, 2),
        (Fraction(1, 4), Fraction(3, 2)),
        (Fraction(2, 3), 1),
        (1, Fraction(2, 3)),
        (Fraction(3, 2), Fraction(1, 4)),
        (2, 0),
    ]
    assert dpcc.converse_rate(3, "2/3") == 1
    rows = dpcc.tightness_report(4, "1/10")
    assert len(rows) == 21
    assert [r["tight"] for r in rows] == [not (Fraction(1, 2) < r["M"] < Fraction(6, 5)) for r in rows]


def test_verify_suites():
    params = dpcc.SchemeParams.minimal(2, 3, 2)
    for suite in ["correctness", "privacy", "lemma1", "identities", "recovery", "reconstruction"]:
        report = dpcc.verify(suite, params, seed=1)
        assert report["verdict"] == "pass", report
    report = dpcc.verify("reconstruction", dpcc.SchemeParams.minimal(2, 4, 2))
    assert report["cases_run"] == 8


def test_errors_surface_as_python_exceptions():
    with pytest.raises(ValueError):
        dpcc.SchemeParams(2, 3, 2, 7)
    with pytest.raises(ValueError):
        dpcc.build_u_vector(2, 3, 5, 0)
    with pytest.raises(ValueError):
        dpcc.verify("nonsense", dpcc.SchemeParams.minimal(2, 2, 1))
