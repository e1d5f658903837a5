import json
import math

import numpy as np
import pytest

from riesz_lab import serialize
from riesz_lab.experiments import (
    random_pigeonhole_instance,
    sector_pigeonhole_select,
    theorem2_run,
    translation_diagnostic,
    weighted_scan,
)
from riesz_lab.geometry import Disk, build_paper_set, normalize_intervals
from riesz_lab.harmonic import ExponentialSystem, Indicator, gram_matrix, parse_weight
from riesz_lab.riesz import expand_function, riesz_bounds

UNIT = normalize_intervals([(0.0, 1.0)])


class TestEmission:
    def test_float_format(self):
        assert serialize.dumps(0.1).strip() == "0.10000000000000001"
        assert serialize.dumps(2.0).strip() == "2.0"
        assert serialize.dumps(1e300).strip() == "1.0000000000000001e+300"
        assert serialize.dumps([math.inf, -math.inf, math.nan]).strip() == "[Infinity, -Infinity, NaN]"

    def test_roundtrip_floats_exact(self, rng):
        x = rng.normal(size=50) * 10.0 ** rng.integers(-300, 300, 50)
        back = serialize.loads(serialize.dumps(x.tolist()))
        assert back == x.tolist()

    def test_sorted_keys_and_types(self):
        obj = {"b": np.int64(3), "a": np.bool_(True), "c": 1 + 2j, "d": np.arange(2.0)}
        text = serialize.dumps(obj)
        assert text.index('"a"') < text.index('"b"') < text.index('"c"')
        assert json.loads(text) == {"a": True, "b": 3, "c": {"re": 1.0, "im": 2.0}, "d": [0.0, 1.0]}

    def test_unknown_type(self):
        with pytest.raises(TypeError):
            serialize.dumps(object())

    def test_fingerprint_stable(self):
        a = serialize.fingerprint({"x": 1.0, "y": [1, 2]})
        assert a == serialize.fingerprint({"y": [1, 2], "x": 1.0})
        assert a != serialize.fingerprint({"x": np.nextafter(1.0, 2.0), "y": [1, 2]})
        assert len(a) == 64


class TestObjects:
    def test_interval_set(self):
        S = normalize_intervals([(0, 1), (2, 3.5)])
        d = serialize.loads(serialize.dumps(serialize.interval_set_to_dict(S)))
        assert d["measure"] == 2.5
        assert serialize.interval_set_from_dict(d) == S

    def test_paper_set(self):
        P = build_paper_set(3, [3, 4])
        d = serialize.loads(serialize.dumps(serialize.paper_set_to_dict(P)))
        assert len(d["stage_meta"]) == 2 and d["stage_meta"][1]["splits"] == 4
        Q = serialize.paper_set_from_dict(d)
        assert Q.final == P.final
        d["intervals"][0][1] = 0.9
        with pytest.raises(ValueError):
            serialize.paper_set_from_dict(d)

    def test_gram(self, rng):
        sys = ExponentialSystem(np.sort(rng.uniform(-3, 3, 5)))
        G = gram_matrix(sys, normalize_intervals([(0.0, 0.4), (1.0, 1.3)]))
        back = serialize.gram_from_dict(serialize.loads(serialize.dumps(serialize.gram_to_dict(G))))
        assert np.array_equal(back.entries, G.entries)
        header, rows = serialize.gram_csv_rows(G)
        assert len(header) == 10 and len(rows) == 5
        assert rows[1][2] == G.entries[1, 1].real and rows[2][1] == G.entries[2, 0].imag

    def test_bounds(self):
        b = riesz_bounds(ExponentialSystem([0.0, 0.5]), UNIT)
        d = serialize.loads(serialize.dumps(serialize.report_to_dict(b)))
        assert d["kind"] == "bounds" and d["outcome"] == "ok"
        assert serialize.report_from_dict(d) == b

    def test_expansion(self):
        e = expand_function(Indicator.normalized([(0, 0.2)]), ExponentialSystem.lattice(1.0, 4), UNIT)
        back = serialize.expansion_from_dict(serialize.loads(serialize.dumps(serialize.expansion_to_dict(e))))
        assert np.array_equal(back.coefficients, e.coefficients)
        assert back.residual_energy == e.residual_energy

    def test_system_and_disk(self):
        assert serialize.to_jsonable(ExponentialSystem([0.0, 1.5])) == {"freqs": [0.0, 1.5]}
        assert serialize.to_jsonable(Disk(0.5, (1.0, 0.0))) == {"radius": 0.5, "center": [1.0, 0.0]}


def _roundtrip(report):
    d = serialize.loads(serialize.dumps(serialize.report_to_dict(report)))
    back = serialize.report_from_dict(d)
    assert serialize.dumps(serialize.report_to_dict(back)) == serialize.dumps(serialize.report_to_dict(report))
    return d


class TestReports:
    def test_translation(self):
        r = translation_diagnostic(UNIT, None, ExponentialSystem.lattice(1.0, 8), Indicator.normalized([(0, 0.3)]), 0.4)
        assert _roundtrip(r)["kind"] == "translation"

    def test_scan(self):
        r = weighted_scan(parse_weight("power:1"), [0.2, 0.1], 50)
        d = _roundtrip(r)
        assert d["weight"] == {"kind": "power", "alpha": 1.0} and len(d["rows"]) == 2

    def test_pigeonhole(self, rng):
        g, x, M = random_pigeonhole_instance(rng, 9)
        _roundtrip(sector_pigeonhole_select(g, 1.0, M, grid=x))

    def test_theorem2(self):
        d = _roundtrip(theorem2_run(2, [2], 4, 32))
        assert d["chain"]["edge_count"] >= 1

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            serialize.report_from_dict({"kind": "nope"})
        with pytest.raises(TypeError):
            serialize.report_to_dict(3)


class TestCsv:
    def test_write_read(self, tmp_path):
        p = tmp_path / "sub" / "t.csv"
        serialize.write_csv(p, ["a", "b", "c"], [[0.1, True, None], [2.0, False, "x"]])
        header, rows = serialize.read_csv(p)
        assert header == ["a", "b", "c"]
        assert rows == [["0.10000000000000001", "true", ""], ["2.0", "false", "x"]]
