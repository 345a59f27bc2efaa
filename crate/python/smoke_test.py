"""Quick end-to-end check of the Python bindings.

Run after `maturin develop -m crates/python/Cargo.toml` (or with the built
extension on PYTHONPATH).
"""

import json

import mckay


def main():
    assert mckay.normalize_spec(" prod( 2T , C3 ) ") == "prod(2T,C3)"
    try:
        mckay.normalize_spec("diag(prod(C2,C2))")
    except ValueError as e:
        assert "offset 5" in str(e)
    else:
        raise AssertionError("bad spec accepted")

    g = mckay.Group("2I")
    assert (len(g), g.order, g.ambient) == (120, 120, "SU2")
    assert len(g.elements()[0]) == 8

    a = g.analyze()
    assert sorted(a.dims()) == [1, 2, 2, 3, 3, 4, 4, 5, 6]
    assert a.dims()[0] == 1
    assert a.diagram_type() == "ExtE(8)"
    reports = json.loads(a.verify("su2"))
    assert all(c["status"] != "fail" for r in reports for c in r["checks"])

    types = mckay.classify_graph(a.graph_json())
    assert [t for _, _, t in types] == ["ExtE(8)"]
    assert a.dot().startswith("graph mckay {")

    d = mckay.Group("diag(2T)").analyze()
    assert [t for _, _, t in mckay.classify_graph(d.graph_json())] == ["ExtE(6)", "ExtE(6)"]
    assert all(c["status"] != "fail" for r in json.loads(d.verify("all")) for c in r["checks"])

    ok = json.loads(mckay.check_dimensions([1, 1, 1, 2, 2, 2, 3]))[0]
    assert all(c["status"] == "pass" for c in ok["checks"]), ok
    bad = json.loads(mckay.check_dimensions([1, 5, 7]))[0]
    assert any(c["status"] == "fail" for c in bad["checks"])

    s = json.loads(mckay.survey(16))
    assert s["summary"]["groups"] == s["summary"]["groups_passed"] > 0
    print(f"ok: {s['summary']['groups']} groups surveyed up to order 16")


if __name__ == "__main__":
    main()
