"""Smoke test for the Python bindings.

Build and install first:  pip install --no-build-isolation -e crates/py
"""

import json
import pathlib

import zpstab

DATA = pathlib.Path(__file__).resolve().parent.parent / "data"


def main():
    square = zpstab.Polygon.from_json((DATA / "dented_square.json").read_text())
    assert square.n == 5 and len(square) == 5
    r = zpstab.analyze(square)
    assert r.counts["disagreements"] == 0
    expected = json.loads((DATA.parent / "crates/cli/tests/golden/dented_square.analysis.json").read_text())
    assert r.to_dict() == expected, "analysis differs from the CLI golden file"

    a, b = zpstab.counterexample()
    report = zpstab.verify_pair(a, b)
    assert report["equal"] and report["compared"] == 198
    assert a.stab(1, 6)[0] == 3
    assert b.stab(1, 6)[0] == 1
    assert a.stab(0, 2)[2] == 3 and b.stab(0, 2)[2] == 5
    for p in (a, b):
        assert zpstab.analyze(p).ambiguous() == [(0, 8)]
    edges = {(x, y): (cls, oracle) for x, y, cls, _, oracle in zpstab.analyze(a).edges()}
    assert edges[(0, 8)] == ("Ambiguous", "Internal")

    svg = zpstab.analyze(a).render_svg(title="A", highlight=[(0, 8)])
    assert svg.startswith("<svg") or svg.startswith("<?xml")

    try:
        zpstab.Polygon([(0, 0), (1, 0), (2, 0), (1, 1)])
    except ValueError as e:
        assert "collinear" in str(e).lower()
    else:
        raise AssertionError("collinear input accepted")

    c = zpstab.continuous("ellipse", samples=400, chords="random:100", seed=3)
    assert c["internal"] == c["chords"] and c["disagreements"] == 0

    print("python smoke test ok")


if __name__ == "__main__":
    main()
