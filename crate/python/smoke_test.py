"""Quick end-to-end check of the Python bindings."""

from pathlib import Path

import galois_span_py as gs

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def main():
    base = gs.Graph.bouquet(2)
    assert base.kappa() == 1 and base.euler_characteristic == -1
    assert gs.Graph.complete(5).kappa() == 125
    assert base.hashimoto()["passed"]

    g = gs.Group("C2xC6")
    cover = gs.Cover(base, g, ["(1,0)", "(0,1)"])
    assert cover.kappa() == 117600
    kappas = sorted(k for _, _, k in cover.intermediates())
    assert {6, 300, 294, 3}.issubset(kappas), kappas
    assert cover.verify_kuroda()["status"] == "pass"
    assert cover.verify_brauer_kuroda()["passed"]
    assert cover.verify_factorization()["passed"]

    s3 = gs.Group("S3")
    assert s3.irreducibly_represented() and not s3.exceptional()
    c = gs.Cover.load(gs.Graph.load(str(FIXTURES / "bouquet2.json")), str(FIXTURES / "s3.json"))
    assert c.kappa() == 294
    assert c.intermediate_kappa(["(1,2)"]) == 7
    assert c.intermediate_kappa(["(1,2,3)"]) == 2

    q8 = gs.Group("Q8")
    assert q8.exceptional() and len(q8.cyclic_subgroups()) == 5
    assert gs.Cover.random(gs.Graph.bouquet(3), q8, 5).verify_brauer_kuroda()["passed"]

    m = gs.lemma_matrix([2], [2])
    assert m["det"] == "-1/4" and not m["sign_matches_paper"]
    assert gs.kappa_degree([2], [2], [1], [2]) == 2
    assert gs.nonexistence(12)["full_rank"]

    try:
        gs.Group("nonsense")
    except ValueError:
        pass
    else:
        raise AssertionError("bad spec accepted")

    print("smoke test passed")


if __name__ == "__main__":
    main()
