"""Smoke test for the bigrade extension module."""

import bigrade


def main():
    assert bigrade.dimension(1, 1, 2, 3) == 12
    assert bigrade.genus(3, 3) == 4
    assert bigrade.serre_dual(3, 3, 5, -4) == (-4, 5)

    sigma = bigrade.BiForm.random(2, 2, seed=7)
    assert sigma.bidegree == (2, 2)
    m = sigma.mulcon(1, 3)
    assert m.shape == (8, 8)
    assert m.rank() == min(m.shape)
    assert m.rank() == sigma.diff(1, 3).rank()
    assert m.to_matrix_market().startswith("%%MatrixMarket matrix coordinate integer general")

    line = bigrade.BiForm.from_terms(1, 0, [([1, 0], [0, 0], 1)])
    assert line.multiply(sigma).bidegree == (3, 2)

    coh = sigma.h0_h1(3, -3)
    assert coh["euler_check"]

    cell = bigrade.certify(3, 3, 2, 4, trials=3, seed=1)
    assert cell["verdict"] == "certified", cell

    grid = bigrade.curve_cohomology(2, 2, 3, -3, curve="grid")
    assert (grid["h0"], grid["h1"]) == (0, 0)

    cls = bigrade.classify(2, 2, 3, -3)
    assert cls["kind"] == "caseB" and cls["m"] == 2, cls

    lo, hi = bigrade.critical_band(3, 4)
    assert lo < hi
    alpha, m_, beta, n = bigrade.decompose(3, 4, 7, -6)
    assert alpha + m_ * 3 == 7 and beta - n * 4 == -6

    edges = bigrade.bipartite_graph(3, 4, 6)
    assert len(edges) == 6
    assert bigrade.verify_z(5, 4, 1, 0)
    z = bigrade.construct_z(5, 4, 1, 0)
    assert z["verified"]

    try:
        bigrade.dimension(-1, 1, 0, 0)
    except ValueError:
        pass
    else:
        raise AssertionError("expected ValueError")

    print("smoke test ok")


if __name__ == "__main__":
    main()
