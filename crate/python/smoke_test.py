"""Smoke test for the bchfam Python extension."""

import bchfam


def main():
    f = bchfam.Field(2, 4)
    a = f.pow(2, 5)
    assert f.mul(a, f.inv(a)) == 1

    assert [0] in bchfam.cosets(2, 21)
    assert any(c == [31] for c in bchfam.cosets(5, 62, negacyclic=True))

    code = bchfam.Code.from_family("T2.1", "3")
    assert (code.n, code.k) == (21, 11)
    d, exact = code.min_distance()
    assert (d, exact) == (6, True)
    dist = code.weight_distribution()
    assert sum(dist) == 2**11 and dist[6] > 0

    dual = code.dual()
    assert dual.k == 10
    assert code.shorten(0).n == 20 and code.puncture(0).n == 20

    cert = bchfam.certify(2, 21, 11, 6)
    assert cert["verdict"] == "distance-optimal", cert

    report = bchfam.verify_instance("T5.1", "2")
    assert report["pass"], report
    assert "T2.1" in bchfam.family_ids()
    assert bchfam.run_cli(["--no-cache", "-q", "--out", "/dev/null", "cosets", "--q", "2", "--n", "7"]) == 0
    print("smoke test passed")


if __name__ == "__main__":
    main()
