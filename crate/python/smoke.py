"""Smoke test for the pypopmatch extension.

Build and install with `maturin develop -m crates/python/Cargo.toml`, or
build with cargo and put the shared library on PYTHONPATH as pypopmatch.so.
"""

import pypopmatch as pm


def main() -> None:
    g1 = pm.ReducedInstance(5, [0, 0], [1, 2], [1, 2], [3, 4])
    report = pm.check(g1)
    assert report["feasible"] is False
    assert report["witness"]["kind"] == "G1"
    assert pm.census(g1)["z_g1prime"] == 1
    assert not pm.exists_2wpm(g1)

    path = pm.FullInstance(3, [[0, 1, 2]], [[1, 0, 2]])
    assert pm.exists_2wpm(path.reduce())
    oracle = pm.find_popular(path)
    assert oracle["popular_exists"] and oracle["matching"] == [0, 1]

    again = pm.ReducedInstance.from_json(g1.to_json())
    assert again.f1 == g1.f1 and again.s2 == g1.s2

    b = pm.bounds(2, 2, 5, "5")
    assert b["ez_low"]["exact"] == "2/125"

    r1 = pm.run_trials(8, 8, 64, 200, 1, jobs=1)
    r8 = pm.run_trials(8, 8, 64, 200, 1, jobs=8)
    assert r1 == r8 and 0.0 <= r1["p_hat"] <= 1.0

    full = pm.gen_full(2, 2, 6, 3)
    assert pm.exists_2wpm(full.reduce()) == pm.find_popular(full)["popular_exists"]

    try:
        pm.ReducedInstance(5, [0, 0], [0, 2], [1, 2], [3, 4])
    except ValueError:
        pass
    else:
        raise AssertionError("invalid instance accepted")

    print("pypopmatch smoke test passed")


if __name__ == "__main__":
    main()
