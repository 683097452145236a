"""Smoke test for the `wreath` extension module."""

import wreath


def main():
    z2 = wreath.Group("z2")
    assert z2.order == 2 and z2.irreducibles == ["1", "chi"]

    b2 = wreath.RepRing(z2, 2)
    assert b2.rank == 5 and b2.order == 8
    b2.verify_table()
    assert sum(b2.dimension(l) ** 2 for l in b2.irreducibles()) == 8

    square = b2.tensor("((1),(1))", "((1),(1))")
    assert square == {"(∅,(1,1))": 1, "(∅,(2))": 1, "((1,1),∅)": 1, "((2),∅)": 1}
    assert b2.tensor("((1),(1))", "1") == {"((1),(1))": 1}
    assert b2.exterior_power("((1),(1))", 2) == {"(∅,(1,1))": 1}

    report = b2.verify("4.3")
    assert report["verdict"] == "generates" and report["index"] == "1"
    report = b2.check_generators(["1"])
    assert report["verdict"] == "fails" and report["index"] == "inf"

    try:
        wreath.RepRing(wreath.Group("z3"), 2).verify("4.3")
    except wreath.InapplicableTheoremError:
        pass
    else:
        raise AssertionError("theorem 4.3 accepted for z3")

    s4 = wreath.RepRing(wreath.Group("trivial"), 4)
    assert s4.verify("marin-hooks")["verdict"] == "generates"
    assert s4.character("(3,1)")[s4.classes().index("(1,1,1,1)")] == "3"

    assert wreath.lr_coefficient([2, 1], [2, 1], [3, 2, 1]) == 2
    assert wreath.sn_character([2, 1], [3]) == -1
    assert wreath.graded_check(wreath.Group("z3"), "e,h,e", 4)["passes"]
    assert wreath.stability(wreath.Group("trivial"), "(1)", "(1)")["passes"]

    try:
        b2.dimension("((3),∅)")
    except ValueError:
        pass
    else:
        raise AssertionError("bad label accepted")

    print("smoke test passed")


if __name__ == "__main__":
    main()
