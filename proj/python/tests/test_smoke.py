"""Smoke tests for the _dglie extension module."""

import json
import os

import _dglie

FIXTURES = os.environ.get("DGLIE_FIXTURES", os.path.join(os.path.dirname(__file__), "..", "..", "fixtures"))


def check(cond, msg):
    if not cond:
        raise SystemExit("FAIL: " + msg)


def main():
    trees = _dglie.tree_classes(5)
    check(len(trees) == 3, "five leaves give three classes")
    check(sorted(a for _, a in trees) == [2, 4, 8], "aut orders for five leaves")

    t1 = _dglie.load(os.path.join(FIXTURES, "t1.dgl"))
    check(t1.d_squared_zero(), "t1 is a DGL")
    check(t1.homology_dim(2) == 2, "t1 has two degree-2 classes")
    check(t1.homology_dim(4) == 0, "the bracket bounds in t1")
    check(t1.ell(2, ["a", "b"]) == "0", "ell_2(a, b) vanishes on t1")

    cp2 = _dglie.load(os.path.join(FIXTURES, "cp2.dgl"))
    check(cp2.homology_dim(4) == 1, "cp2 has one degree-4 class")
    check(cp2.ell(3, ["x", "x", "x"]) != "0", "the triple bracket is nonzero on cp2")

    t0 = _dglie.load(os.path.join(FIXTURES, "t0.dgl"))
    check(t0.whitehead_class([3, 4], ["a", "b"]) != "0",
          "the binary Whitehead element of a free pair is the bracket class")

    code, text, report = _dglie.run(["trees", "--leaves", "6"])
    check(code == 0, "trees subcommand succeeds")
    check(json.loads(report)["count"] == 6, "six classes with six leaves")

    code, _, report = _dglie.run(["check", os.path.join(FIXTURES, "example37.dgl")])
    check(code == 0, "example fixture checks out")
    data = json.loads(report)
    check(all(v["status"] == "pass" for v in data["verdicts"]), "all check verdicts pass")

    print("python smoke: ok")


if __name__ == "__main__":
    main()
