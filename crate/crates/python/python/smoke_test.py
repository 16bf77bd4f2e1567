"""Smoke test for the affine_lab_py extension module."""

import json

import affine_lab_py as al


def main():
    name, order, table = al.group_info("S3")
    assert (name, order) == ("D3", 6)
    assert len(table) == 6 and sorted(table[0]) == list(range(6))

    group, sigma = al.family("sign-flip:6")
    assert al.verify_affine("C6", sigma) is None
    flags = al.classify_affine("C6", sigma)
    assert flags["affine"] and flags["groupal"]

    broken = [row[:] for row in sigma]
    broken[3] = [1, 3, 2, 0, 4, 5]
    failure = al.verify_affine("C6", broken)
    assert failure is not None and len(failure[1]) >= 2, failure

    add = al.semibrace_add("C6", sigma)
    assert add[0] == list(range(6))
    report = json.loads(al.solution_report("C6", sigma))
    assert report["ybe"] and report["left_nondegenerate"]

    assert len(al.enumerate("S3", "groupal")) == 5
    assert al.census_counts("C4", "all") == (6, 5)

    catalog = json.loads(al.catalog_report())
    assert catalog["pass"] and len(catalog["entries"]) == 10
    entry = json.loads(al.catalog_report("E5", 4))
    assert entry["pass"]

    for bad in (lambda: al.group_info("C0"), lambda: al.enumerate("C4", "nope")):
        try:
            bad()
        except ValueError:
            pass
        else:
            raise AssertionError("expected ValueError")

    print("smoke test ok:", al.__version__)


if __name__ == "__main__":
    main()
