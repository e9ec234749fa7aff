"""The eleven acceptance criteria, one test each, each printing a PASS/FAIL line."""
import pytest

from wickgit import suites

RESULTS: list = []

CRITERIA = [
    (1, "walker table W1-W4 with closed column (No, Yes, No, Yes)", "walker-table"),
    (2, "su(2)+su(2) Einstein, Wick rotation to (4,2) with the same constant", "einstein"),
    (3, "G2 pair: |Ric| < 1e-6, signatures (0,7) and (4,3), span <= 14 at r = 2", "g2"),
    (4, "Maurer-Cartan relations to 1e-10 for SU(2) and SL(2,R) coframes", "maurer-cartan"),
    (5, "sl(2,R) orbit counts {2, 1}; 500 flow verdicts vs analytic oracle", "sl2-orbits"),
    (6, "Lorentz canonical forms, n = 3..6, 100 vectors each", "lorentz"),
    (7, "swapped blocks (1,2) in o(2,2): same compact orbit, distinct O(2)xO(2) orbit", "swapped-block"),
    (8, "standard triples n <= 6 commute, Cartan meets >= 1, direct sums exact", "triples"),
    (9, "Killing signatures (C(p,2)+C(q,2), pq) vs ad-trace oracle", "killing"),
    (10, "compact-orbit witnesses for 20 closed sl(2,R) orbits and so(2) seeds", "witness"),
    (11, "compatible Hermitian products, all standard triples, valence <= 2", "hermitian"),
]


@pytest.mark.parametrize("num,desc,suite", CRITERIA, ids=[f"criterion-{c[0]:02d}-{c[2]}" for c in CRITERIA])
def test_criterion(num, desc, suite):
    items = suites.run_suite(suite, seed=0)
    failed = [it for it in items if not it.passed]
    line = f"{'PASS' if not failed else 'FAIL'}  criterion {num:2d}  {desc}  ({len(items) - len(failed)}/{len(items)})"
    RESULTS.append(line)
    print(line)
    for it in failed:
        print(f"      {it.line()}  {it.detail}")
    assert not failed, [it.id for it in failed]
